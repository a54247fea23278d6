#include "fcurp/cuts.hpp"

#include <algorithm>

namespace fcurp {
namespace {

void dfs(const std::vector<std::vector<int>>& graph, int vertex, std::vector<int>& dfs_numbers,
         std::vector<int>& dfs_minima, std::vector<int>& stack_indices, std::vector<int>& stack,
         int& current_dfs_number, std::vector<std::vector<int>>& sccs) {
  int vertex_dfs_number = current_dfs_number++;
  dfs_numbers[vertex] = dfs_minima[vertex] = vertex_dfs_number;
  stack_indices[vertex] = static_cast<int>(stack.size());
  stack.push_back(vertex);

  for (int succ : graph[vertex]) {
    int succ_dfs_number = dfs_numbers[succ];
    if (succ_dfs_number == -1) {
      dfs(graph, succ, dfs_numbers, dfs_minima, stack_indices, stack, current_dfs_number, sccs);
      dfs_minima[vertex] = std::min(dfs_minima[vertex], dfs_minima[succ]);
    } else if (succ_dfs_number < vertex_dfs_number && stack_indices[succ] != -1) {
      dfs_minima[vertex] = std::min(dfs_minima[vertex], succ_dfs_number);
    }
  }

  if (dfs_minima[vertex] == vertex_dfs_number) {
    int stack_index = stack_indices[vertex];
    std::vector<int> scc;
    for (std::size_t i = stack_index; i < stack.size(); ++i) {
      scc.push_back(stack[i]);
      stack_indices[stack[i]] = -1;
    }
    stack.erase(stack.begin() + stack_index, stack.end());
    sccs.push_back(std::move(scc));
  }
}

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& graph) {
  int node_count = static_cast<int>(graph.size());
  std::vector<int> dfs_numbers(node_count, -1);
  std::vector<int> dfs_minima(node_count, -1);
  std::vector<int> stack_indices(node_count, -1);
  std::vector<int> stack;
  stack.reserve(node_count);
  int current_dfs_number = 0;

  std::vector<std::vector<int>> sccs;
  for (int i = 0; i < node_count; ++i)
    if (dfs_numbers[i] == -1)
      dfs(graph, i, dfs_numbers, dfs_minima, stack_indices, stack, current_dfs_number, sccs);

  std::reverse(sccs.begin(), sccs.end());
  return sccs;
}

std::vector<SubtourCut> separate_subtours(const std::vector<double>& x_values,
                                          const RoutingGraph& g) {
  int n = g.n();
  std::vector<std::vector<int>> support(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && x_values[i * n + j] > 0.5) support[i].push_back(j);

  std::vector<SubtourCut> cuts;
  for (auto& comp : strongly_connected_components(support)) {
    if (comp.size() < 2) continue;
    bool has_s0 = false, has_target = false;
    for (int v : comp) {
      if (v == g.s0()) has_s0 = true;
      if (v < g.m) has_target = true;
    }
    if (has_s0 || !has_target) continue;
    std::sort(comp.begin(), comp.end());
    cuts.push_back(SubtourCut{std::move(comp)});
  }
  return cuts;
}

}  // namespace fcurp
