#include "fcurp/road.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fcurp/errors.hpp"

namespace fcurp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra over the site segment graph. Deterministic: ties pop lowest id.
std::vector<double> sssp(const std::vector<std::vector<std::pair<int, double>>>& adj, int src,
                         std::vector<int>* pred = nullptr) {
  std::vector<double> dist(adj.size(), kInf);
  if (pred) pred->assign(adj.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        if (pred) (*pred)[v] = u;
        pq.emplace(nd, v);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<int> DiscretizedRoad::shortest_path(int from, int to) const {
  std::vector<int> pred;
  sssp(adj, from, &pred);
  std::vector<int> path;
  for (int v = to; v != -1; v = pred[v]) {
    path.push_back(v);
    if (v == from) break;
  }
  if (path.empty() || path.back() != from) return {};
  std::reverse(path.begin(), path.end());
  return path;
}

DiscretizedRoad discretize_road(const Instance& in) {
  DiscretizedRoad out;

  auto site_id = [&](const Point& p) {
    for (std::size_t i = 0; i < out.sites.size(); ++i)
      if (same_point(out.sites[i], p)) return static_cast<int>(i);
    out.sites.push_back(p);
    return static_cast<int>(out.sites.size() - 1);
  };

  // Emit sites at most delta apart along every segment, keeping all polyline
  // vertices; record the segment chains for the adjacency pass below.
  std::vector<std::vector<int>> chains;
  for (const auto& line : in.road.polylines) {
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const Point& a = line[i];
      const Point& b = line[i + 1];
      double len = euclid(a, b);
      int k = std::max(1, static_cast<int>(std::ceil(len / in.delta - 1e-12)));
      std::vector<int> chain;
      chain.push_back(site_id(a));
      for (int j = 1; j < k; ++j) {
        double t = static_cast<double>(j) / k;
        chain.push_back(site_id({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}));
      }
      chain.push_back(site_id(b));
      chains.push_back(std::move(chain));
    }
  }

  if (in.s0_hint) {
    int best = 0;
    double bd = kInf;
    for (std::size_t i = 0; i < out.sites.size(); ++i) {
      double d = euclid(out.sites[i], *in.s0_hint);
      if (d < bd - 1e-15) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    if (best != 0) {
      Point chosen = out.sites[best];
      out.sites.erase(out.sites.begin() + best);
      out.sites.insert(out.sites.begin(), chosen);
      for (auto& chain : chains)
        for (int& id : chain) id = (id == best) ? 0 : (id < best ? id + 1 : id);
    }
  }

  int n = static_cast<int>(out.sites.size());
  out.adj.assign(n, {});
  for (const auto& chain : chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      int u = chain[i], v = chain[i + 1];
      if (u == v) continue;
      double w = euclid(out.sites[u], out.sites[v]);
      out.adj[u].emplace_back(v, w);
      out.adj[v].emplace_back(u, w);
    }
  }

  out.r.assign(n, std::vector<double>(n, kInf));
  for (int s = 0; s < n; ++s) out.r[s] = sssp(out.adj, s);
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(out.r[s][j]))
        throw DisconnectedRoad("road network has more than one connected component");

  out.H.assign(n, {});
  out.N.assign(n, {});
  double half_u = in.U / 2;
  for (int s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < in.targets.size(); ++t)
      if (euclid(out.sites[s], in.targets[t]) <= half_u + kDistTol)
        out.H[s].push_back(static_cast<int>(t));
    for (int j = 0; j < n; ++j)
      if (j != s && out.r[s][j] <= in.R + kDistTol) out.N[s].push_back(j);
  }
  return out;
}

}  // namespace fcurp
