#include "fcurp/site_selection.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fcurp/errors.hpp"

namespace fcurp {

SiteSelection select_sites(const DiscretizedRoad& road, const std::vector<Point>& targets) {
  int p = static_cast<int>(road.sites.size());
  int m = static_cast<int>(targets.size());
  SiteSelection sel;
  sel.covered.assign(m, -1);

  std::vector<bool> coverable(m, false);
  for (int s = 0; s < p; ++s)
    for (int t : road.H[s]) coverable[t] = true;
  for (int t = 0; t < m; ++t)
    if (!coverable[t])
      throw UncoverableTarget(t, "target " + std::to_string(t) +
                                     " is farther than U/2 from every candidate site");

  std::vector<bool> in_s(p, false);
  std::vector<bool> is_covered(m, false);
  int uncovered = m;

  auto gain_of = [&](int s) {
    int g = 0;
    for (int t : road.H[s])
      if (!is_covered[t]) ++g;
    return g;
  };
  auto take = [&](int s) {
    sel.selected.push_back(s);
    in_s[s] = true;
    for (int t : road.H[s])
      if (!is_covered[t]) {
        is_covered[t] = true;
        sel.covered[t] = s;
        --uncovered;
      }
  };

  int s0 = 0;
  for (int s = 1; s < p; ++s)
    if (road.H[s].size() > road.H[s0].size()) s0 = s;
  take(s0);

  while (uncovered > 0) {
    std::vector<bool> in_frontier(p, false);
    for (int s : sel.selected)
      for (int j : road.N[s])
        if (!in_s[j]) in_frontier[j] = true;

    int best = -1, best_gain = 0;
    for (int s = 0; s < p; ++s) {
      if (!in_frontier[s]) continue;
      int g = gain_of(s);
      if (g > best_gain) {
        best_gain = g;
        best = s;
      }
    }
    if (best >= 0) {
      take(best);
      continue;
    }

    // All frontier gains are zero: bridge by fastest frontier growth.
    std::vector<bool> seen(p, false);  // S union N(S)
    for (int s = 0; s < p; ++s)
      if (in_s[s] || in_frontier[s]) seen[s] = true;
    int bridge = -1, best_growth = 0;
    for (int s = 0; s < p; ++s) {
      if (!in_frontier[s]) continue;
      int growth = 0;
      for (int j : road.N[s])
        if (!seen[j]) ++growth;
      if (growth > best_growth) {
        best_growth = growth;
        bridge = s;
      }
    }
    if (bridge < 0)
      throw FrontierExhausted("uncovered targets remain but the site frontier cannot grow");
    take(bridge);
  }
  return sel;
}

ValidationReport verify_selection(const DiscretizedRoad& road, const std::vector<Point>& targets,
                                  const SiteSelection& sel, double U, double R) {
  ValidationReport rep;
  auto flag = [&](const std::string& msg) { rep.violations.push_back(msg); };

  if (sel.selected.empty()) {
    flag("selection is empty");
    return rep;
  }
  std::set<int> uniq(sel.selected.begin(), sel.selected.end());
  if (uniq.size() != sel.selected.size()) flag("selection repeats a site");

  for (std::size_t t = 0; t < targets.size(); ++t) {
    bool ok = false;
    for (int s : sel.selected)
      if (euclid(road.sites[s], targets[t]) <= U / 2 + kDistTol) ok = true;
    if (!ok) flag("target " + std::to_string(t) + " not covered by any selected site");
  }

  // Connectedness under road-distance <= R edges, BFS from the first site.
  std::size_t k = sel.selected.size();
  std::vector<bool> reach(k, false);
  std::vector<std::size_t> stack = {0};
  reach[0] = true;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < k; ++j)
      if (!reach[j] && road.r[sel.selected[i]][sel.selected[j]] <= R + kDistTol) {
        reach[j] = true;
        stack.push_back(j);
      }
  }
  for (std::size_t j = 0; j < k; ++j)
    if (!reach[j]) flag("selected sites are not connected under road distance R");

  // Every element after the first must have been in N of the already-selected prefix.
  for (std::size_t i = 1; i < k; ++i) {
    bool in_prefix_n = false;
    for (std::size_t j = 0; j < i; ++j)
      if (sel.selected[i] != sel.selected[j] &&
          road.r[sel.selected[j]][sel.selected[i]] <= R + kDistTol)
        in_prefix_n = true;
    if (!in_prefix_n)
      flag("site " + std::to_string(sel.selected[i]) + " was not in the frontier when selected");
  }
  return rep;
}

}  // namespace fcurp
