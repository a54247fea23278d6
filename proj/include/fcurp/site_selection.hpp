#pragma once

#include <vector>

#include "fcurp/road.hpp"

namespace fcurp {

struct SiteSelection {
  // Candidate site ids in selection order; selected[0] is the mission start s0.
  std::vector<int> selected;
  // covered[t] = site id that first covered target t (bookkeeping only).
  std::vector<int> covered;
};

// Greedy stage one: first site maximizes |H(s)|, then sites from the frontier
// N(S)\S maximizing fresh coverage; zero-gain steps bridge toward uncovered
// targets by maximizing frontier growth. Ties break to the lowest site id.
// Throws UncoverableTarget / FrontierExhausted on infeasible inputs.
SiteSelection select_sites(const DiscretizedRoad& road, const std::vector<Point>& targets);

// Post-hoc check from raw coordinates and the road metric, independent of the
// greedy's bookkeeping: coverage, connectedness, and frontier membership.
ValidationReport verify_selection(const DiscretizedRoad& road, const std::vector<Point>& targets,
                                  const SiteSelection& sel, double U, double R);

}  // namespace fcurp
