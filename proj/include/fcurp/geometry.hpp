#pragma once

namespace fcurp {

// Distance comparisons against U, U/2 and R are inclusive with this slack.
inline constexpr double kDistTol = 1e-9;

struct Point {
  double x = 0;
  double y = 0;
};

double euclid(const Point& a, const Point& b);

bool same_point(const Point& a, const Point& b, double tol = kDistTol);

}  // namespace fcurp
