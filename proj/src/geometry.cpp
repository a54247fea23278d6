#include "fcurp/geometry.hpp"

#include <cmath>

namespace fcurp {

double euclid(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool same_point(const Point& a, const Point& b, double tol) {
  return euclid(a, b) <= tol;
}

}  // namespace fcurp
