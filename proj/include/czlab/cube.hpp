#ifndef CZLAB_CUBE_HPP
#define CZLAB_CUBE_HPP

#include <cmath>

#include "czlab/core.hpp"

namespace czlab {

/// Axis-aligned cube given by its center and side length l(Q).
///
/// Membership through `contains` is closed. Dyadic grid cells use
/// `contains_half_open`, which tiles space without double counting.
struct Cube {
  Point center;
  double side = 1.0;

  Cube() = default;
  Cube(Point c, double s) : center(std::move(c)), side(s) {
    require(side >= 0.0 && std::isfinite(side), "cube side must be finite and nonnegative");
  }

  /// Cube with lower corner `lo` and side `s`.
  static Cube from_corner(PointView lo, double s) {
    Point c(lo.begin(), lo.end());
    for (auto& v : c) v += 0.5 * s;
    return Cube(std::move(c), s);
  }

  std::size_t dim() const { return center.size(); }
  double half() const { return 0.5 * side; }
  double lower(std::size_t i) const { return center[i] - half(); }
  double upper(std::size_t i) const { return center[i] + half(); }

  /// The concentric cube aQ.
  Cube scaled(double a) const { return Cube(center, a * side); }

  bool contains(PointView y) const { return sup_dist(y, center) <= half(); }

  bool contains_half_open(PointView y) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (y[i] < lower(i) || y[i] >= upper(i)) return false;
    }
    return true;
  }

  /// Unsigned sup-norm distance from y to the boundary of the cube.
  double boundary_distance(PointView y) const { return std::abs(sup_dist(y, center) - half()); }

  /// Closed cubes share at least one point.
  bool intersects(const Cube& o) const { return sup_dist(center, o.center) <= half() + o.half(); }

  bool contains_cube(const Cube& o) const { return sup_dist(center, o.center) + o.half() <= half(); }
};

}  // namespace czlab

#endif  // CZLAB_CUBE_HPP
