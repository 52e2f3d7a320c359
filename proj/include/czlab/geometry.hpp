#ifndef CZLAB_GEOMETRY_HPP
#define CZLAB_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/measure.hpp"

namespace czlab {

// ---------------------------------------------------------------------------
// Dyadic grids

/// Local dyadic grid generated by a half-open root cube.
///
/// D_k(root) consists of the 2^{dk} half-open cubes of side 2^-k l(root).
struct DyadicGrid {
  Cube root;
  int max_depth = 0;

  double side_at(int k) const { return std::ldexp(root.side, -k); }

  /// Multi-index of the depth-k cell containing y (y must lie in the half-open root).
  std::vector<std::int64_t> index_of(PointView y, int k) const {
    std::vector<std::int64_t> idx(root.dim());
    const double s = side_at(k);
    const std::int64_t top = std::int64_t{1} << k;
    for (std::size_t i = 0; i < root.dim(); ++i) {
      auto j = static_cast<std::int64_t>(std::floor((y[i] - root.lower(i)) / s));
      idx[i] = std::clamp<std::int64_t>(j, 0, top - 1);
    }
    return idx;
  }

  Cube cell(int k, const std::vector<std::int64_t>& idx) const {
    const double s = side_at(k);
    Point lo(root.dim());
    for (std::size_t i = 0; i < root.dim(); ++i) lo[i] = root.lower(i) + static_cast<double>(idx[i]) * s;
    return Cube::from_corner(lo, s);
  }

  /// Depth of a cube of this grid, or -1 if its side is not a dyadic fraction of the root.
  int depth_of(const Cube& r) const {
    const double ratio = root.side / r.side;
    const int k = static_cast<int>(std::lround(std::log2(ratio)));
    if (k < 0 || std::abs(std::ldexp(r.side, k) - root.side) > 1e-12 * root.side) return -1;
    return k;
  }
};

/// The 2^{dk} depth-k descendants of R in lexicographic center order.
inline std::vector<Cube> children(const DyadicGrid& grid, const Cube& r, int k) {
  require(k >= 0, "child depth must be nonnegative");
  const int base = grid.depth_of(r);
  require(base >= 0, "cube does not belong to the grid");
  require(base + k <= grid.max_depth, "requested depth exceeds grid max_depth");
  const std::size_t d = r.dim();
  const std::int64_t per_axis = std::int64_t{1} << k;
  const double s = std::ldexp(r.side, -k);
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= static_cast<std::size_t>(per_axis);
  std::vector<Cube> out;
  out.reserve(count);
  std::vector<std::int64_t> idx(d, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rem = c;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(per_axis));
      rem /= static_cast<std::size_t>(per_axis);
    }
    Point lo(d);
    for (std::size_t i = 0; i < d; ++i) lo[i] = r.lower(i) + static_cast<double>(idx[i]) * s;
    out.push_back(Cube::from_corner(lo, s));
  }
  return out;
}

/// The integer N with 2^{N-3} <= side < 2^{N-2}.
inline int grid_exponent(double side) {
  require(side > 0.0 && std::isfinite(side), "cube side must be positive");
  int e = 0;
  std::frexp(side, &e);  // side = m 2^e, m in [0.5, 1)
  return e + 2;
}

/// Whether w lies in Omega_N = [-2^{N-1}, 2^{N-1})^d.
inline bool in_shift_domain(PointView w, int n_exp) {
  const double lim = std::ldexp(1.0, n_exp - 1);
  return std::all_of(w.begin(), w.end(), [lim](double v) { return v >= -lim && v < lim; });
}

/// Random dyadic grid D(w) for the cube Q.
///
/// The shift w is taken relative to the center of Q, so the root is
/// Q*(w) = c_Q + w + [-2^N, 2^N)^d with side 2^{N+1}.
inline DyadicGrid random_grid(const Cube& q, PointView w, int max_depth) {
  require(w.size() == q.dim(), "shift dimension mismatch");
  const int n_exp = grid_exponent(q.side);
  require(in_shift_domain(w, n_exp), "grid shift w lies outside Omega_N");
  require(max_depth >= 0 && max_depth < 60, "grid depth out of range");
  Point c(q.center);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += w[i];
  return DyadicGrid{Cube(std::move(c), std::ldexp(1.0, n_exp + 1)), max_depth};
}

/// Depth at which grid cells of a root with side `root_side` first drop to <= h.
inline int resolving_depth(double root_side, double h) {
  int k = 0;
  while (std::ldexp(root_side, -k) > h && k < 59) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// Doubling cubes and balls

/// mu(aQ) <= b mu(Q).
inline bool doubling_check(const DiscreteMeasure& mu, const Cube& q, double a, double b) {
  require(a > 1.0, "doubling dilation a must exceed 1");
  require(b > 0.0, "doubling constant b must be positive");
  return cube_mass(mu, q.scaled(a)) <= b * cube_mass(mu, q);
}

struct DoublingCube {
  Cube cube;
  int k = 0;  ///< side = c a^k
};

/// Smallest (a,b)-doubling cube centered at x in the family l = c a^k, k = 0, 1, ...
inline DoublingCube doubling_search(const DiscreteMeasure& mu, PointView x, double a, double b, double c) {
  require(a > 1.0, "doubling dilation a must exceed 1");
  require(b >= 1.0, "doubling constant b must be at least 1");
  require(c > 0.0, "starting side c must be positive");
  Point center(x.begin(), x.end());
  double side = c;
  for (int k = 0; k < 4096; ++k, side *= a) {
    Cube q(center, side);
    if (doubling_check(mu, q, a, b)) return {q, k};
  }
  throw NotFound("doubling_search did not terminate");
}

struct DoublingBall {
  double radius = 0.0;
  int m = 0;  ///< radius = 2^m eps0
};

/// Smallest eps = 2^m eps0 with mu(B(x, 5 Cd eps)) <= b mu(B(x, eps)).
inline DoublingBall doubling_ball_radius(const DiscreteMeasure& mu, PointView x, double eps0, double cd, double b) {
  require(eps0 > 0.0, "eps0 must be positive");
  require(cd >= 1.0, "Cd must be at least 1");
  require(b >= 1.0, "doubling constant b must be at least 1");
  double eps = eps0;
  for (int m = 0; m < 4096; ++m, eps *= 2.0) {
    if (ball_mass(mu, x, 5.0 * cd * eps) <= b * ball_mass(mu, x, eps)) return {eps, m};
  }
  throw NotFound("doubling_ball_radius did not terminate");
}

// ---------------------------------------------------------------------------
// Small boundaries

struct SmallBoundary {
  bool pass = true;
  double worst_lambda = 0.0;  ///< lambda maximizing shell mass / (t lambda mu(5Q))
  double worst_ratio = 0.0;   ///< that maximal ratio; pass iff <= 1
};

namespace detail {

/// Small-boundary test from precomputed sup-norm distances to the center.
inline SmallBoundary small_boundary_from(const std::vector<DistWeight>& center_dist, double side, double t) {
  const double half = 0.5 * side;
  std::vector<DistWeight> shell;
  double mass5 = 0.0;
  for (const auto& a : center_dist) {
    if (a.dist <= 2.5 * side) {
      shell.push_back({std::abs(a.dist - half) / side, a.weight});
      mass5 += a.weight;
    }
  }
  SmallBoundary out;
  if (mass5 == 0.0) return out;
  std::stable_sort(shell.begin(), shell.end(), [](auto& x, auto& y) { return x.dist < y.dist; });
  double cum = 0.0;
  std::size_t i = 0;
  while (i < shell.size()) {
    const double lam = shell[i].dist;
    while (i < shell.size() && shell[i].dist == lam) cum += shell[i++].weight;
    const double ratio = lam > 0.0 ? cum / (t * lam * mass5) : std::numeric_limits<double>::infinity();
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_lambda = lam;
    }
  }
  out.pass = out.worst_ratio <= 1.0 + 1e-12;
  return out;
}

inline std::vector<DistWeight> center_distances(const DiscreteMeasure& mu, PointView c, double reach) {
  std::vector<DistWeight> out;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double r = sup_dist(mu.point(i), c);
    if (r <= reach) out.push_back({r, mu.weight(i)});
  }
  return out;
}

}  // namespace detail

/// mu({x in 5Q : dist(x, dQ) <= lambda l(Q)}) <= t lambda mu(5Q) for all lambda > 0.
///
/// The left side is a step function jumping at lambda_j = dist(atom_j, dQ)/l(Q),
/// so it suffices to test those values.
inline SmallBoundary small_boundary_check(const DiscreteMeasure& mu, const Cube& q, double t) {
  require(t > 0.0, "small-boundary constant t must be positive");
  require(q.side > 0.0, "cube side must be positive");
  return detail::small_boundary_from(detail::center_distances(mu, q.center, 2.5 * q.side), q.side, t);
}

/// Number of equally spaced sides scanned in [l(Q), 1.1 l(Q)].
inline constexpr int kSmallBoundaryCandidates = 4096;

/// Concentric Q' with Q subset Q' subset 1.1Q and t-small boundary for both measures.
///
/// Scans equally spaced sides plus sides just off every atom-boundary
/// coincidence, in increasing order, and returns the first that passes.
inline Cube small_boundary_select(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, const Cube& q, double t) {
  require(t > 0.0, "small-boundary constant t must be positive");
  require(q.side > 0.0, "cube side must be positive");
  const double lo = q.side;
  const double hi = 1.1 * q.side;
  const double reach = 2.5 * hi;
  const auto d1 = detail::center_distances(mu1, q.center, reach);
  const auto d2 = detail::center_distances(mu2, q.center, reach);

  std::vector<double> sides;
  sides.reserve(kSmallBoundaryCandidates + 2 * (d1.size() + d2.size()));
  for (int i = 0; i < kSmallBoundaryCandidates; ++i)
    sides.push_back(lo + (hi - lo) * static_cast<double>(i) / (kSmallBoundaryCandidates - 1));
  const double jitter = 1e-12 * q.side;
  for (const auto* ds : {&d1, &d2})
    for (const auto& a : *ds) {
      const double s = 2.0 * a.dist;
      if (s < lo || s > hi) continue;
      if (s - jitter >= lo) sides.push_back(s - jitter);
      if (s + jitter <= hi) sides.push_back(s + jitter);
    }
  std::sort(sides.begin(), sides.end());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());

  for (double s : sides) {
    if (detail::small_boundary_from(d1, s, t).pass && detail::small_boundary_from(d2, s, t).pass)
      return Cube(q.center, s);
  }
  throw NotFound("no t-small-boundary cube between Q and 1.1Q; increase t or refine the measure");
}

}  // namespace czlab

#endif  // CZLAB_GEOMETRY_HPP
