#ifndef CZLAB_WHITNEY_HPP
#define CZLAB_WHITNEY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/geometry.hpp"
#include "czlab/measure.hpp"

namespace czlab {

// ---------------------------------------------------------------------------
// Open regions

struct OpenCubeRegion {
  Cube cube;
};

/// R^d minus a closed cube; side 0 removes a single point.
struct ComplementOfCubeRegion {
  Cube removed;
};

struct UnionOfOpenCubesRegion {
  std::vector<Cube> cubes;
};

/// Open set Omega != R^d, queried through point and closed-cube containment.
class Region {
 public:
  using Shape = std::variant<OpenCubeRegion, ComplementOfCubeRegion, UnionOfOpenCubesRegion>;

  Region(Shape s) : shape_(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  const Shape& shape() const { return shape_; }

  bool contains(PointView y) const {
    return std::visit(
        [&](const auto& s) -> bool {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, OpenCubeRegion>)
            return sup_dist(y, s.cube.center) < s.cube.half();
          else if constexpr (std::is_same_v<S, ComplementOfCubeRegion>)
            return sup_dist(y, s.removed.center) > s.removed.half();
          else
            return std::any_of(s.cubes.begin(), s.cubes.end(),
                               [&](const Cube& c) { return sup_dist(y, c.center) < c.half(); });
        },
        shape_);
  }

  /// Closed cube B is a subset of Omega.
  bool contains_closed_cube(const Cube& b) const {
    return std::visit(
        [&](const auto& s) -> bool {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, OpenCubeRegion>)
            return sup_dist(b.center, s.cube.center) + b.half() < s.cube.half();
          else if constexpr (std::is_same_v<S, ComplementOfCubeRegion>)
            return sup_dist(b.center, s.removed.center) > b.half() + s.removed.half();
          else
            return union_covers(s.cubes, b);
        },
        shape_);
  }

  std::string kind() const {
    switch (shape_.index()) {
      case 0: return "open-cube";
      case 1: return "complement-of-cube";
      default: return "union-of-open-cubes";
    }
  }

 private:
  // Coordinate compression: every breakpoint of every open cube inside B splits
  // each axis into points and open intervals; each product piece is either
  // inside an open cube or disjoint from it, so one representative decides it.
  static bool union_covers(const std::vector<Cube>& cubes, const Cube& b) {
    const std::size_t d = b.dim();
    std::vector<std::vector<double>> reps(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> cuts{b.lower(i), b.upper(i)};
      for (const auto& c : cubes)
        for (double v : {c.lower(i), c.upper(i)})
          if (v > b.lower(i) && v < b.upper(i)) cuts.push_back(v);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t k = 0; k < cuts.size(); ++k) {
        reps[i].push_back(cuts[k]);
        if (k + 1 < cuts.size()) reps[i].push_back(0.5 * (cuts[k] + cuts[k + 1]));
      }
    }
    std::vector<std::size_t> at(d, 0);
    Point p(d);
    while (true) {
      for (std::size_t i = 0; i < d; ++i) p[i] = reps[i][at[i]];
      const bool covered =
          std::any_of(cubes.begin(), cubes.end(), [&](const Cube& c) { return sup_dist(p, c.center) < c.half(); });
      if (!covered) return false;
      std::size_t i = 0;
      while (i < d && ++at[i] == reps[i].size()) at[i++] = 0;
      if (i == d) return true;
    }
  }

  Shape shape_;
};

// ---------------------------------------------------------------------------
// Whitney decomposition

/// A standard-lattice dyadic cube enters the family when 11Q is inside Omega
/// and the same fails for its parent.
inline constexpr double kWhitneyInterior = 11.0;
/// R in "RQ_i meets the complement of Omega".
inline constexpr double kWhitneyReach = 24.0;
/// Neighbouring Whitney cubes have side ratio at most 2^5.
inline constexpr int kWhitneySizeSpread = 5;

/// Overlap bound D0: how many cubes Q_j can have 10Q_j meeting a fixed 10Q_i.
///
/// Sides of such cubes lie within a factor 2^5 of l(Q_i); for side 2^m l(Q_i)
/// at most floor(10 * 2^-m) + 11 lattice positions fit along each axis.
inline long whitney_overlap_bound(std::size_t d) {
  long total = 0;
  for (int m = -kWhitneySizeSpread; m <= kWhitneySizeSpread; ++m) {
    const long per_axis = static_cast<long>(std::floor(10.0 * std::ldexp(1.0, -m))) + 11;
    long v = 1;
    for (std::size_t i = 0; i < d; ++i) v *= per_axis;
    total += v;
  }
  return total;
}

struct WhitneyResult {
  std::vector<Cube> cubes;
  std::vector<int> levels;            ///< side of cubes[i] is 2^levels[i]
  std::vector<Cube> selected;         ///< the enlarged small-boundary cubes
  std::vector<std::size_t> selected_from;  ///< index into `cubes` of each selected cube's Q_j
  double omega_mass = 0.0;
  double selected_mass = 0.0;
  long d0 = 0;
  double c1 = 0.0;
};

namespace detail {

inline Cube lattice_cube(PointView y, int k) {
  const double s = std::ldexp(1.0, k);
  Point lo(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) lo[i] = std::floor(y[i] / s) * s;
  return Cube::from_corner(lo, s);
}

inline std::vector<std::int64_t> lattice_index(PointView y, int k) {
  const double s = std::ldexp(1.0, k);
  std::vector<std::int64_t> idx(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) idx[i] = static_cast<std::int64_t>(std::floor(y[i] / s));
  return idx;
}

/// Level of the maximal lattice cube containing y with 11Q inside Omega.
inline int whitney_level(const Region& omega, PointView y, int start) {
  auto fits = [&](int k) { return omega.contains_closed_cube(lattice_cube(y, k).scaled(kWhitneyInterior)); };
  int k = start;
  if (fits(k)) {
    for (int guard = 0; fits(k + 1); ++k)
      if (++guard > 200) throw Error("whitney: region appears to be all of R^d");
    return k;
  }
  while (!fits(k)) {
    if (--k < -200) throw Error("whitney: atom too close to the complement of the region");
  }
  return k;
}

}  // namespace detail

/// Whitney cubes of Omega meeting the support of mu restricted to Omega, and
/// the disjoint doubling small-boundary subfamily capturing mu(Omega)/(8 D0).
inline WhitneyResult whitney(const Region& omega, const DiscreteMeasure& mu, long d0, double c1) {
  require(d0 >= 1, "D0 must be at least 1");
  require(c1 > 0.0, "C1 must be positive");
  WhitneyResult out;
  out.d0 = d0;
  out.c1 = c1;

  const auto inside = indices_in(mu, [&](PointView y) { return omega.contains(y); });
  if (inside.empty()) return out;

  double extent = mu.resolution();
  for (std::size_t k = 0; k < mu.dim(); ++k) {
    double lo = mu.point(inside.front())[k], hi = lo;
    for (auto i : inside) {
      lo = std::min(lo, mu.point(i)[k]);
      hi = std::max(hi, mu.point(i)[k]);
    }
    extent = std::max(extent, hi - lo);
  }
  const int start = static_cast<int>(std::ceil(std::log2(extent)));

  std::map<std::pair<int, std::vector<std::int64_t>>, std::vector<std::size_t>> found;
  for (auto i : inside) {
    const int k = detail::whitney_level(omega, mu.point(i), start);
    found[{-k, detail::lattice_index(mu.point(i), k)}].push_back(i);
  }

  std::vector<double> own_mass;  // half-open mass of each Whitney cube
  for (const auto& [key, atoms] : found) {
    const int k = -key.first;
    out.cubes.push_back(detail::lattice_cube(mu.point(atoms.front()), k));
    out.levels.push_back(k);
    double m = 0.0;
    for (auto i : atoms) m += mu.weight(i);
    own_mass.push_back(m);
  }
  for (auto i : inside) out.omega_mass += mu.weight(i);

  // I_db: (10, 2 D0)-doubling cubes.
  std::vector<std::size_t> db;
  for (std::size_t j = 0; j < out.cubes.size(); ++j)
    if (doubling_check(mu, out.cubes[j], 10.0, 2.0 * static_cast<double>(d0))) db.push_back(j);

  // I^1_db: greedy by decreasing mass until a quarter of mu(Omega) is captured.
  std::stable_sort(db.begin(), db.end(), [&](auto a, auto b) { return own_mass[a] > own_mass[b]; });
  std::vector<std::size_t> db1;
  double captured = 0.0;
  for (auto j : db) {
    if (captured >= 0.25 * out.omega_mass) break;
    db1.push_back(j);
    captured += own_mass[j];
  }

  // Covering with triple cubes: greedy Vitali on {2Q_j} by decreasing side.
  std::stable_sort(db1.begin(), db1.end(), [&](auto a, auto b) { return out.cubes[a].side > out.cubes[b].side; });
  std::vector<std::size_t> picked;
  for (auto j : db1) {
    const Cube twice = out.cubes[j].scaled(2.0);
    const bool clash = std::any_of(picked.begin(), picked.end(),
                                   [&](auto p) { return out.cubes[p].scaled(2.0).intersects(twice); });
    if (!clash) picked.push_back(j);
  }

  for (auto j : picked) {
    out.selected.push_back(small_boundary_select(mu, mu, out.cubes[j], c1));
    out.selected_from.push_back(j);
    out.selected_mass += cube_mass(mu, out.selected.back());
  }
  return out;
}

/// Checks every structural property of a Whitney result by brute force.
struct WhitneyAudit {
  bool interior = true;         ///< 10Q_i inside Omega
  bool reach = true;            ///< R Q_i meets the complement
  long max_neighbours = 0;      ///< max #j with 10Q_i meeting 10Q_j
  double max_side_ratio = 1.0;  ///< side ratio among such neighbours
  long max_atom_overlap = 0;    ///< max number of 10Q_i containing one atom
  bool disjoint_interiors = true;
  bool atoms_covered = true;     ///< each atom of mu in Omega lies in exactly one cube
  bool selected_nested = true;   ///< Q_j subset Q~_j subset 1.1 Q_j
  bool selected_doubling = true; ///< (9, 2 D0)-doubling
  bool selected_small_boundary = true;  ///< C1-small boundary
  bool selected_disjoint = true;
  double mass_fraction = 1.0;    ///< mu(union selected) / mu(Omega)
  bool mass_ok = true;

  bool ok(long d0) const {
    return interior && reach && max_neighbours <= d0 && max_atom_overlap <= d0 && disjoint_interiors &&
           atoms_covered && selected_nested && selected_doubling && selected_small_boundary && selected_disjoint &&
           mass_ok;
  }
};

inline WhitneyAudit whitney_audit(const Region& omega, const DiscreteMeasure& mu, const WhitneyResult& w) {
  WhitneyAudit a;
  const auto& cs = w.cubes;
  for (const auto& q : cs) {
    a.interior = a.interior && omega.contains_closed_cube(q.scaled(10.0));
    a.reach = a.reach && !omega.contains_closed_cube(q.scaled(kWhitneyReach));
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    long count = 0;
    const Cube ti = cs[i].scaled(10.0);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (!ti.intersects(cs[j].scaled(10.0))) continue;
      ++count;
      a.max_side_ratio = std::max(a.max_side_ratio, cs[j].side / cs[i].side);
      if (j <= i) continue;
      bool separated = false;
      for (std::size_t k = 0; k < cs[i].dim(); ++k)
        separated = separated || cs[i].upper(k) <= cs[j].lower(k) || cs[j].upper(k) <= cs[i].lower(k);
      a.disjoint_interiors = a.disjoint_interiors && separated;
    }
    a.max_neighbours = std::max(a.max_neighbours, count);
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!omega.contains(mu.point(i))) continue;
    long owners = 0, overlap = 0;
    for (const auto& q : cs) {
      owners += q.contains_half_open(mu.point(i)) ? 1 : 0;
      overlap += q.scaled(10.0).contains(mu.point(i)) ? 1 : 0;
    }
    a.atoms_covered = a.atoms_covered && owners == 1;
    a.max_atom_overlap = std::max(a.max_atom_overlap, overlap);
  }
  const double b = 2.0 * static_cast<double>(w.d0);
  double mass = 0.0;
  for (std::size_t s = 0; s < w.selected.size(); ++s) {
    const Cube& qt = w.selected[s];
    const Cube& q = cs[w.selected_from[s]];
    a.selected_nested = a.selected_nested && qt.contains_cube(q) && q.scaled(1.1 * (1.0 + 1e-12)).contains_cube(qt);
    a.selected_doubling = a.selected_doubling && doubling_check(mu, qt, 9.0, b);
    a.selected_small_boundary = a.selected_small_boundary && small_boundary_check(mu, qt, w.c1).pass;
    for (std::size_t r = s + 1; r < w.selected.size(); ++r)
      a.selected_disjoint = a.selected_disjoint && !qt.intersects(w.selected[r]);
    mass += cube_mass(mu, qt);
  }
  a.mass_fraction = w.omega_mass > 0.0 ? mass / w.omega_mass : 1.0;
  a.mass_ok = w.omega_mass == 0.0 || mass >= w.omega_mass / (8.0 * static_cast<double>(w.d0));
  return a;
}

}  // namespace czlab

#endif  // CZLAB_WHITNEY_HPP
