#ifndef CZLAB_MEASURE_HPP
#define CZLAB_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"

namespace czlab {

/// Finite weighted atom set in R^d with a resolution scale h.
///
/// Stands in for a Radon measure of degree n: statements about radii and
/// truncations are only meaningful at scales >= resolution().
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dim, double resolution) : dim_(dim), resolution_(resolution) {
    require(dim >= 1, "ambient dimension must be >= 1");
    require(resolution > 0.0 && std::isfinite(resolution), "resolution must be positive");
  }

  DiscreteMeasure(std::size_t dim, double resolution, std::vector<double> coords, std::vector<double> weights)
      : DiscreteMeasure(dim, resolution) {
    require(coords.size() == dim * weights.size(), "coordinate count does not match atom count");
    for (double w : weights) require(w > 0.0 && std::isfinite(w), "atom weights must be positive and finite");
    coords_ = std::move(coords);
    weights_ = std::move(weights);
  }

  void add_atom(PointView p, double w) {
    require(p.size() == dim_, "atom dimension mismatch");
    require(w > 0.0 && std::isfinite(w), "atom weights must be positive and finite");
    coords_.insert(coords_.end(), p.begin(), p.end());
    weights_.push_back(w);
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  double resolution() const { return resolution_; }

  PointView point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& coords() const { return coords_; }

  double total_mass() const {
    Accumulator<double> acc(size() > kCompensationThreshold);
    for (double w : weights_) acc.add(w);
    return acc.value();
  }

  /// Copy with every weight multiplied by `factor`.
  DiscreteMeasure scaled(double factor) const {
    require(factor > 0.0, "scale factor must be positive");
    auto w = weights_;
    for (auto& v : w) v *= factor;
    return DiscreteMeasure(dim_, resolution_, coords_, std::move(w));
  }

  /// Copy with every atom shifted by `offset`.
  DiscreteMeasure translated(PointView offset) const {
    require(offset.size() == dim_, "offset dimension mismatch");
    auto c = coords_;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t k = 0; k < dim_; ++k) c[i * dim_ + k] += offset[k];
    return DiscreteMeasure(dim_, resolution_, std::move(c), weights_);
  }

 private:
  std::size_t dim_;
  double resolution_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

/// Complex values indexed by the atoms of a DiscreteMeasure.
///
/// The owning measure is passed alongside at every call site; operations
/// check that the lengths agree.
struct Density {
  std::vector<Complex> values;

  Density() = default;
  explicit Density(std::vector<Complex> v) : values(std::move(v)) {}

  static Density constant(const DiscreteMeasure& mu, Complex c) { return Density(std::vector<Complex>(mu.size(), c)); }

  static Density from(const DiscreteMeasure& mu, const std::function<Complex(PointView)>& fn) {
    std::vector<Complex> v(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) v[i] = fn(mu.point(i));
    return Density(std::move(v));
  }

  std::size_t size() const { return values.size(); }
  const Complex& operator[](std::size_t i) const { return values[i]; }
  Complex& operator[](std::size_t i) { return values[i]; }
};

inline void check_density(const DiscreteMeasure& mu, const Density& f) {
  require(f.size() == mu.size(), "density length does not match atom count");
}

using RegionPredicate = std::function<bool(PointView)>;

// ---------------------------------------------------------------------------
// Mass queries

/// mu(B(x, r)) for the closed Euclidean ball.
inline double ball_mass(const DiscreteMeasure& mu, PointView x, double r) {
  Accumulator<double> acc(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (euclid(mu.point(i), x) <= r) acc.add(mu.weight(i));
  return acc.value();
}

/// mu(Q) for the closed cube.
inline double cube_mass(const DiscreteMeasure& mu, const Cube& q) {
  Accumulator<double> acc(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (q.contains(mu.point(i))) acc.add(mu.weight(i));
  return acc.value();
}

inline double region_mass(const DiscreteMeasure& mu, const RegionPredicate& in) {
  Accumulator<double> acc(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (in(mu.point(i))) acc.add(mu.weight(i));
  return acc.value();
}

namespace detail {

struct DistWeight {
  double dist;
  double weight;
};

/// (distance, weight) pairs from x to every atom, sorted by distance.
template <class Metric>
std::vector<DistWeight> sorted_distances(const DiscreteMeasure& mu, PointView x, Metric metric) {
  std::vector<DistWeight> out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out[i] = {metric(mu.point(i), x), mu.weight(i)};
  std::stable_sort(out.begin(), out.end(), [](const DistWeight& a, const DistWeight& b) { return a.dist < b.dist; });
  return out;
}

/// sup over r >= h of mass(B(x,r)) / r^n, from distances sorted ascending.
inline double radial_sup(const std::vector<DistWeight>& sorted, double n, double h) {
  double best = 0.0;
  double mass = 0.0;
  std::size_t i = 0;
  while (i < sorted.size() && sorted[i].dist <= h) mass += sorted[i++].weight;
  best = mass / std::pow(h, n);
  while (i < sorted.size()) {
    const double r = sorted[i].dist;
    while (i < sorted.size() && sorted[i].dist == r) mass += sorted[i++].weight;
    best = std::max(best, mass / std::pow(r, n));
  }
  return best;
}

}  // namespace detail

/// Least C0 with mu(B(x,r)) <= C0 r^n over atom centers x and radii r >= h.
///
/// For arbitrary centers the ratio is bounded by 2^n times this value.
inline double degree_constant(const DiscreteMeasure& mu, double n, double h) {
  require(n > 0.0 && n <= static_cast<double>(mu.dim()), "degree n must lie in (0, d]");
  require(h > 0.0, "scale h must be positive");
  double best = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto sorted = detail::sorted_distances(mu, mu.point(i), euclid);
    best = std::max(best, detail::radial_sup(sorted, n, h));
  }
  return best;
}

/// Weak L^s norm of f restricted to the closed cube Q.
///
/// The distribution function jumps only at attained values v, so the
/// supremum is the left limit max_v v * mu(|f| >= v)^(1/s).
inline double weak_norm(const DiscreteMeasure& mu, const Density& f, const Cube& q, double s) {
  check_density(mu, f);
  require(s > 0.0, "weak exponent s must be positive");
  std::vector<detail::DistWeight> vals;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (q.contains(mu.point(i))) vals.push_back({std::abs(f[i]), mu.weight(i)});
  std::stable_sort(vals.begin(), vals.end(), [](auto& a, auto& b) { return a.dist > b.dist; });
  double best = 0.0;
  double mass = 0.0;
  std::size_t i = 0;
  while (i < vals.size()) {
    const double v = vals[i].dist;
    while (i < vals.size() && vals[i].dist == v) mass += vals[i++].weight;
    if (v > 0.0) best = std::max(best, v * std::pow(mass, 1.0 / s));
  }
  return best;
}

inline Complex integrate(const DiscreteMeasure& mu, const Density& f, const RegionPredicate& in) {
  check_density(mu, f);
  Accumulator<Complex> acc(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (in(mu.point(i))) acc.add(f[i] * mu.weight(i));
  return acc.value();
}

inline Complex integrate(const DiscreteMeasure& mu, const Density& f, const Cube& q) {
  return integrate(mu, f, [&q](PointView y) { return q.contains(y); });
}

inline Complex integrate(const DiscreteMeasure& mu, const Density& f) {
  return integrate(mu, f, [](PointView) { return true; });
}

/// Atom indices of mu inside the region, in index order.
inline std::vector<std::size_t> indices_in(const DiscreteMeasure& mu, const RegionPredicate& in) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (in(mu.point(i))) idx.push_back(i);
  return idx;
}

inline DiscreteMeasure subset(const DiscreteMeasure& mu, const std::vector<std::size_t>& idx) {
  DiscreteMeasure out(mu.dim(), mu.resolution());
  for (auto i : idx) out.add_atom(mu.point(i), mu.weight(i));
  return out;
}

inline Density subset(const Density& f, const std::vector<std::size_t>& idx) {
  std::vector<Complex> v;
  v.reserve(idx.size());
  for (auto i : idx) v.push_back(f[i]);
  return Density(std::move(v));
}

/// mu restricted to the region; resolution preserved.
inline DiscreteMeasure restrict(const DiscreteMeasure& mu, const RegionPredicate& in) {
  return subset(mu, indices_in(mu, in));
}

inline DiscreteMeasure restrict(const DiscreteMeasure& mu, const Cube& q) {
  return restrict(mu, [&q](PointView y) { return q.contains(y); });
}

// ---------------------------------------------------------------------------
// Instance generators

struct UniformCubeSpec {
  std::size_t dim = 1;
  double side = 1.0;
  long atoms_per_axis = 16;
};

struct CornerCantorSpec {
  int level = 3;
};

struct SegmentSpec {
  std::size_t dim = 2;
  double length = 1.0;
  long atoms = 16;
};

struct AtomFileSpec {
  std::string path;
  /// Nonpositive means: use the least positive pairwise distance.
  double resolution = 0.0;
};

using MeasureSpec = std::variant<UniformCubeSpec, CornerCantorSpec, SegmentSpec, AtomFileSpec>;

/// Midpoint grid of m^d atoms in [0, side]^d with density one.
inline DiscreteMeasure uniform_cube(std::size_t d, double side, long m) {
  require(m > 0, "atoms per axis must be positive");
  require(side > 0.0, "side must be positive");
  const double h = side / static_cast<double>(m);
  const double w = std::pow(h, static_cast<double>(d));
  std::size_t count = 1;
  for (std::size_t k = 0; k < d; ++k) count *= static_cast<std::size_t>(m);
  std::vector<double> coords(count * d);
  std::vector<double> weights(count, w);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rem = i;
    for (std::size_t k = d; k-- > 0;) {
      const auto j = rem % static_cast<std::size_t>(m);
      rem /= static_cast<std::size_t>(m);
      coords[i * d + k] = (static_cast<double>(j) + 0.5) * h;
    }
  }
  return DiscreteMeasure(d, h, std::move(coords), std::move(weights));
}

/// Planar four-corner Cantor set at generation L: centers of the 4^L squares of side 4^-L.
inline DiscreteMeasure corner_cantor(int level) {
  require(level >= 0, "Cantor level must be nonnegative");
  std::vector<double> lo{0.0, 0.0};
  double side = 1.0;
  for (int l = 0; l < level; ++l) {
    std::vector<double> next;
    next.reserve(lo.size() * 4);
    const double sub = side / 4.0;
    for (std::size_t i = 0; i < lo.size(); i += 2) {
      for (int cy = 0; cy < 2; ++cy)
        for (int cx = 0; cx < 2; ++cx) {
          next.push_back(lo[i] + cx * (side - sub));
          next.push_back(lo[i + 1] + cy * (side - sub));
        }
    }
    lo = std::move(next);
    side = sub;
  }
  const std::size_t count = lo.size() / 2;
  for (auto& v : lo) v += 0.5 * side;
  return DiscreteMeasure(2, side, std::move(lo), std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

/// m atoms at the midpoints of [0, length] on the first axis of R^d.
inline DiscreteMeasure segment(std::size_t d, double length, long m) {
  require(m > 0, "segment atom count must be positive");
  require(length > 0.0, "segment length must be positive");
  const double h = length / static_cast<double>(m);
  std::vector<double> coords(static_cast<std::size_t>(m) * d, 0.0);
  for (long i = 0; i < m; ++i) coords[static_cast<std::size_t>(i) * d] = (static_cast<double>(i) + 0.5) * h;
  return DiscreteMeasure(d, h, std::move(coords), std::vector<double>(static_cast<std::size_t>(m), h));
}

/// CSV atoms: d coordinate columns then a weight column; '#' starts a comment.
inline DiscreteMeasure load_atom_file(const std::string& path, double resolution = 0.0) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open atom file: " + path);
  std::vector<double> coords, weights;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        require(cell.find_first_not_of(" \t\r", used) == std::string::npos, "trailing characters");
      } catch (const std::exception&) {
        throw Error(path + ":" + std::to_string(lineno) + ": malformed number '" + cell + "'");
      }
    }
    if (row.size() < 2) throw Error(path + ":" + std::to_string(lineno) + ": need coordinates and a weight");
    if (dim == 0) dim = row.size() - 1;
    if (row.size() != dim + 1) throw Error(path + ":" + std::to_string(lineno) + ": inconsistent column count");
    if (!(row.back() > 0.0)) throw Error(path + ":" + std::to_string(lineno) + ": weight must be positive");
    coords.insert(coords.end(), row.begin(), row.end() - 1);
    weights.push_back(row.back());
  }
  require(dim > 0, "atom file has no atoms: " + path);
  if (resolution <= 0.0) {
    double best = 0.0;
    const std::size_t n = weights.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dd = euclid({coords.data() + i * dim, dim}, {coords.data() + j * dim, dim});
        if (dd > 0.0 && (best == 0.0 || dd < best)) best = dd;
      }
    resolution = best > 0.0 ? best : 1.0;
  }
  return DiscreteMeasure(dim, resolution, std::move(coords), std::move(weights));
}

inline DiscreteMeasure generate_measure(const MeasureSpec& spec) {
  return std::visit(
      [](const auto& s) -> DiscreteMeasure {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, UniformCubeSpec>)
          return uniform_cube(s.dim, s.side, s.atoms_per_axis);
        else if constexpr (std::is_same_v<S, CornerCantorSpec>)
          return corner_cantor(s.level);
        else if constexpr (std::is_same_v<S, SegmentSpec>)
          return segment(s.dim, s.length, s.atoms);
        else
          return load_atom_file(s.path, s.resolution);
      },
      spec);
}

}  // namespace czlab

#endif  // CZLAB_MEASURE_HPP
