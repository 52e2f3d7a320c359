#ifndef CZLAB_ORACLE_HPP
#define CZLAB_ORACLE_HPP

// Brute-force counterparts of the exact sweeps. Every quantity is recomputed
// from scratch at each candidate parameter by a direct loop over the atoms;
// candidates are the critical values plus a dense grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/geometry.hpp"
#include "czlab/measure.hpp"
#include "czlab/operators.hpp"
#include "czlab/parallel.hpp"

namespace czlab::oracle {

/// `count` values log-spaced in [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out;
  if (!(hi > lo) || lo <= 0.0 || count < 2) return out;
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

template <class Metric>
std::vector<double> distances(const DiscreteMeasure& mu, PointView x, Metric metric) {
  std::vector<double> out;
  for (std::size_t i = 0; i < mu.size(); ++i) out.push_back(metric(x, mu.point(i)));
  return out;
}

/// sup over r >= h of mu(B(x,r)) / r^n.
inline double ball_ratio(const DiscreteMeasure& mu, PointView x, double n, double h, int dense = 256) {
  const auto dist = distances(mu, x, euclid);
  std::vector<double> radii{h};
  double far = h;
  for (double r : dist)
    if (r >= h) {
      radii.push_back(r);
      far = std::max(far, r);
    }
  for (double r : log_grid(h, 2.0 * far, dense)) radii.push_back(r);
  double best = 0.0;
  for (double r : radii) {
    double m = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (dist[i] <= r) m += mu.weight(i);
    best = std::max(best, m / std::pow(r, n));
  }
  return best;
}

inline double degree_constant(const DiscreteMeasure& mu, double n, double h, int dense = 64) {
  std::vector<double> per(mu.size());
  parallel_for(mu.size(), [&](std::size_t i) { per[i] = ball_ratio(mu, mu.point(i), n, h, dense); });
  return per.empty() ? 0.0 : *std::max_element(per.begin(), per.end());
}

inline double m_radial(const DiscreteMeasure& sigma, PointView x, double n, double h, int dense = 256) {
  return ball_ratio(sigma, x, n, h, dense);
}

/// sup over lambda > 0 of lambda mu(|f| > lambda)^(1/s) on the closed cube Q.
inline double weak_norm(const DiscreteMeasure& mu, const Density& f, const Cube& q, double s, int dense = 256) {
  std::vector<double> lambdas;
  double top = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double v = std::abs(f[i]);
    if (v > 0.0 && q.contains(mu.point(i))) {
      lambdas.push_back(v * (1.0 - 1e-13));
      top = std::max(top, v);
    }
  }
  for (double l : log_grid(top * 1e-6, top, dense)) lambdas.push_back(l);
  double best = 0.0;
  for (double l : lambdas) {
    double m = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (std::abs(f[i]) > l && q.contains(mu.point(i))) m += mu.weight(i);
    best = std::max(best, l * std::pow(m, 1.0 / s));
  }
  return best;
}

/// sup over eps > delta of |sum over |x-y| > eps of K(x,y) f(y) w(y)|.
inline double t_max(const DiscreteMeasure& mu, const KernelSpec& k, const Density& f, PointView x, double delta,
                    int dense = 256) {
  const auto dist = distances(mu, x, euclid);
  std::vector<double> eps{delta};
  double far = delta;
  for (double r : dist)
    if (r > delta) {
      eps.push_back(r);
      far = std::max(far, r);
    }
  for (double e : log_grid(delta * (1.0 + 1e-9), far, dense)) eps.push_back(e);
  double best = 0.0;
  for (double e : eps) {
    Complex s{};
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (dist[i] > e) s += k(x, mu.point(i)) * f[i] * mu.weight(i);
    best = std::max(best, std::abs(s));
  }
  return best;
}

template <class Metric>
double average_sup(const DiscreteMeasure& mu, const Density& f, PointView x, double p, Metric metric, int dense) {
  const auto dist = distances(mu, x, metric);
  std::vector<double> radii(dist.begin(), dist.end());
  const double far = radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
  for (double r : log_grid(far * 1e-6, far, dense)) radii.push_back(r);
  double best = 0.0;
  for (double r : radii) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (dist[i] <= r) {
        num += std::pow(std::abs(f[i]), p) * mu.weight(i);
        den += mu.weight(i);
      }
    if (den > 0.0) best = std::max(best, num / den);
  }
  return best;
}

inline double m_ball(const DiscreteMeasure& mu, const Density& f, PointView x, int dense = 256) {
  return average_sup(mu, f, x, 1.0, euclid, dense);
}

inline double m_cube_p(const DiscreteMeasure& mu, const Density& f, PointView x, double p, int dense = 256) {
  return std::pow(average_sup(mu, f, x, p, sup_dist, dense), 1.0 / p);
}

/// Largest mu({x in 5Q : dist(x, dQ) <= lambda l(Q)}) / (t lambda mu(5Q)) over a lambda sweep.
inline double small_boundary_ratio(const DiscreteMeasure& mu, const Cube& q, double t, int dense = 256) {
  const Cube q5 = q.scaled(5.0);
  double m5 = 0.0;
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!q5.contains(mu.point(i))) continue;
    m5 += mu.weight(i);
    lambdas.push_back(q.boundary_distance(mu.point(i)) / q.side);
  }
  if (m5 == 0.0) return 0.0;
  for (double l : log_grid(1e-6, 2.5, dense)) lambdas.push_back(l);
  double best = 0.0;
  for (double l : lambdas) {
    double m = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (q5.contains(mu.point(i)) && q.boundary_distance(mu.point(i)) / q.side <= l) m += mu.weight(i);
    if (m > 0.0) best = std::max(best, l > 0.0 ? m / (t * l * m5) : std::numeric_limits<double>::infinity());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Fast-vs-oracle suite

struct Comparison {
  std::string name;
  std::size_t instance = 0;
  double fast = 0.0;
  double oracle = 0.0;
  double rel_error = 0.0;
  bool pass = true;
};

inline double relative_error(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct Instance {
  DiscreteMeasure mu;
  Density f;
  KernelSpec kernel;
  double n = 1.0;
};

/// Seeded instance with at most `max_atoms` atoms: a random cloud, a grid, or a Cantor level.
inline Instance random_instance(std::uint64_t seed, std::size_t max_atoms) {
  Rng rng(seed);
  const std::size_t d = 1 + rng.below(2);
  const auto kind = rng.below(3);
  DiscreteMeasure mu(d, 1.0);
  if (kind == 0) {
    const std::size_t atoms = 20 + rng.below(max_atoms - 19);
    std::vector<double> coords, weights;
    for (std::size_t i = 0; i < atoms; ++i) {
      for (std::size_t j = 0; j < d; ++j) coords.push_back(rng.uniform());
      weights.push_back(rng.uniform(0.1, 1.0) / static_cast<double>(atoms));
    }
    double h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < atoms; ++i)
      for (std::size_t j = i + 1; j < atoms; ++j)
        h = std::min(h, euclid(PointView(&coords[i * d], d), PointView(&coords[j * d], d)));
    mu = DiscreteMeasure(d, h, std::move(coords), std::move(weights));
  } else if (kind == 1) {
    const long per_axis = d == 1 ? static_cast<long>(16 + rng.below(max_atoms - 15))
                                 : static_cast<long>(4 + rng.below(static_cast<std::uint64_t>(std::sqrt(max_atoms)) - 3));
    mu = uniform_cube(d, 1.0, per_axis);
  } else {
    mu = corner_cantor(1 + static_cast<int>(rng.below(4)));
  }
  std::vector<Complex> f(mu.size());
  for (auto& v : f) v = Complex(rng.uniform(-1.0, 1.0), mu.dim() == 2 ? rng.uniform(-1.0, 1.0) : 0.0);
  const double n = mu.dim() == 1 ? 1.0 : (rng.below(2) ? 1.0 : 2.0);
  KernelSpec k = mu.dim() == 1 ? kernels::hilbert() : kernels::cauchy();
  return {std::move(mu), Density(std::move(f)), std::move(k), n};
}

/// Runs every oracle against its fast counterpart on `count` seeded instances.
inline std::vector<Comparison> run_suite(std::uint64_t seed, std::size_t count, std::size_t max_atoms,
                                         std::size_t points_per_instance = 4, double tol = 1e-9) {
  std::vector<Comparison> out;
  Rng seeds(seed);
  for (std::size_t inst = 0; inst < count; ++inst) {
    const std::uint64_t s = seeds.next();
    const Instance in = random_instance(s, max_atoms);
    const auto& mu = in.mu;
    const double h = mu.resolution();
    Rng rng(s ^ 0x9e3779b97f4a7c15ULL);
    auto add = [&](const std::string& name, double fast, double slow) {
      const double e = relative_error(fast, slow);
      out.push_back({name, inst, fast, slow, e, e <= tol});
    };
    add("degree_constant", czlab::degree_constant(mu, in.n, h), oracle::degree_constant(mu, in.n, h));
    Cube q(Point(mu.dim(), 0.5), 1.0);
    const double s_exp = rng.uniform(0.5, 4.0);
    add("weak_norm", czlab::weak_norm(mu, in.f, q, s_exp), oracle::weak_norm(mu, in.f, q, s_exp));
    for (std::size_t j = 0; j < points_per_instance; ++j) {
      // Alternate between atoms and generic points.
      Point x(mu.dim());
      if (j % 2 == 0) {
        const auto a = mu.point(rng.below(mu.size()));
        x.assign(a.begin(), a.end());
      } else {
        for (auto& c : x) c = rng.uniform();
      }
      const double delta = h * (1.0 + 3.0 * rng.uniform());
      add("t_max", czlab::t_max(mu, in.kernel, in.f, x, delta), oracle::t_max(mu, in.kernel, in.f, x, delta));
      add("m_ball", czlab::m_ball(mu, in.f, x), oracle::m_ball(mu, in.f, x));
      const double p = rng.uniform(1.0, 3.0);
      add("m_cube_p", czlab::m_cube_p(mu, in.f, x, p), oracle::m_cube_p(mu, in.f, x, p));
      add("m_radial", czlab::m_radial(mu, x, in.n, h), oracle::m_radial(mu, x, in.n, h));
    }
  }
  return out;
}

}  // namespace czlab::oracle

#endif  // CZLAB_ORACLE_HPP
