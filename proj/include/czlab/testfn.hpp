#ifndef CZLAB_TESTFN_HPP
#define CZLAB_TESTFN_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/measure.hpp"

namespace czlab {

/// L^p(mu)-admissible test function candidate on the cube Q with constant B1.
struct TestFunction {
  Density values;
  Cube q;
  double p = 2.0;
  double b1 = 1.0;
};

struct Admissibility {
  bool supported = true;   ///< (1) vanishes outside Q
  bool mean_ok = true;     ///< (2) integral over Q equals mu(Q)
  bool norm_ok = true;     ///< (3) integral of |b|^p over Q at most B1 mu(Q)
  double mass = 0.0;       ///< mu(Q)
  Complex mean{};          ///< integral of b over Q
  double p_norm = 0.0;     ///< integral of |b|^p over Q
  double outside = 0.0;    ///< integral of |b| outside Q

  bool ok() const { return supported && mean_ok && norm_ok; }
};

inline constexpr double kMeanTolerance = 1e-9;

inline Admissibility admissible_check(const TestFunction& b, const DiscreteMeasure& mu) {
  check_density(mu, b.values);
  Admissibility a;
  Accumulator<Complex> mean(mu.size() > kCompensationThreshold);
  Accumulator<double> mass(mu.size() > kCompensationThreshold), pn(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double w = mu.weight(i);
    if (b.q.contains(mu.point(i))) {
      mass.add(w);
      mean.add(b.values[i] * w);
      pn.add(std::pow(std::abs(b.values[i]), b.p) * w);
    } else {
      a.outside += std::abs(b.values[i]) * w;
    }
  }
  a.mass = mass.value();
  a.mean = mean.value();
  a.p_norm = pn.value();
  a.supported = a.outside == 0.0;
  a.mean_ok = std::abs(a.mean - Complex(a.mass)) <= kMeanTolerance * a.mass;
  a.norm_ok = a.p_norm <= b.b1 * a.mass * (1.0 + 1e-12);
  return a;
}

struct IndicatorFamily {};

/// b = 1 + eps g with g seeded, bounded and mean zero on Q.
struct PerturbedFamily {
  double p = 2.0;
  double b1 = 4.0;
  std::uint64_t seed = 0;
};

/// Mean-zero profile concentrating mass near the boundary of Q.
struct AdversarialBoundaryFamily {
  double p = 2.0;
  double b1 = 8.0;
  std::uint64_t seed = 0;
};

using TestFamily = std::variant<IndicatorFamily, PerturbedFamily, AdversarialBoundaryFamily>;

namespace detail {

inline double p_integral(const std::vector<double>& g, const std::vector<double>& w, double eps, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += std::pow(std::abs(1.0 + eps * g[i]), p) * w[i];
  return s;
}

/// b = 1 + eps g on the atoms of Q with the integral of |b|^p hitting `target` mu(Q), then renormalized to mean mu(Q).
inline TestFunction perturb(const DiscreteMeasure& mu, const Cube& q, std::vector<double> g, double p, double b1) {
  require(p >= 1.0, "test function exponent must be >= 1");
  require(b1 >= 1.0, "B1 must be at least 1 (Jensen)");
  const auto idx = indices_in(mu, [&q](PointView y) { return q.contains(y); });
  std::vector<double> w;
  double mass = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    w.push_back(mu.weight(idx[k]));
    mass += w.back();
    mean += g[k] * w.back();
  }
  mean /= mass;
  double gmax = 0.0;
  for (auto& v : g) {
    v -= mean;
    gmax = std::max(gmax, std::abs(v));
  }

  const double target = mass * (1.0 + 0.9 * (b1 - 1.0));
  double eps = 0.0;
  if (gmax > 0.0 && b1 > 1.0) {
    double hi = 1.0 / gmax;
    while (p_integral(g, w, hi, p) < target && hi < 1e12) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (p_integral(g, w, mid, p) <= target ? lo : hi) = mid;
    }
    eps = lo;
  }

  std::vector<Complex> values(mu.size(), Complex(0.0));
  for (int attempt = 0; attempt < 64; ++attempt, eps *= 0.5) {
    double integral = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) integral += (1.0 + eps * g[k]) * w[k];
    const double scale = mass / integral;
    for (std::size_t k = 0; k < idx.size(); ++k) values[idx[k]] = Complex((1.0 + eps * g[k]) * scale);
    TestFunction tf{Density(values), q, p, b1};
    if (admissible_check(tf, mu).ok()) return tf;
  }
  throw Error("could not build an admissible perturbed test function");
}

}  // namespace detail

/// Test function of the requested family on Q.
inline TestFunction make_test(const Cube& q, const DiscreteMeasure& mu, const TestFamily& family) {
  require(cube_mass(mu, q) > 0.0, "make_test needs mu(Q) > 0");
  const auto idx = indices_in(mu, [&q](PointView y) { return q.contains(y); });
  if (std::holds_alternative<IndicatorFamily>(family)) {
    std::vector<Complex> v(mu.size(), Complex(0.0));
    for (auto i : idx) v[i] = 1.0;
    return {Density(std::move(v)), q, 2.0, 1.0};
  }
  if (const auto* pf = std::get_if<PerturbedFamily>(&family)) {
    Rng rng(pf->seed);
    std::vector<double> g(idx.size());
    for (auto& v : g) v = rng.uniform(-1.0, 1.0);
    return detail::perturb(mu, q, std::move(g), pf->p, pf->b1);
  }
  const auto& af = std::get<AdversarialBoundaryFamily>(family);
  Rng rng(af.seed);
  std::vector<double> g(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double lam = q.boundary_distance(mu.point(idx[k])) / q.side;
    g[k] = std::exp(-lam / 0.05) * (1.0 + 0.1 * rng.uniform());
  }
  return detail::perturb(mu, q, std::move(g), af.p, af.b1);
}

/// Indicator 1_Q declared with exponent p and constant B1.
inline TestFunction indicator(const Cube& q, const DiscreteMeasure& mu, double p = 2.0, double b1 = 1.0) {
  auto t = make_test(q, mu, IndicatorFamily{});
  t.p = p;
  t.b1 = b1;
  return t;
}

/// b = |b| bhat with sigma = |b| dmu.
struct Polar {
  DiscreteMeasure sigma;
  Density bhat;                     ///< on the atoms of mu; 1 where b vanishes
  Density sigma_phase;              ///< bhat on the atoms of sigma
  std::vector<std::size_t> source;  ///< sigma atom -> mu atom
};

inline Polar polar(const Density& b, const DiscreteMeasure& mu) {
  check_density(mu, b);
  Polar out{DiscreteMeasure(mu.dim(), mu.resolution()), Density::constant(mu, 1.0), Density(), {}};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double a = std::abs(b[i]);
    if (a == 0.0) continue;
    out.bhat[i] = b[i] / a;
    out.sigma.add_atom(mu.point(i), mu.weight(i) * a);
    out.sigma_phase.values.push_back(out.bhat[i]);
    out.source.push_back(i);
  }
  return out;
}

inline Polar polar(const TestFunction& b, const DiscreteMeasure& mu) { return polar(b.values, mu); }

}  // namespace czlab

#endif  // CZLAB_TESTFN_HPP
