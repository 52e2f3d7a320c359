#ifndef CZLAB_OPERATORS_HPP
#define CZLAB_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/measure.hpp"

namespace czlab {

/// n-dimensional Calderon-Zygmund kernel with its declared constants.
struct KernelSpec {
  std::string name;
  std::size_t dim = 0;  ///< required ambient dimension, 0 if any
  double n = 1.0;       ///< kernel dimension
  double alpha = 1.0;   ///< Holder exponent
  double C = 1.0;       ///< kernel constant
  bool antisymmetric = true;
  std::function<Complex(PointView, PointView)> eval;

  Complex operator()(PointView x, PointView y) const { return eval(x, y); }
};

namespace kernels {

/// 1/(x - y) on the line.
inline KernelSpec hilbert() {
  return {"hilbert", 1, 1.0, 1.0, 2.0, true, [](PointView x, PointView y) { return Complex(1.0 / (x[0] - y[0])); }};
}

namespace detail {
inline Complex cauchy(PointView x, PointView y) { return 1.0 / Complex(x[0] - y[0], x[1] - y[1]); }
}  // namespace detail

/// 1/(z - w) on the plane.
inline KernelSpec cauchy() { return {"cauchy", 2, 1.0, 1.0, 2.0, true, detail::cauchy}; }

inline KernelSpec cauchy_re() {
  return {"cauchy-re", 2, 1.0, 1.0, 2.0, true, [](PointView x, PointView y) { return Complex(detail::cauchy(x, y).real()); }};
}

inline KernelSpec cauchy_im() {
  return {"cauchy-im", 2, 1.0, 1.0, 2.0, true, [](PointView x, PointView y) { return Complex(detail::cauchy(x, y).imag()); }};
}

/// Power-law family (x_j - y_j) / |x - y|^{beta + 1} with user-declared constants.
inline KernelSpec power_law(std::size_t j, double beta, double n, double alpha, double c, std::size_t dim = 0) {
  require(beta > 0.0, "power-law exponent must be positive");
  return {"power-law", dim, n, alpha, c, true, [j, beta](PointView x, PointView y) {
            const double r = euclid(x, y);
            return Complex((x[j] - y[j]) / std::pow(r, beta + 1.0));
          }};
}

/// Component j of (x - y)/|x - y|^{n+1}. Declared C = (n+2) 2^{n+1} covers the smoothness bound.
inline KernelSpec riesz(std::size_t j, double n, std::size_t dim) {
  require(j < dim, "Riesz component out of range");
  auto k = power_law(j, n, n, 1.0, (n + 2.0) * std::pow(2.0, n + 1.0), dim);
  k.name = "riesz-" + std::to_string(j);
  return k;
}

/// Symmetric 1/|x - y|; diagnostic only, not a CZ kernel of interest.
inline KernelSpec symmetric_diagnostic() {
  return {"symmetric", 0, 1.0, 1.0, 2.0, false, [](PointView x, PointView y) { return Complex(1.0 / euclid(x, y)); }};
}

}  // namespace kernels

/// Kernel (x, y) -> K(y, x) of the adjoint operator.
inline KernelSpec adjoint(const KernelSpec& k) {
  KernelSpec a = k;
  a.name = "adjoint(" + k.name + ")";
  a.eval = [e = k.eval](PointView x, PointView y) { return e(y, x); };
  return a;
}

inline void check_kernel(const DiscreteMeasure& mu, const KernelSpec& k) {
  require(k.dim == 0 || k.dim == mu.dim(), "kernel " + k.name + " needs ambient dimension " + std::to_string(k.dim));
}

// ---------------------------------------------------------------------------
// Truncated singular integrals

/// T_{mu,eps} f(x) = sum over |x - y_j| > eps of K(x, y_j) f_j w_j, in atom order.
inline Complex t_eps(const DiscreteMeasure& mu, const KernelSpec& k, const Density& f, PointView x, double eps) {
  check_density(mu, f);
  check_kernel(mu, k);
  require(eps >= mu.resolution(), "truncation must be at least the measure resolution");
  Accumulator<Complex> acc(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (euclid(x, mu.point(i)) > eps) acc.add(k(x, mu.point(i)) * f[i] * mu.weight(i));
  }
  return acc.value();
}

struct MaxTruncation {
  double value = 0.0;
  /// A truncation eps > delta at which |T_eps f(x)| attains `value`.
  double eps = 0.0;
};

/// T_{mu,*,delta} f(x) = sup over eps > delta of |T_{mu,eps} f(x)|, exactly.
///
/// T_eps is constant between consecutive distinct atom distances, so the
/// supremum is the largest modulus among the suffix sums (farthest atoms
/// first) over distances beyond delta, or 0 for the empty suffix.
inline MaxTruncation t_max_detail(const DiscreteMeasure& mu, const KernelSpec& k, const Density& f, PointView x,
                                  double delta) {
  check_density(mu, f);
  check_kernel(mu, k);
  require(delta >= mu.resolution(), "truncation must be at least the measure resolution");
  struct Term {
    double dist;
    Complex value;
  };
  std::vector<Term> terms;
  double far = delta;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double r = euclid(x, mu.point(i));
    if (r > delta) {
      terms.push_back({r, k(x, mu.point(i)) * f[i] * mu.weight(i)});
      far = std::max(far, r);
    }
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.dist > b.dist; });
  MaxTruncation best{0.0, far + 1.0};
  Accumulator<Complex> acc(terms.size() > kCompensationThreshold);
  std::size_t i = 0;
  while (i < terms.size()) {
    const double r = terms[i].dist;
    while (i < terms.size() && terms[i].dist == r) acc.add(terms[i++].value);
    const double v = std::abs(acc.value());
    if (v > best.value) {
      const double below = i < terms.size() ? terms[i].dist : delta;
      best = {v, 0.5 * (below + r)};
    }
  }
  return best;
}

inline double t_max(const DiscreteMeasure& mu, const KernelSpec& k, const Density& f, PointView x, double delta) {
  return t_max_detail(mu, k, f, x, delta).value;
}

/// Truncated adjoint T*_{mu,eps} f(x), kernel (x, y) -> K(y, x).
inline Complex t_eps_adjoint(const DiscreteMeasure& mu, const KernelSpec& k, const Density& f, PointView x,
                             double eps) {
  return t_eps(mu, adjoint(k), f, x, eps);
}

/// Maximal truncation of the adjoint, T*_{mu,*,delta} f(x).
inline double t_star_adjoint(const DiscreteMeasure& mu, const KernelSpec& k, const Density& f, PointView x,
                             double delta) {
  return t_max(mu, adjoint(k), f, x, delta);
}

// ---------------------------------------------------------------------------
// Maximal functions

namespace detail {

/// sup over radii of (sum |f|^p w) / (sum w) for atoms within `metric` distance, no root taken.
template <class Metric>
double centred_average_sup(const DiscreteMeasure& mu, const Density& f, PointView x, double p, Metric metric) {
  check_density(mu, f);
  struct Entry {
    double dist, fw, w;
  };
  std::vector<Entry> e(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double a = std::abs(f[i]);
    e[i] = {metric(x, mu.point(i)), (p == 1.0 ? a : std::pow(a, p)) * mu.weight(i), mu.weight(i)};
  }
  std::stable_sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) { return a.dist < b.dist; });
  double num = 0.0, den = 0.0, best = 0.0;
  std::size_t i = 0;
  while (i < e.size()) {
    const double r = e[i].dist;
    while (i < e.size() && e[i].dist == r) {
      num += e[i].fw;
      den += e[i].w;
      ++i;
    }
    best = std::max(best, num / den);
  }
  return best;
}

}  // namespace detail

/// Centred ball maximal function M_mu f(x), exact over critical radii.
/// Returns 0 for an empty measure.
inline double m_ball(const DiscreteMeasure& mu, const Density& f, PointView x) {
  return detail::centred_average_sup(mu, f, x, 1.0, euclid);
}

/// Centred cube maximal function M^Q_{mu,p} f(x) = (sup_r avg_{Q(x,r)} |f|^p)^{1/p}.
inline double m_cube_p(const DiscreteMeasure& mu, const Density& f, PointView x, double p) {
  require(p >= 1.0, "maximal function exponent must be >= 1");
  const double s = detail::centred_average_sup(mu, f, x, p, sup_dist);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

/// sup over r >= h of sigma(B(x,r)) / r^n.
inline double m_radial(const DiscreteMeasure& sigma, PointView x, double n, double h) {
  require(h > 0.0, "scale h must be positive");
  require(n > 0.0, "degree n must be positive");
  return detail::radial_sup(detail::sorted_distances(sigma, x, euclid), n, h);
}

// ---------------------------------------------------------------------------
// Kernel constants

struct KernelCheck {
  double size_ratio = 0.0;      ///< max |K(x,y)| |x-y|^n
  double smooth_x_ratio = 0.0;  ///< max |K(x,y) - K(x',y)| |x-y|^{n+a} / |x-x'|^a
  double smooth_y_ratio = 0.0;  ///< same in the second variable
  double antisymmetry_defect = 0.0;  ///< max |K(x,y) + K(y,x)| |x-y|^n, antisymmetric kernels only
  bool pass = false;
};

/// Empirical check of the size and Holder bounds on seeded samples with |x-y| >= 2|x-x'|.
inline KernelCheck kernel_constants_check(const KernelSpec& k, std::size_t sample_count, std::uint64_t seed,
                                          std::size_t dim = 0) {
  require(sample_count >= 1, "sample_count must be positive");
  const std::size_t d = k.dim != 0 ? k.dim : (dim != 0 ? dim : 2);
  Rng rng(seed);
  auto random_unit = [&](Point& u) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& v : u) {
        v = rng.uniform(-1.0, 1.0);
        norm += v * v;
      }
    } while (norm < 1e-6 || norm > 1.0);
    for (auto& v : u) v /= std::sqrt(norm);
  };
  KernelCheck out;
  Point x(d), y(d), xp(d), yp(d), u(d);
  for (std::size_t s = 0; s < sample_count; ++s) {
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    random_unit(u);
    const double r = std::pow(10.0, rng.uniform(-3.0, 1.0));
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + r * u[i];
    const double dxy = euclid(x, y);
    const Complex kxy = k(x, y);
    out.size_ratio = std::max(out.size_ratio, std::abs(kxy) * std::pow(dxy, k.n));
    if (k.antisymmetric)
      out.antisymmetry_defect = std::max(out.antisymmetry_defect, std::abs(kxy + k(y, x)) * std::pow(dxy, k.n));

    random_unit(u);
    const double t = 0.5 * dxy * rng.uniform(1e-3, 1.0);
    for (std::size_t i = 0; i < d; ++i) xp[i] = x[i] + t * u[i];
    const double dx = euclid(x, xp);
    out.smooth_x_ratio = std::max(
        out.smooth_x_ratio, std::abs(kxy - k(xp, y)) * std::pow(dxy, k.n + k.alpha) / std::pow(dx, k.alpha));

    random_unit(u);
    for (std::size_t i = 0; i < d; ++i) yp[i] = y[i] + t * u[i];
    const double dy = euclid(y, yp);
    out.smooth_y_ratio = std::max(
        out.smooth_y_ratio, std::abs(kxy - k(x, yp)) * std::pow(dxy, k.n + k.alpha) / std::pow(dy, k.alpha));
  }
  out.pass = out.size_ratio <= k.C && out.smooth_x_ratio <= k.C && out.smooth_y_ratio <= k.C &&
             out.antisymmetry_defect <= 1e-12;
  return out;
}

}  // namespace czlab

#endif  // CZLAB_OPERATORS_HPP
