#ifndef CZLAB_TB_HPP
#define CZLAB_TB_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/geometry.hpp"
#include "czlab/measure.hpp"
#include "czlab/operators.hpp"
#include "czlab/parallel.hpp"
#include "czlab/report.hpp"
#include "czlab/testfn.hpp"

namespace czlab {

// ---------------------------------------------------------------------------
// Exponents

struct ExponentConfig {
  double p = 2.0;
  double q = 2.0;
  double n = 1.0;

  double p_prime() const { return p / (p - 1.0); }
  double q_prime() const { return q / (q - 1.0); }

  void validate() const {
    require(p > 1.0 && p <= 2.0, "exponent p must lie in (1, 2]");
    require(q > 1.0 && q <= 2.0, "exponent q must lie in (1, 2]");
    require(n > 0.0, "degree n must be positive");
  }
};

struct ExponentRegion {
  bool b_side_no_buffer = false;  ///< 1/p + 1/q < 1 + 1/(nq)
  bool p_side_no_buffer = false;  ///< 1/p + 1/q < 1 + 1/(np)
  bool diagonal_no_buffer = false;  ///< 1/q < (1 + 1/(nq)) / 2
};

inline ExponentRegion exponent_region(const ExponentConfig& cfg) {
  cfg.validate();
  const double s = 1.0 / cfg.p + 1.0 / cfg.q;
  return {s < 1.0 + 1.0 / (cfg.n * cfg.q), s < 1.0 + 1.0 / (cfg.n * cfg.p),
          1.0 / cfg.q < 0.5 * (1.0 + 1.0 / (cfg.n * cfg.q))};
}

/// Admissible range for the shell exponent u: n - 2n/q' < u < 2/p + 2n/p' - n.
struct UWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool nonempty() const { return lo < hi; }
  bool contains(double u) const { return lo < u && u < hi; }
};

inline UWindow shell_window(const ExponentConfig& cfg) {
  cfg.validate();
  return {cfg.n - 2.0 * cfg.n / cfg.q_prime(), 2.0 / cfg.p + 2.0 * cfg.n / cfg.p_prime() - cfg.n};
}

// ---------------------------------------------------------------------------
// Stopping constants

struct StoppingConstants {
  double eta = 0.5;
  double c_stop = 0.0;
  double delta_stop = 0.0;
  double tau0 = 0.5;
  double tau1 = 0.75;
  double c1 = 0.0625;
  double p0 = 0.0;
  double s = 0.5;
  double b2 = 0.0;

  /// Constants fixed by B1 and q; p0, s and B2 are filled in later.
  static StoppingConstants from(double b1, double q) {
    require(b1 >= 1.0, "B1 must be at least 1");
    require(q > 1.0, "exponent q must exceed 1");
    StoppingConstants c;
    c.eta = 0.5 * std::pow(b1, -1.0 / q);
    c.c_stop = std::pow(16.0 * b1 / c.eta, q / (q - 1.0));
    c.delta_stop = c.eta / 16.0;
    c.tau0 = 1.0 - c.eta;
    c.tau1 = 1.0 - 0.5 * c.eta;
    c.c1 = c.eta / 8.0;
    return c;
  }

  std::map<std::string, double> as_map() const {
    return {{"eta", eta}, {"c_stop", c_stop}, {"delta_stop", delta_stop}, {"tau0", tau0},
            {"tau1", tau1}, {"c1", c1}, {"p0", p0}, {"s", s}, {"B2", b2}};
  }
};

// ---------------------------------------------------------------------------
// Cotlar inequality

struct CotlarParams {
  double delta = 0.0;
  double tau = 0.1;
  double b = 26.0;    ///< ball doubling constant for the radius adjustment
  double t = 128.0;   ///< small-boundary constant for R
  double cd = 0.0;    ///< C_d; 4 sqrt(d) when <= 0
  double bound = std::numeric_limits<double>::infinity();
};

/// Produces an L^q-admissible test function on a requested cube R.
using TestProvider = std::function<TestFunction(const Cube&)>;

/// mu with weights w |b|^p, keeping only atoms where b does not vanish.
inline DiscreteMeasure power_measure(const DiscreteMeasure& mu, const Density& b, double p) {
  DiscreteMeasure out(mu.dim(), mu.resolution());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double a = std::abs(b[i]);
    if (a > 0.0) out.add_atom(mu.point(i), mu.weight(i) * std::pow(a, p));
  }
  return out;
}

/// 1_Q T_{mu,delta} b evaluated at every atom.
inline Density truncated_on_atoms(const DiscreteMeasure& mu, const KernelSpec& k, const Density& b, const Cube& q,
                                  double delta) {
  std::vector<Complex> v(mu.size(), Complex(0.0));
  parallel_for(mu.size(), [&](std::size_t i) {
    if (q.contains(mu.point(i))) v[i] = t_eps(mu, k, b, mu.point(i), delta);
  });
  return Density(std::move(v));
}

/// Pointwise check of |T_eps bQ(x)| against the three maximal functions, at every sample.
inline VerificationReport cotlar_verify(const DiscreteMeasure& mu, const KernelSpec& k, const TestFunction& bq,
                                        const TestProvider& pr_provider, const ExponentConfig& cfg,
                                        const CotlarParams& prm, const std::vector<Point>& samples) {
  cfg.validate();
  check_kernel(mu, k);
  require(prm.delta >= mu.resolution(), "delta must be at least the measure resolution");
  require(prm.tau > 0.0 && prm.tau < 1.0, "tau must lie in (0, 1)");
  require(admissible_check(bq, mu).ok(), "bQ is not admissible");
  const Cube inner = bq.q.scaled(1.0 - prm.tau);
  for (const auto& x : samples) require(inner.contains(x), "sample point outside (1 - tau)Q");

  const double cd = prm.cd > 0.0 ? prm.cd : 4.0 * std::sqrt(static_cast<double>(mu.dim()));
  const double qp = cfg.q_prime();
  const Density g = truncated_on_atoms(mu, k, bq.values, bq.q, prm.delta);
  const DiscreteMeasure sigma_p = power_measure(mu, bq.values, cfg.p);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  VerificationReport rep;
  rep.instance = "cotlar/" + k.name;
  rep.bound = prm.bound;
  rep.constants = {{"delta", prm.delta}, {"tau", prm.tau}, {"b", prm.b}, {"t", prm.t}, {"Cd", cd},
                   {"p", cfg.p}, {"q", cfg.q}, {"n", cfg.n}, {"B1", bq.b1}};
  rep.points.resize(samples.size());
  std::vector<std::vector<std::string>> issues(samples.size());

  parallel_for(samples.size(), [&](std::size_t s) {
    const Point& x = samples[s];
    PointRecord& rec = rep.points[s];
    rec.x = x;
    const MaxTruncation lhs = t_max_detail(mu, k, bq.values, x, prm.delta);
    const double m1 = m_ball(mu, bq.values, x);
    const double m2 = m_cube_p(mu, bq.values, x, cfg.p);
    const double m3 = m_cube_p(mu, g, x, qp);
    rec.lhs = lhs.value;
    rec.rhs = m1 + m2 + m3;
    if (rec.rhs > 0.0) {
      rec.ratio = rec.lhs / rec.rhs;
    } else {
      rec.ratio = rec.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      if (rec.lhs > 0.0) issues[s].push_back("rhs vanishes with positive lhs at sample " + std::to_string(s));
    }
    rec.extra = {{"m_ball", m1}, {"m_cube_p", m2}, {"m_cube_qprime", m3}, {"eps0", lhs.eps}};

    // Radius adjustment: move eps0 up to a ball-doubling radius.
    const double eps0 = lhs.eps;
    const DoublingBall db = doubling_ball_radius(mu, x, eps0, cd, prm.b);
    const double jump = std::abs(t_eps(mu, k, bq.values, x, eps0) - t_eps(mu, k, bq.values, x, db.radius));
    rec.extra["eps"] = db.radius;
    rec.extra["radius_adjust"] = m1 > 0.0 ? jump / m1 : (jump > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

    // The cube R between B(x, eps) and B(x, Cd eps) and the Holder step on it.
    rec.extra["r_side"] = nan;
    rec.extra["r_doubling"] = nan;
    rec.extra["holder_ratio"] = nan;
    Cube r(x, 2.0 * db.radius);
    try {
      r = small_boundary_select(mu, sigma_p, Cube(x, 2.0 * db.radius), prm.t);
    } catch (const NotFound&) {
      issues[s].push_back("no small-boundary R at sample " + std::to_string(s));
      return;
    }
    const double mr = cube_mass(mu, r);
    if (!bq.q.contains_cube(r) || mr == 0.0) return;
    rec.extra["r_side"] = r.side;
    const bool dbl = doubling_check(mu, r, 5.0, prm.b);
    rec.extra["r_doubling"] = dbl ? 1.0 : 0.0;
    if (!dbl) issues[s].push_back("R is not (5,b)-doubling at sample " + std::to_string(s));
    const TestFunction pr = pr_provider(r);
    double cross = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (r.contains(mu.point(i))) cross += std::abs(pr.values[i]) * std::abs(g[i]) * mu.weight(i);
    cross /= mr;
    const double cap = std::pow(pr.b1, 1.0 / pr.p) * m3;
    const double hr = cap > 0.0 ? cross / cap : (cross > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rec.extra["holder_ratio"] = hr;
    if (hr > 1.0 + 1e-9) issues[s].push_back("Holder step exceeded at sample " + std::to_string(s));
  });

  double worst_adjust = 0.0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    worst_adjust = std::max(worst_adjust, rep.points[s].extra["radius_adjust"]);
    for (auto& m : issues[s]) rep.anomalies.push_back(std::move(m));
  }
  rep.constants["radius_adjust_max"] = worst_adjust;
  rep.finalize();
  return rep;
}

/// n-dimensional seeded uniform samples in (1 - tau)Q.
inline std::vector<Point> sample_points(const Cube& q, double tau, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const Cube inner = q.scaled(1.0 - tau);
  std::vector<Point> out(count, Point(q.dim()));
  for (auto& x : out)
    for (std::size_t i = 0; i < q.dim(); ++i) x[i] = rng.uniform(inner.lower(i), inner.upper(i));
  return out;
}

// ---------------------------------------------------------------------------
// Shell sums

struct ShellResult {
  double a_sum = 0.0;
  double b_sum = 0.0;
  std::vector<double> a_increments;  ///< per depth 0..depth
  std::vector<double> b_increments;
  UWindow window;
  double maximal = 0.0;  ///< M^Q_{mu,p} bQ(x)

  /// Largest ratio of consecutive increments from depth `from` on, ignoring zero pairs.
  static double decay(const std::vector<double>& inc, std::size_t from) {
    double worst = 0.0;
    for (std::size_t k = std::max<std::size_t>(from, 1); k < inc.size(); ++k) {
      if (inc[k - 1] > 0.0) worst = std::max(worst, inc[k] / inc[k - 1]);
      else if (inc[k] > 0.0) worst = std::numeric_limits<double>::infinity();
    }
    return worst;
  }
};

/// Truncated sums A (over D_k(R)) and B (over boundary cells) with weights
/// eta_P = (l(P)/l(R))^u M^Q_{mu,p} bQ(x), for depths 0..depth.
inline ShellResult shell_diagnostics(const DiscreteMeasure& mu, const TestFunction& bq, const TestFunction& pr,
                                     const Cube& r, PointView x, const ExponentConfig& cfg, double u, int depth) {
  cfg.validate();
  check_density(mu, bq.values);
  check_density(mu, pr.values);
  require(depth >= 0, "depth must be nonnegative");
  require(std::ldexp(r.side, -depth) >= mu.resolution() * (1.0 - 1e-12), "depth finer than the measure resolution");
  const std::size_t d = mu.dim();

  ShellResult out;
  out.window = shell_window(cfg);
  out.maximal = m_cube_p(mu, bq.values, x, cfg.p);
  const double inf = std::numeric_limits<double>::infinity();

  const DiscreteMeasure sigma_p = power_measure(mu, bq.values, cfg.p);
  const DyadicGrid grid{r, depth};
  std::vector<std::size_t> in_r;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (r.contains_half_open(mu.point(i)) && pr.values[i] != Complex(0.0)) in_r.push_back(i);

  for (int k = 0; k <= depth; ++k) {
    const double lp = grid.side_at(k);
    const double weight = std::pow(lp / r.side, u) * out.maximal;
    const double scale = std::pow(lp, cfg.n);

    std::map<std::vector<std::int64_t>, double> nu;
    for (auto i : in_r) nu[grid.index_of(mu.point(i), k)] += std::abs(pr.values[i]) * mu.weight(i);
    double a = 0.0;
    for (const auto& [idx, m] : nu) a += m * m / scale * weight;

    double b = 0.0;
    const std::int64_t cells = std::int64_t{1} << k;
    std::vector<std::int64_t> idx(d, 0);
    bool done = cells == 0;
    while (!done) {
      bool boundary = false;
      for (std::size_t i = 0; i < d; ++i) boundary = boundary || idx[i] <= 2 || idx[i] >= cells - 3;
      if (boundary) {
        const Cube p = grid.cell(k, idx);
        const Cube p5 = p.scaled(5.0);
        if (sup_dist(p.center, r.center) + 2.5 * lp >= 0.5 * r.side) {
          const double s5 = cube_mass(sigma_p, p5);
          if (s5 > 0.0) b += weight > 0.0 ? s5 * s5 / scale / weight : inf;
        }
      }
      std::size_t i = 0;
      while (i < d && ++idx[i] == cells) idx[i++] = 0;
      done = i == d;
    }
    out.a_increments.push_back(a);
    out.b_increments.push_back(b);
    out.a_sum += a;
    out.b_sum += b;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corollary and weak embedding

/// Integral of [T_{*,delta} b]^a over (1 - tau)Q divided by mu(Q); a second
/// record repeats it with the adjoint kernel and pQ when given.
inline VerificationReport corollary_verify(const DiscreteMeasure& mu, const KernelSpec& k, const TestFunction& bq,
                                           const TestFunction* pq, double delta, double tau, double power_a,
                                           double bound = std::numeric_limits<double>::infinity()) {
  require(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
  require(power_a > 0.0 && power_a < bq.p, "power a must lie in (0, p)");
  if (pq) require(power_a < pq->p, "power a must lie below the exponent of pQ");
  const Cube inner = bq.q.scaled(1.0 - tau);
  const double mass = cube_mass(mu, bq.q);
  require(mass > 0.0, "mu(Q) must be positive");
  const auto idx = indices_in(mu, [&inner](PointView y) { return inner.contains(y); });

  VerificationReport rep;
  rep.instance = "corollary/" + k.name;
  rep.bound = bound;
  rep.constants = {{"delta", delta}, {"tau", tau}, {"a", power_a}, {"mu_Q", mass}};
  auto side = [&](const KernelSpec& kern, const Density& f, double which) {
    std::vector<double> v(idx.size());
    parallel_for(idx.size(), [&](std::size_t j) { v[j] = t_max(mu, kern, f, mu.point(idx[j]), delta); });
    Accumulator<double> acc(idx.size() > kCompensationThreshold);
    for (std::size_t j = 0; j < idx.size(); ++j) acc.add(std::pow(v[j], power_a) * mu.weight(idx[j]));
    PointRecord rec{bq.q.center, acc.value(), mass, acc.value() / mass, {{"adjoint", which}}};
    rep.points.push_back(std::move(rec));
  };
  side(k, bq.values, 0.0);
  if (pq) side(adjoint(k), pq->values, 1.0);
  rep.finalize();
  return rep;
}

struct WeakEmbedding {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

/// int_Q |f|^a dmu <= s/(s-a) mu(Q)^{1-a/s} ||f||_{L^{s,inf}}^a.
inline WeakEmbedding weak_embedding_check(const DiscreteMeasure& mu, const Density& f, const Cube& q, double a,
                                          double s) {
  require(a > 0.0 && s > a, "need s > a > 0");
  check_density(mu, f);
  Accumulator<double> lhs(mu.size() > kCompensationThreshold);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (q.contains(mu.point(i))) lhs.add(std::pow(std::abs(f[i]), a) * mu.weight(i));
  const double mass = cube_mass(mu, q);
  WeakEmbedding out;
  out.lhs = lhs.value();
  out.rhs = mass > 0.0 ? s / (s - a) * std::pow(mass, 1.0 - a / s) * std::pow(weak_norm(mu, f, q, s), a) : 0.0;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

// ---------------------------------------------------------------------------
// Exceptional sets

struct P0Choice {
  double p0 = 0.0;
  double e_mass = 0.0;   ///< sigma(E_{p0/2^n})
  double sigma_q = 0.0;  ///< sigma(Q)
};

/// m_radial at every atom of sigma, in atom order.
inline std::vector<double> radial_profile(const DiscreteMeasure& sigma, double n, double h) {
  std::vector<double> out(sigma.size());
  parallel_for(sigma.size(), [&](std::size_t i) { out[i] = m_radial(sigma, sigma.point(i), n, h); });
  return out;
}

namespace detail {

inline P0Choice choose_p0_from(const DiscreteMeasure& sigma, const std::vector<double>& prof, const Cube& q,
                               double n, double h, double target_fraction) {
  P0Choice out;
  Point lo(q.dim(), std::numeric_limits<double>::infinity()), hi(q.dim(), -std::numeric_limits<double>::infinity());
  std::vector<std::pair<double, double>> vals;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!q.contains(sigma.point(i))) continue;
    out.sigma_q += sigma.weight(i);
    vals.push_back({prof[i], sigma.weight(i)});
    for (std::size_t j = 0; j < q.dim(); ++j) {
      lo[j] = std::min(lo[j], sigma.point(i)[j]);
      hi[j] = std::max(hi[j], sigma.point(i)[j]);
    }
  }
  if (out.sigma_q == 0.0) {
    out.p0 = 1.0;
    return out;
  }
  double diag = 0.0;
  for (std::size_t j = 0; j < q.dim(); ++j) diag += (hi[j] - lo[j]) * (hi[j] - lo[j]);
  const double reach = std::max(std::sqrt(diag), h);
  int k = static_cast<int>(std::floor(std::log2(out.sigma_q / std::pow(reach, n))));
  const double budget = target_fraction * out.sigma_q * (1.0 + 1e-12);
  for (;; ++k) {
    const double p0 = std::ldexp(1.0, k);
    const double level = p0 / std::pow(2.0, n);
    double e = 0.0;
    for (const auto& [v, w] : vals)
      if (v >= level) e += w;
    if (e <= budget) {
      out.p0 = p0;
      out.e_mass = e;
      return out;
    }
  }
}

}  // namespace detail

/// Smallest p0 = 2^k with sigma({m_radial >= p0/2^n} in Q) <= target_fraction sigma(Q).
inline P0Choice choose_p0(const DiscreteMeasure& sigma, const Cube& q, double n, double h, double target_fraction) {
  require(target_fraction > 0.0 && target_fraction <= 1.0, "target fraction must lie in (0, 1]");
  return detail::choose_p0_from(sigma, radial_profile(sigma, n, h), q, n, h, target_fraction);
}

struct ExceptionalShell {
  double tau0 = 0.5;  ///< E_Q = Q minus the closed cube tau0 Q
  Cube inner;
  double shell_mass = 0.0;  ///< integral of |b| over E_Q
  double total = 0.0;       ///< integral of |b| over Q
  bool pass = false;
  bool resolution_limited = false;
  bool q_small_boundary = true;
  bool q_doubling = true;

  bool in_shell(const Cube& q, PointView y) const { return q.contains(y) && !inner.contains(y); }
};

/// First tau0 = 1 - 2^-k (k = 1, 2, ...) whose shell carries at most c1 of the |b| mass of Q.
inline ExceptionalShell exceptional_shell(const Cube& q, const DiscreteMeasure& mu, const Density& b, double c1,
                                          double t = 0.0, double bconst = 0.0) {
  check_density(mu, b);
  require(c1 > 0.0, "c1 must be positive");
  ExceptionalShell out;
  if (t > 0.0) out.q_small_boundary = small_boundary_check(mu, q, t).pass;
  if (bconst > 0.0) out.q_doubling = doubling_check(mu, q, 5.0, bconst);

  std::size_t edge = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!q.contains(mu.point(i))) continue;
    out.total += std::abs(b[i]) * mu.weight(i);
    if (!q.scaled(1.0 - 1e-15).contains(mu.point(i)) && b[i] != Complex(0.0)) ++edge;
  }
  const double budget = c1 * out.total * (1.0 + 1e-12);
  for (int k = 1; k <= 52; ++k) {
    out.tau0 = 1.0 - std::ldexp(1.0, -k);
    out.inner = q.scaled(out.tau0);
    double shell = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (!out.in_shell(q, mu.point(i)) || b[i] == Complex(0.0)) continue;
      shell += std::abs(b[i]) * mu.weight(i);
      ++count;
    }
    out.shell_mass = shell;
    if (shell <= budget) {
      out.pass = true;
      return out;
    }
    if (count <= edge) break;
  }
  out.resolution_limited = true;
  return out;
}

struct WeakType {
  double sup_value = 0.0;
  double b2 = 0.0;
};

/// sup over lambda of lambda^s mu({x in Q minus E_Q : T_{*,delta} b(x) > lambda}), over atoms.
inline WeakType weak_type_testing(const DiscreteMeasure& mu, const KernelSpec& k, const Density& b, const Cube& q,
                                  const ExceptionalShell& shell, double s, double delta) {
  require(s > 0.0, "weak exponent s must be positive");
  const auto idx = indices_in(mu, [&](PointView y) { return q.contains(y) && !shell.in_shell(q, y); });
  std::vector<std::pair<double, double>> vals(idx.size());
  parallel_for(idx.size(), [&](std::size_t j) {
    vals[j] = {t_max(mu, k, b, mu.point(idx[j]), delta), mu.weight(idx[j])};
  });
  std::stable_sort(vals.begin(), vals.end(), [](auto& a, auto& c) { return a.first > c.first; });
  WeakType out;
  double tail = 0.0;
  std::size_t i = 0;
  while (i < vals.size()) {
    const double v = vals[i].first;
    while (i < vals.size() && vals[i].first == v) tail += vals[i++].second;
    if (v > 0.0) out.sup_value = std::max(out.sup_value, std::pow(v, s) * tail);
  }
  const double mass = cube_mass(mu, q);
  out.b2 = mass > 0.0 ? out.sup_value / mass : 0.0;
  return out;
}

struct Ball {
  Point center;
  double radius = 0.0;
};

struct StoppingBounds {
  bool t_ok = true;          ///< sigma(T) <= tau0 sigma(Q)
  bool h1_ok = true;         ///< sigma(H1) <= (eta/8) sigma(Q)
  bool h2_in_e = true;       ///< H2 subset E_{p0/2^n} atomwise
  bool h2_ok = true;         ///< sigma(H2) <= sigma(E_{p0/2^n})
  bool e_ok = true;          ///< sigma(E_{p0/2^n}) <= (eta/8) sigma(Q)
  bool shell_ok = true;      ///< sigma(E_Q) <= c1 sigma(Q)
  bool union_ok = true;      ///< sigma(T u H1 u H2 u E_Q) <= (1 - eta/2) sigma(Q)
  bool pointwise_ok = true;  ///< delta <= sigma(R)/mu(R) <= c_stop^{1/q} off H1

  bool ok() const { return t_ok && h1_ok && h2_in_e && h2_ok && e_ok && shell_ok && union_ok && pointwise_ok; }
};

struct StoppingResult {
  StoppingConstants consts;
  std::vector<Cube> a_cubes;
  std::vector<Cube> f1;
  std::vector<Cube> f2;
  std::vector<Ball> h2_balls;
  ExceptionalShell shell;
  double mu_q = 0.0;
  double sigma_q = 0.0;
  double sigma_t = 0.0;
  double sigma_h1 = 0.0;
  double sigma_e = 0.0;
  double sigma_h2 = 0.0;
  double sigma_eq = 0.0;
  double sigma_union = 0.0;
  bool depth_sufficient = true;
  StoppingBounds bounds;

  std::map<std::string, double> summary() const {
    return {{"mu_Q", mu_q}, {"sigma_Q", sigma_q}, {"sigma_T", sigma_t}, {"sigma_H1", sigma_h1},
            {"sigma_E", sigma_e}, {"sigma_H2", sigma_h2}, {"sigma_EQ", sigma_eq}, {"sigma_union", sigma_union},
            {"A_count", static_cast<double>(a_cubes.size())}, {"F1_count", static_cast<double>(f1.size())},
            {"F2_count", static_cast<double>(f2.size())}, {"H2_balls", static_cast<double>(h2_balls.size())},
            {"tau0_shell", shell.tau0}, {"depth_sufficient", depth_sufficient ? 1.0 : 0.0}};
  }
};

namespace detail {

struct CellSums {
  Complex b{};       // integral of b dmu
  double abs_b = 0;  // sigma(R)
  double mu = 0;     // mu(R)
  double bq = 0;     // integral of |b|^q dmu
};

using CellKey = std::vector<std::int64_t>;

/// Per tested depth, the sums over every nonempty cell and each atom's cell key.
struct GridSums {
  std::vector<int> depths;
  std::vector<std::map<CellKey, CellSums>> cells;
  std::vector<std::vector<CellKey>> keys;  // [depth slot][atom]
};

inline GridSums grid_sums(const DyadicGrid& grid, const DiscreteMeasure& mu, const Density& b, double q) {
  GridSums g;
  for (int k = 0; k <= grid.max_depth && grid.side_at(k) >= mu.resolution() * (1.0 - 1e-12); ++k) {
    g.depths.push_back(k);
    std::map<CellKey, CellSums> cells;
    std::vector<CellKey> keys(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      keys[i] = grid.index_of(mu.point(i), k);
      auto& c = cells[keys[i]];
      const double a = std::abs(b[i]), w = mu.weight(i);
      c.b += b[i] * w;
      c.abs_b += a * w;
      c.mu += w;
      c.bq += std::pow(a, q) * w;
    }
    g.cells.push_back(std::move(cells));
    g.keys.push_back(std::move(keys));
  }
  return g;
}

/// Top-down first-hit selection: returns the selected cells and marks covered atoms.
template <class Pred>
std::vector<Cube> select_maximal(const DyadicGrid& grid, const GridSums& g, Pred pred, std::vector<char>& covered) {
  std::vector<Cube> out;
  for (std::size_t slot = 0; slot < g.depths.size(); ++slot) {
    std::map<CellKey, bool> hit;
    for (std::size_t i = 0; i < covered.size(); ++i) {
      if (covered[i]) continue;
      const auto& key = g.keys[slot][i];
      auto it = hit.find(key);
      if (it == hit.end()) {
        const bool sel = pred(g.cells[slot].at(key));
        it = hit.emplace(key, sel).first;
        if (sel) out.push_back(grid.cell(g.depths[slot], key));
      }
      if (it->second) covered[i] = 1;
    }
  }
  return out;
}

}  // namespace detail

/// Stopping families of the big-piece construction for bQ on Q:
/// A on the shifted grid, F1/F2 on the unshifted one, plus E_{p0/2^n}, H2 and E_Q.
inline StoppingResult stopping_sets(const DyadicGrid& grid_w, const DiscreteMeasure& mu_all, const TestFunction& bq,
                                    double n) {
  const Cube& q = bq.q;
  const auto idx = indices_in(mu_all, [&q](PointView y) { return q.contains(y); });
  const DiscreteMeasure mu = subset(mu_all, idx);
  const Density b = subset(bq.values, idx);
  require(admissible_check(TestFunction{b, q, bq.p, bq.b1}, mu).ok(), "bQ is not admissible");
  require(mu.size() > 0, "mu(Q) must be positive");
  const double h = mu.resolution();
  const double qexp = bq.p;

  StoppingResult out;
  out.consts = StoppingConstants::from(bq.b1, qexp);
  auto& c = out.consts;
  const double tol = 1.0 + 1e-12;

  const Point zero(q.dim(), 0.0);
  const DyadicGrid grid_0 = random_grid(q, zero, grid_w.max_depth);
  out.depth_sufficient = grid_w.side_at(grid_w.max_depth) <= h && grid_0.side_at(grid_0.max_depth) <= h;

  for (std::size_t i = 0; i < mu.size(); ++i) {
    out.mu_q += mu.weight(i);
    out.sigma_q += std::abs(b[i]) * mu.weight(i);
  }

  // A family on D(w): |integral over R of b dmu| < eta sigma(R).
  const auto gw = detail::grid_sums(grid_w, mu, b, qexp);
  std::vector<char> in_t(mu.size(), 0);
  out.a_cubes = detail::select_maximal(grid_w, gw, [&](const detail::CellSums& s) {
    return std::abs(s.b) < c.eta * s.abs_b;
  }, in_t);

  // F1, F2 on D(0).
  const auto g0 = detail::grid_sums(grid_0, mu, b, qexp);
  std::vector<char> in_f1(mu.size(), 0), in_f2(mu.size(), 0);
  out.f1 = detail::select_maximal(grid_0, g0, [&](const detail::CellSums& s) { return s.bq > c.c_stop * s.mu; }, in_f1);
  out.f2 = detail::select_maximal(grid_0, g0, [&](const detail::CellSums& s) { return s.abs_b < c.delta_stop * s.mu; },
                                  in_f2);

  // Pointwise bounds on every tested cube containing an atom off H1.
  const double upper = std::pow(c.c_stop, 1.0 / qexp);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (in_f1[i] || in_f2[i]) continue;
    for (std::size_t slot = 0; slot < g0.depths.size(); ++slot) {
      const auto& s = g0.cells[slot].at(g0.keys[slot][i]);
      const double ratio = s.abs_b / s.mu;
      if (ratio < c.delta_stop / tol || ratio > upper * tol) out.bounds.pointwise_ok = false;
    }
  }

  // E_{p0/2^n} and H2 on the atoms of sigma.
  const Polar pol = polar(b, mu);
  const auto prof = radial_profile(pol.sigma, n, h);
  const P0Choice pc = detail::choose_p0_from(pol.sigma, prof, q, n, h, c.eta / 8.0);
  c.p0 = pc.p0;
  const double level = c.p0 / std::pow(2.0, n);
  std::vector<char> in_e(pol.sigma.size(), 0), in_h2(pol.sigma.size(), 0);
  for (std::size_t j = 0; j < pol.sigma.size(); ++j) in_e[j] = prof[j] >= level;
  for (std::size_t j = 0; j < pol.sigma.size(); ++j) {
    if (!(prof[j] > c.p0)) continue;
    const auto sorted = detail::sorted_distances(pol.sigma, pol.sigma.point(j), euclid);
    double mass = 0.0, best = 0.0;
    std::size_t i = 0;
    while (i < sorted.size() && sorted[i].dist <= h) mass += sorted[i++].weight;
    auto consider = [&](double r, double m) {
      if (m > c.p0 * std::pow(r, n)) best = std::pow(m / c.p0, 1.0 / n);
    };
    consider(h, mass);
    while (i < sorted.size()) {
      const double r = sorted[i].dist;
      while (i < sorted.size() && sorted[i].dist == r) mass += sorted[i++].weight;
      consider(r, mass);
    }
    if (best <= 0.0) continue;
    const Point ctr(pol.sigma.point(j).begin(), pol.sigma.point(j).end());
    out.h2_balls.push_back({ctr, best});
    for (std::size_t m = 0; m < pol.sigma.size(); ++m)
      if (euclid(ctr, pol.sigma.point(m)) <= best) in_h2[m] = 1;
  }

  // E_Q with c1 = eta/8.
  out.shell = exceptional_shell(q, mu, b, c.c1);

  std::vector<char> in_union(mu.size(), 0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double m = std::abs(b[i]) * mu.weight(i);
    if (in_t[i]) out.sigma_t += m;
    if (in_f1[i] || in_f2[i]) out.sigma_h1 += m;
    if (out.shell.in_shell(q, mu.point(i))) out.sigma_eq += m;
    in_union[i] = in_t[i] || in_f1[i] || in_f2[i] || out.shell.in_shell(q, mu.point(i));
  }
  for (std::size_t j = 0; j < pol.sigma.size(); ++j) {
    const double m = pol.sigma.weight(j);
    if (in_e[j]) out.sigma_e += m;
    if (in_h2[j]) {
      out.sigma_h2 += m;
      in_union[pol.source[j]] = 1;
      if (!in_e[j]) out.bounds.h2_in_e = false;
    }
  }
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (in_union[i]) out.sigma_union += std::abs(b[i]) * mu.weight(i);

  auto& bd = out.bounds;
  bd.t_ok = out.sigma_t <= c.tau0 * out.sigma_q * tol;
  bd.h1_ok = out.sigma_h1 <= c.eta / 8.0 * out.sigma_q * tol;
  bd.h2_ok = out.sigma_h2 <= out.sigma_e * tol;
  bd.e_ok = out.sigma_e <= c.eta / 8.0 * out.sigma_q * tol;
  bd.shell_ok = out.shell.pass && out.sigma_eq <= c.c1 * out.sigma_q * tol;
  bd.union_ok = out.sigma_union <= c.tau1 * out.sigma_q * tol;
  return out;
}

}  // namespace czlab

#endif  // CZLAB_TB_HPP
