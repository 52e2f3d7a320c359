#ifndef CZLAB_COMMANDS_HPP
#define CZLAB_COMMANDS_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "czlab/config.hpp"
#include "czlab/oracle.hpp"
#include "czlab/report.hpp"
#include "czlab/tb.hpp"
#include "czlab/whitney.hpp"
#include "json.hpp"

namespace czlab {

struct CommandOutput {
  bool pass = true;
  nlohmann::json report;
  std::string csv;
  std::map<std::string, std::string> files;  ///< extra outputs by file name
};

/// Seed for a randomized command; config validation failure if absent.
inline std::uint64_t require_seed(const ExperimentConfig& c, const std::string& command) {
  if (!c.params.seed) throw ConfigError("params.seed: required for command " + command);
  return *c.params.seed;
}

namespace commands {

using nlohmann::json;

inline std::string csv_row(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s + "\n";
}

inline CommandOutput region(const ExperimentConfig& c) {
  CommandOutput out;
  json rows = json::array();
  out.csv = "p,q,n,b_side,p_side,diagonal,window_lo,window_hi,window_nonempty\n";
  long mismatches = 0, buffered_low_n = 0;
  for (double n : c.region.n_values)
    for (double p : c.region.p_values)
      for (double q : c.region.q_values) {
        const ExponentConfig e{p, q, n};
        const auto r = exponent_region(e);
        const auto w = shell_window(e);
        const bool diagonal_same = r.diagonal_no_buffer == exponent_region({q, q, n}).b_side_no_buffer;
        if (w.nonempty() != r.p_side_no_buffer || !diagonal_same) ++mismatches;
        if (n <= 1.0 && !(r.b_side_no_buffer && r.p_side_no_buffer)) ++buffered_low_n;
        rows.push_back({{"p", p}, {"q", q}, {"n", n}, {"b_side_no_buffer", r.b_side_no_buffer},
                        {"p_side_no_buffer", r.p_side_no_buffer}, {"diagonal_no_buffer", r.diagonal_no_buffer},
                        {"window", {json_number(w.lo), json_number(w.hi)}}});
        out.csv += csv_row({p, q, n, double(r.b_side_no_buffer), double(r.p_side_no_buffer),
                            double(r.diagonal_no_buffer), w.lo, w.hi, double(w.nonempty())});
      }
  out.pass = mismatches == 0 && buffered_low_n == 0;
  out.report = {{"instance", "region"},
                {"cells", rows},
                {"aggregate", {{"window_mismatches", mismatches}, {"buffered_cells_with_n_le_1", buffered_low_n}}},
                {"pass", out.pass}};
  return out;
}

struct Setup {
  DiscreteMeasure mu;
  Cube q;
  KernelSpec kernel;
  DefaultConstants k;
  double delta;
};

inline Setup setup(const ExperimentConfig& c, bool with_kernel = true) {
  DiscreteMeasure mu = generate_measure(c.measure);
  Cube q = build_cube(c, mu);
  KernelSpec kern = with_kernel ? build_kernel(c.kernel, mu.dim()) : KernelSpec{};
  const DefaultConstants k = DefaultConstants::for_dim(mu.dim(), c.params);
  const double delta = c.params.delta_factor * mu.resolution();
  return {std::move(mu), std::move(q), std::move(kern), k, delta};
}

inline CommandOutput from_report(VerificationReport rep) {
  return {rep.pass, to_json(rep), to_csv(rep), {}};
}

inline CommandOutput cotlar(const ExperimentConfig& c) {
  const Setup s = setup(c);
  const auto bq = build_test(c.test_function, s.q, s.mu);
  FamilyConfig pf = c.provider;
  pf.p = c.exponents.q;
  const TestProvider provider = [&](const Cube& r) { return build_test(pf, r, s.mu); };
  CotlarParams prm;
  prm.delta = s.delta;
  prm.tau = c.params.tau;
  prm.b = std::max(s.k.b, std::pow(5.0 * s.k.cd, c.exponents.n) + 1.0);
  prm.t = s.k.t;
  prm.cd = s.k.cd;
  const auto pts = sample_points(s.q, c.params.tau, static_cast<std::size_t>(c.params.samples),
                                 require_seed(c, "cotlar"));
  auto out = from_report(cotlar_verify(s.mu, s.kernel, bq, provider, c.exponents, prm, pts));
  out.files["test_function.csv"] = density_csv(bq.values.values);
  return out;
}

inline CommandOutput corollary(const ExperimentConfig& c) {
  const Setup s = setup(c);
  const auto bq = build_test(c.test_function, s.q, s.mu);
  FamilyConfig pf = c.provider;
  pf.p = c.exponents.q;
  const auto pq = build_test(pf, s.q, s.mu);
  if (c.params.power_a >= pq.p) throw ConfigError("params.power_a: must be below exponents.q");
  auto out = from_report(corollary_verify(s.mu, s.kernel, bq, &pq, s.delta, c.params.tau, c.params.power_a));
  out.files["test_function.csv"] = density_csv(bq.values.values);
  out.files["adjoint_test_function.csv"] = density_csv(pq.values.values);
  return out;
}

inline CommandOutput shell(const ExperimentConfig& c) {
  const Setup s = setup(c, false);
  const auto bq = build_test(c.test_function, s.q, s.mu);
  Cube r = c.shell.r ? *c.shell.r : Cube::from_corner([&] {
    Point lo(s.q.dim());
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = s.q.lower(i) + 0.25 * s.q.side;
    return lo;
  }(), 0.25 * s.q.side);
  if (r.dim() != s.mu.dim()) throw ConfigError("shell.R: dimension does not match the measure");
  if (!s.q.contains_cube(r)) throw ConfigError("shell.R: must lie inside the cube Q");
  const Point x = c.shell.x ? *c.shell.x : r.center;
  if (x.size() != s.mu.dim()) throw ConfigError("shell.x: dimension does not match the measure");
  const int max_depth = static_cast<int>(std::floor(std::log2(r.side / s.mu.resolution()) + 1e-9));
  const int depth = c.shell.depth.value_or(std::max(0, max_depth));
  if (depth > max_depth) throw ConfigError("shell.depth: exceeds log2(l(R)/h)");
  FamilyConfig pf = c.provider;
  pf.p = c.exponents.q;
  const auto pr = build_test(pf, r, s.mu);
  const UWindow w = shell_window(c.exponents);
  std::vector<double> us = c.shell.u_values;
  if (us.empty()) {
    if (w.nonempty())
      for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) us.push_back(w.lo + f * (w.hi - w.lo));
    us.push_back(w.lo - 0.2);
    us.push_back(w.hi + 0.2);
  }
  json rows = json::array();
  CommandOutput out;
  out.csv = "u,in_window,A_sum,B_sum,A_decay,B_decay\n";
  for (double u : us) {
    const auto res = shell_diagnostics(s.mu, bq, pr, r, x, c.exponents, u, depth);
    const double ad = ShellResult::decay(res.a_increments, 5), bd = ShellResult::decay(res.b_increments, 5);
    json inc_a = json::array(), inc_b = json::array();
    for (double v : res.a_increments) inc_a.push_back(json_number(v));
    for (double v : res.b_increments) inc_b.push_back(json_number(v));
    rows.push_back({{"u", u}, {"in_window", w.contains(u)}, {"A_sum", json_number(res.a_sum)},
                    {"B_sum", json_number(res.b_sum)}, {"A_increments", inc_a}, {"B_increments", inc_b},
                    {"A_decay", json_number(ad)}, {"B_decay", json_number(bd)}, {"maximal", res.maximal}});
    out.csv += csv_row({u, double(w.contains(u)), res.a_sum, res.b_sum, ad, bd});
  }
  out.pass = w.nonempty() == exponent_region(c.exponents).p_side_no_buffer;
  out.report = {{"instance", "shell"},
                {"R", detail::cube_json(r)},
                {"x", x},
                {"depth", depth},
                {"window", {json_number(w.lo), json_number(w.hi)}},
                {"window_nonempty", w.nonempty()},
                {"rows", rows},
                {"pass", out.pass}};
  return out;
}

/// Shift w uniform in Omega_N for the cube Q.
inline Point random_shift(const Cube& q, Rng& rng) {
  const int n = grid_exponent(q.side);
  const double half = std::ldexp(1.0, n - 1);
  Point w(q.dim());
  for (auto& v : w) v = rng.uniform(-half, half);
  return w;
}

inline CommandOutput stopping(const ExperimentConfig& c) {
  const Setup s = setup(c);
  Rng rng(require_seed(c, "stopping"));
  const int root_exp = grid_exponent(s.q.side) + 1;
  const int depth = c.stopping.max_depth.value_or(resolving_depth(std::ldexp(1.0, root_exp), s.mu.resolution()));
  json rows = json::array();
  CommandOutput out;
  out.csv = "instance,sigma_Q,sigma_T,sigma_H1,sigma_E,sigma_H2,sigma_EQ,sigma_union,tau0,eta,p0,B2,bounds_ok\n";
  for (long i = 0; i < c.stopping.instances; ++i) {
    const auto bq = build_test(c.test_function, s.q, s.mu, static_cast<std::uint64_t>(i));
    const Point w = random_shift(s.q, rng);
    const auto grid = random_grid(s.q, w, depth);
    auto res = stopping_sets(grid, s.mu, bq, c.exponents.n);
    const auto wt = weak_type_testing(s.mu, s.kernel, bq.values, s.q, res.shell, c.params.s, s.delta);
    res.consts.s = c.params.s;
    res.consts.b2 = wt.b2;
    const bool ok = res.bounds.ok() && res.depth_sufficient;
    out.pass = out.pass && ok;
    auto sum = res.summary();
    json bounds{{"t_ok", res.bounds.t_ok}, {"h1_ok", res.bounds.h1_ok}, {"h2_in_e", res.bounds.h2_in_e},
                {"h2_ok", res.bounds.h2_ok}, {"e_ok", res.bounds.e_ok}, {"shell_ok", res.bounds.shell_ok},
                {"union_ok", res.bounds.union_ok}, {"pointwise_ok", res.bounds.pointwise_ok}};
    rows.push_back({{"instance", i}, {"shift", w}, {"constants", to_json(res.consts.as_map())},
                    {"sets", to_json(sum)}, {"bounds", bounds}, {"weak_sup", wt.sup_value}, {"pass", ok}});
    out.csv += format_double(double(i)) + "," +
               csv_row({res.sigma_q, res.sigma_t, res.sigma_h1, res.sigma_e, res.sigma_h2, res.sigma_eq,
                        res.sigma_union, res.consts.tau0, res.consts.eta, res.consts.p0, wt.b2, double(ok)});
  }
  out.report = {{"instance", "stopping"}, {"max_depth", depth}, {"runs", rows}, {"pass", out.pass}};
  return out;
}

inline CommandOutput whitney_cmd(const ExperimentConfig& c) {
  const Setup s = setup(c, false);
  const Region omega = build_region(c.whitney);
  for (const auto& cube : c.whitney.cubes)
    if (cube.dim() != s.mu.dim()) throw ConfigError("whitney.cubes: dimension does not match the measure");
  const auto w = whitney(omega, s.mu, s.k.d0, s.k.c1);
  const auto a = whitney_audit(omega, s.mu, w);
  CommandOutput out;
  out.pass = a.ok(s.k.d0);
  out.csv = "center,side,level,selected\n";
  std::vector<char> sel(w.cubes.size(), 0);
  for (auto j : w.selected_from) sel[j] = 1;
  for (std::size_t i = 0; i < w.cubes.size(); ++i) {
    std::string ctr;
    for (std::size_t k = 0; k < w.cubes[i].dim(); ++k) ctr += (k ? " " : "") + format_double(w.cubes[i].center[k]);
    out.csv += ctr + "," + format_double(w.cubes[i].side) + "," + std::to_string(w.levels[i]) + "," +
               std::to_string(int(sel[i])) + "\n";
  }
  const double threshold = 1.0 / (8.0 * static_cast<double>(s.k.d0));
  out.report = {{"instance", "whitney/" + omega.kind()},
                {"cubes", w.cubes.size()},
                {"selected", w.selected.size()},
                {"omega_mass", w.omega_mass},
                {"selected_mass", w.selected_mass},
                {"audit",
                 {{"interior", a.interior}, {"reach", a.reach}, {"max_neighbours", a.max_neighbours},
                  {"max_side_ratio", a.max_side_ratio}, {"max_atom_overlap", a.max_atom_overlap},
                  {"disjoint_interiors", a.disjoint_interiors}, {"atoms_covered", a.atoms_covered},
                  {"selected_nested", a.selected_nested}, {"selected_doubling", a.selected_doubling},
                  {"selected_small_boundary", a.selected_small_boundary},
                  {"selected_disjoint", a.selected_disjoint}, {"mass_fraction", a.mass_fraction},
                  {"mass_threshold", threshold}, {"mass_ok", a.mass_ok}}},
                {"pass", out.pass}};
  return out;
}

inline CommandOutput grid(const ExperimentConfig& c) {
  Rng rng(require_seed(c, "grid"));
  CommandOutput out;
  out.csv = "side,trials,min_ratio,max_ratio,max_containment,violations\n";
  json rows = json::array();
  for (double side : c.grid.sides) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, worst = 0.0;
    long bad = 0;
    for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
      const Cube qd(Point(d, 0.37 * side), side);
      for (long t = 0; t < c.grid.trials; ++t) {
        const Point w = random_shift(qd, rng);
        const auto g = random_grid(qd, w, 0);
        const double ratio = g.root.side / qd.side;
        // Q inside 0.7 Q*: sup-distance of centers plus l(Q)/2 against 0.35 l(Q*).
        const double reach = (sup_dist(qd.center, g.root.center) + qd.half()) / g.root.half();
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        worst = std::max(worst, reach);
        if (!(ratio > 8.0 && ratio <= 16.0) || reach > 0.7) ++bad;
      }
    }
    out.pass = out.pass && bad == 0;
    rows.push_back({{"side", side}, {"trials_per_dim", c.grid.trials}, {"min_ratio", lo}, {"max_ratio", hi},
                    {"max_containment", worst}, {"violations", bad}});
    out.csv += csv_row({side, double(c.grid.trials), lo, hi, worst, double(bad)});
  }
  out.report = {{"instance", "grid"}, {"alpha", 0.7}, {"rows", rows}, {"pass", out.pass}};
  return out;
}

inline CommandOutput weak(const ExperimentConfig& c) {
  const Setup s = setup(c, false);
  Rng rng(require_seed(c, "weak"));
  CommandOutput out;
  out.csv = "trial,a,s,lhs,rhs,pass\n";
  long failures = 0;
  double worst = 0.0;
  for (long t = 0; t < c.weak.trials; ++t) {
    std::vector<Complex> v(s.mu.size());
    const double spread = rng.uniform(0.5, 4.0);
    for (auto& x : v) x = Complex(std::pow(rng.uniform(), spread) * rng.uniform(0.0, 10.0));
    const Density f(std::move(v));
    for (const auto& [a, sv] : c.weak.pairs) {
      const auto r = weak_embedding_check(s.mu, f, s.q, a, sv);
      if (!r.pass) ++failures;
      if (r.rhs > 0.0) worst = std::max(worst, r.lhs / r.rhs);
      out.csv += csv_row({double(t), a, sv, r.lhs, r.rhs, double(r.pass)});
    }
  }
  out.pass = failures == 0;
  out.report = {{"instance", "weak"},
                {"trials", c.weak.trials},
                {"pairs", c.weak.pairs.size()},
                {"failures", failures},
                {"max_ratio", worst},
                {"pass", out.pass}};
  return out;
}

inline CommandOutput oracle_cmd(const ExperimentConfig& c) {
  const auto res = oracle::run_suite(require_seed(c, "oracle"), static_cast<std::size_t>(c.oracle.instances),
                                     static_cast<std::size_t>(c.oracle.max_atoms),
                                     static_cast<std::size_t>(c.oracle.points));
  CommandOutput out;
  out.csv = "name,instance,fast,oracle,rel_error,pass\n";
  std::map<std::string, double> worst;
  long failures = 0;
  for (const auto& r : res) {
    worst[r.name] = std::max(worst[r.name], r.rel_error);
    if (!r.pass) ++failures;
    out.csv += r.name + "," + std::to_string(r.instance) + "," + format_double(r.fast) + "," +
               format_double(r.oracle) + "," + format_double(r.rel_error) + "," + (r.pass ? "1" : "0") + "\n";
  }
  out.pass = failures == 0;
  out.report = {{"instance", "oracle"},
                {"comparisons", res.size()},
                {"failures", failures},
                {"max_rel_error", to_json(worst)},
                {"pass", out.pass}};
  return out;
}

}  // namespace commands

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"region", "cotlar", "corollary", "shell", "stopping",
                                              "whitney", "grid", "weak", "oracle"};
  return names;
}

inline CommandOutput run_command(const std::string& name, const ExperimentConfig& c) {
  if (name == "region") return commands::region(c);
  if (name == "cotlar") return commands::cotlar(c);
  if (name == "corollary") return commands::corollary(c);
  if (name == "shell") return commands::shell(c);
  if (name == "stopping") return commands::stopping(c);
  if (name == "whitney") return commands::whitney_cmd(c);
  if (name == "grid") return commands::grid(c);
  if (name == "weak") return commands::weak(c);
  if (name == "oracle") return commands::oracle_cmd(c);
  throw ConfigError("command: unknown command '" + name + "'");
}

/// Runs a command and writes <name>.json, <name>.csv, config.json and manifest.json into `out_dir`.
inline CommandOutput run_to_directory(const std::string& name, const ExperimentConfig& c, const std::string& out_dir) {
  CommandOutput res = run_command(name, c);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_text((dir / (name + ".json")).string(), res.report.dump(2) + "\n");
  write_text((dir / (name + ".csv")).string(), res.csv);
  write_text((dir / "config.json").string(), serialize(c));
  std::vector<std::string> files{name + ".json", name + ".csv", "config.json"};
  for (const auto& [file, text] : res.files) {
    write_text((dir / file).string(), text);
    files.push_back(file);
  }
  std::size_t dim = 1;
  try {
    dim = generate_measure(c.measure).dim();
  } catch (const Error&) {
  }
  nlohmann::json manifest{{"command", name},
                          {"pass", res.pass},
                          {"constants", to_json(DefaultConstants::for_dim(dim, c.params).as_map())},
                          {"files", files}};
  write_text((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  return res;
}

}  // namespace czlab

#endif  // CZLAB_COMMANDS_HPP
