#ifndef CZLAB_CONFIG_HPP
#define CZLAB_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/measure.hpp"
#include "czlab/operators.hpp"
#include "czlab/tb.hpp"
#include "czlab/testfn.hpp"
#include "czlab/whitney.hpp"
#include "json.hpp"

namespace czlab {

/// Invalid experiment configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct KernelConfig {
  std::string name = "hilbert";
  std::size_t component = 0;  // riesz, power-law
  double beta = 1.0;          // power-law
  double n = 1.0;             // riesz, power-law
  double alpha = 1.0;         // power-law
  double c = 1.0;             // power-law
};

struct FamilyConfig {
  std::string family = "indicator";  // indicator | perturbed | adversarial
  double p = 2.0;
  double b1 = 1.0;
  std::optional<std::uint64_t> seed;
};

struct ParamsConfig {
  double delta_factor = 4.0;  ///< delta = delta_factor * h
  double tau = 0.1;
  double power_a = 1.0;
  double s = 0.5;
  std::optional<double> t;
  std::optional<double> b;
  std::optional<double> c1;
  std::optional<long> d0;
  std::optional<std::uint64_t> seed;
  long samples = 64;
};

struct RegionConfig {
  std::vector<double> p_values{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<double> q_values{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<double> n_values{0.5, 1.0, 1.5, 2.0};
};

struct ShellConfig {
  std::optional<Cube> r;
  std::optional<Point> x;
  std::vector<double> u_values;  ///< empty: spread across and around the window
  std::optional<int> depth;
};

struct StoppingConfig {
  long instances = 10;
  std::optional<int> max_depth;
};

struct WhitneyConfig {
  std::string kind = "open-cube";  // open-cube | complement-of-cube | union-of-open-cubes
  std::vector<Cube> cubes;         ///< one cube except for unions
};

struct GridConfig {
  long trials = 1000;
  std::vector<double> sides{0.3, 1.0, 1.7, 5.0, 64.0};
};

struct WeakConfig {
  long trials = 100;
  std::vector<std::pair<double, double>> pairs{{1.0, 2.0}, {1.5, 2.0}, {1.0, 4.0}};
};

struct OracleConfig {
  long instances = 50;
  long max_atoms = 500;
  long points = 4;
};

struct ExperimentConfig {
  MeasureSpec measure = UniformCubeSpec{1, 1.0, 256};
  KernelConfig kernel;
  std::optional<Cube> cube;
  ExponentConfig exponents;
  FamilyConfig test_function;
  FamilyConfig provider;
  ParamsConfig params;
  RegionConfig region;
  ShellConfig shell;
  StoppingConfig stopping;
  WhitneyConfig whitney;
  GridConfig grid;
  WeakConfig weak;
  OracleConfig oracle;
};

namespace detail {

/// Typed access to one JSON object, rejecting unknown keys.
class Fields {
 public:
  Fields(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "must be an object");
  }

  ~Fields() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(it.key(), "unknown field");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const std::string w = key.empty() ? path_ : where(key);
    throw ConfigError((w.empty() ? std::string("config") : w) + ": " + msg);
  }

  const nlohmann::json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_number()) fail(key, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  double number_in(const std::string& key, double fallback, double lo, double hi, bool lo_open, bool hi_open) {
    const double x = number(key, fallback);
    if ((lo_open ? !(x > lo) : !(x >= lo)) || (hi_open ? !(x < hi) : !(x <= hi))) {
      std::ostringstream os;
      os << "must lie in " << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]") << ", got " << x;
      fail(key, os.str());
    }
    return x;
  }

  double positive(const std::string& key, double fallback) {
    const double x = number(key, fallback);
    if (!(x > 0.0)) fail(key, "must be positive");
    return x;
  }

  long integer(const std::string& key, long fallback, long lo = 0) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_number_integer()) fail(key, "must be an integer");
    const long x = v.get<long>();
    if (x < lo) fail(key, "must be at least " + std::to_string(lo));
    return x;
  }

  std::uint64_t seed(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
      fail(key, "must be a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_array()) fail(key, "must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(key + "[" + std::to_string(i) + "]", "must be a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline Cube parse_cube(const nlohmann::json& j, const std::string& path) {
  Fields f(j, path);
  if (!f.has("center")) f.fail("center", "required");
  if (!f.has("side")) f.fail("side", "required");
  auto c = f.numbers("center", {});
  if (c.empty()) f.fail("center", "must be nonempty");
  const double side = f.number("side", 0.0);
  if (!(side >= 0.0)) f.fail("side", "must be nonnegative");
  return Cube(std::move(c), side);
}

inline nlohmann::json cube_json(const Cube& q) { return {{"center", q.center}, {"side", q.side}}; }

inline FamilyConfig parse_family(const nlohmann::json& j, const std::string& path) {
  Fields f(j, path);
  FamilyConfig out;
  out.family = f.text("family", "indicator");
  if (out.family != "indicator" && out.family != "perturbed" && out.family != "adversarial")
    f.fail("family", "must be indicator, perturbed or adversarial");
  out.p = f.number_in("p", 2.0, 1.0, 2.0, true, false);
  out.b1 = f.number("b1", out.family == "indicator" ? 1.0 : 4.0);
  if (!(out.b1 >= 1.0)) f.fail("b1", "must be at least 1");
  if (f.has("seed")) out.seed = f.seed("seed");
  if (out.family != "indicator" && !out.seed) f.fail("seed", "required for randomized family " + out.family);
  return out;
}

inline nlohmann::json family_json(const FamilyConfig& c) {
  nlohmann::json j{{"family", c.family}, {"p", c.p}, {"b1", c.b1}};
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

inline MeasureSpec parse_measure(const nlohmann::json& j) {
  Fields f(j, "measure");
  const std::string kind = f.text("kind", "");
  if (kind == "uniform-cube") {
    UniformCubeSpec s;
    s.dim = static_cast<std::size_t>(f.integer("dim", 1, 1));
    s.side = f.positive("side", 1.0);
    s.atoms_per_axis = f.integer("atoms_per_axis", 256, 1);
    return s;
  }
  if (kind == "corner-cantor") return CornerCantorSpec{static_cast<int>(f.integer("level", 3, 0))};
  if (kind == "segment") {
    SegmentSpec s;
    s.dim = static_cast<std::size_t>(f.integer("dim", 2, 1));
    s.length = f.positive("length", 1.0);
    s.atoms = f.integer("atoms", 16, 1);
    return s;
  }
  if (kind == "atom-file") {
    AtomFileSpec s;
    s.path = f.text("path", "");
    if (s.path.empty()) f.fail("path", "required");
    s.resolution = f.number("resolution", 0.0);
    return s;
  }
  f.fail("kind", kind.empty() ? "required" : "unknown measure kind '" + kind + "'");
}

inline nlohmann::json measure_json(const MeasureSpec& m) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, UniformCubeSpec>)
          return {{"kind", "uniform-cube"}, {"dim", s.dim}, {"side", s.side}, {"atoms_per_axis", s.atoms_per_axis}};
        else if constexpr (std::is_same_v<S, CornerCantorSpec>)
          return {{"kind", "corner-cantor"}, {"level", s.level}};
        else if constexpr (std::is_same_v<S, SegmentSpec>)
          return {{"kind", "segment"}, {"dim", s.dim}, {"length", s.length}, {"atoms", s.atoms}};
        else
          return {{"kind", "atom-file"}, {"path", s.path}, {"resolution", s.resolution}};
      },
      m);
}

inline const std::set<std::string>& kernel_names() {
  static const std::set<std::string> names{"hilbert", "cauchy", "cauchy-re", "cauchy-im",
                                           "riesz", "power-law", "symmetric"};
  return names;
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using detail::Fields;
  ExperimentConfig c;
  Fields top(j, "");
  if (!top.has("measure")) top.fail("measure", "required");
  c.measure = detail::parse_measure(top.raw("measure"));

  if (top.has("kernel")) {
    Fields f(top.raw("kernel"), "kernel");
    c.kernel.name = f.text("name", "hilbert");
    if (!detail::kernel_names().count(c.kernel.name)) f.fail("name", "unknown kernel '" + c.kernel.name + "'");
    c.kernel.component = static_cast<std::size_t>(f.integer("component", 0, 0));
    c.kernel.beta = f.positive("beta", 1.0);
    c.kernel.n = f.positive("n", 1.0);
    c.kernel.alpha = f.number_in("alpha", 1.0, 0.0, 1.0, true, false);
    c.kernel.c = f.positive("C", 1.0);
  }
  if (top.has("cube")) c.cube = detail::parse_cube(top.raw("cube"), "cube");

  if (top.has("exponents")) {
    Fields f(top.raw("exponents"), "exponents");
    c.exponents.p = f.number_in("p", 2.0, 1.0, 2.0, true, false);
    c.exponents.q = f.number_in("q", 2.0, 1.0, 2.0, true, false);
    c.exponents.n = f.positive("n", 1.0);
  }
  if (top.has("test_function")) c.test_function = detail::parse_family(top.raw("test_function"), "test_function");
  if (top.has("provider")) c.provider = detail::parse_family(top.raw("provider"), "provider");

  if (top.has("params")) {
    Fields f(top.raw("params"), "params");
    auto& p = c.params;
    p.delta_factor = f.number("delta_factor", 4.0);
    if (!(p.delta_factor >= 1.0)) f.fail("delta_factor", "must be at least 1 (delta >= h)");
    p.tau = f.number_in("tau", 0.1, 0.0, 1.0, true, true);
    p.power_a = f.positive("power_a", 1.0);
    p.s = f.positive("s", 0.5);
    if (f.has("t")) p.t = f.positive("t", 1.0);
    if (f.has("b")) {
      p.b = f.number("b", 2.0);
      if (!(*p.b > 1.0)) f.fail("b", "must exceed 1");
    }
    if (f.has("C1")) p.c1 = f.positive("C1", 1.0);
    if (f.has("D0")) p.d0 = f.integer("D0", 1, 1);
    if (f.has("seed")) p.seed = f.seed("seed");
    p.samples = f.integer("samples", 64, 1);
  }
  if (c.params.power_a >= c.exponents.p) throw ConfigError("params.power_a: must be below exponents.p");

  if (top.has("region")) {
    Fields f(top.raw("region"), "region");
    c.region.p_values = f.numbers("p_values", c.region.p_values);
    c.region.q_values = f.numbers("q_values", c.region.q_values);
    c.region.n_values = f.numbers("n_values", c.region.n_values);
    for (double v : c.region.p_values)
      if (!(v > 1.0 && v <= 2.0)) f.fail("p_values", "entries must lie in (1, 2]");
    for (double v : c.region.q_values)
      if (!(v > 1.0 && v <= 2.0)) f.fail("q_values", "entries must lie in (1, 2]");
    for (double v : c.region.n_values)
      if (!(v > 0.0)) f.fail("n_values", "entries must be positive");
  }
  if (top.has("shell")) {
    Fields f(top.raw("shell"), "shell");
    if (f.has("R")) c.shell.r = detail::parse_cube(f.raw("R"), "shell.R");
    if (f.has("x")) c.shell.x = f.numbers("x", {});
    c.shell.u_values = f.numbers("u_values", {});
    if (f.has("depth")) c.shell.depth = static_cast<int>(f.integer("depth", 0, 0));
  }
  if (top.has("stopping")) {
    Fields f(top.raw("stopping"), "stopping");
    c.stopping.instances = f.integer("instances", 10, 1);
    if (f.has("max_depth")) c.stopping.max_depth = static_cast<int>(f.integer("max_depth", 0, 0));
    if (c.stopping.max_depth && *c.stopping.max_depth >= 60) f.fail("max_depth", "must be below 60");
  }
  if (top.has("whitney")) {
    Fields f(top.raw("whitney"), "whitney");
    c.whitney.kind = f.text("kind", "open-cube");
    if (c.whitney.kind != "open-cube" && c.whitney.kind != "complement-of-cube" &&
        c.whitney.kind != "union-of-open-cubes")
      f.fail("kind", "must be open-cube, complement-of-cube or union-of-open-cubes");
    if (!f.has("cubes")) f.fail("cubes", "required");
    const auto& arr = f.raw("cubes");
    if (!arr.is_array() || arr.empty()) f.fail("cubes", "must be a nonempty array of cubes");
    for (std::size_t i = 0; i < arr.size(); ++i)
      c.whitney.cubes.push_back(detail::parse_cube(arr[i], "whitney.cubes[" + std::to_string(i) + "]"));
    if (c.whitney.kind != "union-of-open-cubes" && c.whitney.cubes.size() != 1)
      f.fail("cubes", "must hold exactly one cube for " + c.whitney.kind);
  }
  if (top.has("grid")) {
    Fields f(top.raw("grid"), "grid");
    c.grid.trials = f.integer("trials", 1000, 1);
    c.grid.sides = f.numbers("sides", c.grid.sides);
    for (double v : c.grid.sides)
      if (!(v > 0.0)) f.fail("sides", "entries must be positive");
  }
  if (top.has("weak")) {
    Fields f(top.raw("weak"), "weak");
    c.weak.trials = f.integer("trials", 100, 1);
    if (f.has("pairs")) {
      const auto& arr = f.raw("pairs");
      if (!arr.is_array()) f.fail("pairs", "must be an array of [a, s] pairs");
      c.weak.pairs.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& e = arr[i];
        const std::string key = "pairs[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
          f.fail(key, "must be a pair of numbers [a, s]");
        const double a = e[0].get<double>(), s = e[1].get<double>();
        if (!(a > 0.0 && s > a)) f.fail(key, "need s > a > 0");
        c.weak.pairs.push_back({a, s});
      }
    }
  }
  if (top.has("oracle")) {
    Fields f(top.raw("oracle"), "oracle");
    c.oracle.instances = f.integer("instances", 50, 1);
    c.oracle.max_atoms = f.integer("max_atoms", 500, 20);
    c.oracle.points = f.integer("points", 4, 1);
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: invalid JSON in " + path + ": " + e.what());
  }
  return parse_config(j);
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  using detail::cube_json;
  nlohmann::json j;
  j["measure"] = detail::measure_json(c.measure);
  j["kernel"] = {{"name", c.kernel.name}, {"component", c.kernel.component}, {"beta", c.kernel.beta},
                 {"n", c.kernel.n}, {"alpha", c.kernel.alpha}, {"C", c.kernel.c}};
  if (c.cube) j["cube"] = cube_json(*c.cube);
  j["exponents"] = {{"p", c.exponents.p}, {"q", c.exponents.q}, {"n", c.exponents.n}};
  j["test_function"] = detail::family_json(c.test_function);
  j["provider"] = detail::family_json(c.provider);
  auto& p = j["params"];
  p = {{"delta_factor", c.params.delta_factor}, {"tau", c.params.tau}, {"power_a", c.params.power_a},
       {"s", c.params.s}, {"samples", c.params.samples}};
  if (c.params.t) p["t"] = *c.params.t;
  if (c.params.b) p["b"] = *c.params.b;
  if (c.params.c1) p["C1"] = *c.params.c1;
  if (c.params.d0) p["D0"] = *c.params.d0;
  if (c.params.seed) p["seed"] = *c.params.seed;
  j["region"] = {{"p_values", c.region.p_values}, {"q_values", c.region.q_values}, {"n_values", c.region.n_values}};
  auto& sh = j["shell"];
  sh = {{"u_values", c.shell.u_values}};
  if (c.shell.r) sh["R"] = cube_json(*c.shell.r);
  if (c.shell.x) sh["x"] = *c.shell.x;
  if (c.shell.depth) sh["depth"] = *c.shell.depth;
  j["stopping"] = {{"instances", c.stopping.instances}};
  if (c.stopping.max_depth) j["stopping"]["max_depth"] = *c.stopping.max_depth;
  if (!c.whitney.cubes.empty()) {
    nlohmann::json cubes = nlohmann::json::array();
    for (const auto& q : c.whitney.cubes) cubes.push_back(cube_json(q));
    j["whitney"] = {{"kind", c.whitney.kind}, {"cubes", cubes}};
  }
  j["grid"] = {{"trials", c.grid.trials}, {"sides", c.grid.sides}};
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, s] : c.weak.pairs) pairs.push_back({a, s});
  j["weak"] = {{"trials", c.weak.trials}, {"pairs", pairs}};
  j["oracle"] = {{"instances", c.oracle.instances}, {"max_atoms", c.oracle.max_atoms}, {"points", c.oracle.points}};
  return j;
}

inline std::string serialize(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Builders

/// Constants that the analysis only requires to be "large enough depending on d".
struct DefaultConstants {
  double b = 26.0;
  double t = 128.0;
  double c1 = 128.0;
  long d0 = 759;
  double r = kWhitneyReach;
  double cd = 4.0;

  static DefaultConstants for_dim(std::size_t d, const ParamsConfig& p = {}) {
    DefaultConstants c;
    const double dd = static_cast<double>(d);
    c.b = p.b.value_or(std::max(26.0, std::pow(5.0, dd) + 1.0));
    c.t = p.t.value_or(128.0 * dd);
    c.c1 = p.c1.value_or(128.0 * dd);
    c.d0 = p.d0.value_or(whitney_overlap_bound(d));
    c.cd = 4.0 * std::sqrt(dd);
    return c;
  }

  std::map<std::string, double> as_map() const {
    return {{"b", b}, {"t", t}, {"C1", c1}, {"D0", static_cast<double>(d0)}, {"R", r}, {"Cd", cd}};
  }
};

inline KernelSpec build_kernel(const KernelConfig& k, std::size_t dim) {
  KernelSpec out;
  if (k.name == "hilbert") out = kernels::hilbert();
  else if (k.name == "cauchy") out = kernels::cauchy();
  else if (k.name == "cauchy-re") out = kernels::cauchy_re();
  else if (k.name == "cauchy-im") out = kernels::cauchy_im();
  else if (k.name == "riesz") {
    if (k.component >= dim) throw ConfigError("kernel.component: must be below the measure dimension");
    out = kernels::riesz(k.component, k.n, dim);
  } else if (k.name == "power-law") {
    if (k.component >= dim) throw ConfigError("kernel.component: must be below the measure dimension");
    out = kernels::power_law(k.component, k.beta, k.n, k.alpha, k.c, dim);
  } else if (k.name == "symmetric") out = kernels::symmetric_diagnostic();
  else throw ConfigError("kernel.name: unknown kernel '" + k.name + "'");
  if (out.dim != 0 && out.dim != dim)
    throw ConfigError("kernel.name: " + k.name + " needs dimension " + std::to_string(out.dim));
  return out;
}

/// The cube Q: the configured one, or the natural cube of the generator.
inline Cube build_cube(const ExperimentConfig& c, const DiscreteMeasure& mu) {
  if (c.cube) {
    if (c.cube->dim() != mu.dim()) throw ConfigError("cube.center: dimension does not match the measure");
    if (!(c.cube->side > 0.0)) throw ConfigError("cube.side: must be positive");
    return *c.cube;
  }
  if (const auto* u = std::get_if<UniformCubeSpec>(&c.measure)) return Cube(Point(u->dim, 0.5 * u->side), u->side);
  if (std::holds_alternative<CornerCantorSpec>(c.measure)) return Cube(Point{0.5, 0.5}, 1.0);
  if (const auto* s = std::get_if<SegmentSpec>(&c.measure)) {
    Point ctr(s->dim, 0.0);
    ctr[0] = 0.5 * s->length;
    return Cube(ctr, s->length);
  }
  Point lo(mu.dim(), std::numeric_limits<double>::infinity()), hi(mu.dim(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t k = 0; k < mu.dim(); ++k) {
      lo[k] = std::min(lo[k], mu.point(i)[k]);
      hi[k] = std::max(hi[k], mu.point(i)[k]);
    }
  double side = mu.resolution();
  Point ctr(mu.dim());
  for (std::size_t k = 0; k < mu.dim(); ++k) {
    side = std::max(side, hi[k] - lo[k]);
    ctr[k] = 0.5 * (lo[k] + hi[k]);
  }
  return Cube(ctr, side * (1.0 + 1e-9));
}

inline TestFamily build_family(const FamilyConfig& f, std::uint64_t salt = 0) {
  if (f.family == "perturbed") return PerturbedFamily{f.p, f.b1, f.seed.value_or(0) + salt};
  if (f.family == "adversarial") return AdversarialBoundaryFamily{f.p, f.b1, f.seed.value_or(0) + salt};
  return IndicatorFamily{};
}

/// Test function on Q from a family config; indicators carry the configured p and B1.
inline TestFunction build_test(const FamilyConfig& f, const Cube& q, const DiscreteMeasure& mu,
                               std::uint64_t salt = 0) {
  if (f.family == "indicator") return indicator(q, mu, f.p, f.b1);
  return make_test(q, mu, build_family(f, salt));
}

inline Region build_region(const WhitneyConfig& w) {
  if (w.cubes.empty()) throw ConfigError("whitney.cubes: required");
  if (w.kind == "open-cube") return Region(OpenCubeRegion{w.cubes.front()});
  if (w.kind == "complement-of-cube") return Region(ComplementOfCubeRegion{w.cubes.front()});
  return Region(UnionOfOpenCubesRegion{w.cubes});
}

}  // namespace czlab

#endif  // CZLAB_CONFIG_HPP
