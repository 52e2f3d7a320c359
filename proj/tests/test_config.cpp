#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "czlab/commands.hpp"

using namespace czlab;
using nlohmann::json;

namespace {

std::string error_of(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

json minimal() { return {{"measure", {{"kind", "uniform-cube"}, {"dim", 1}, {"atoms_per_axis", 64}}}}; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, Defaults) {
  auto c = parse_config(minimal());
  EXPECT_EQ(c.kernel.name, "hilbert");
  EXPECT_DOUBLE_EQ(c.params.tau, 0.1);
  EXPECT_EQ(c.params.samples, 64);
  EXPECT_FALSE(c.params.seed);
  EXPECT_EQ(std::get<UniformCubeSpec>(c.measure).atoms_per_axis, 64);
}

TEST(Config, FieldPreciseErrors) {
  auto j = minimal();
  j["measure"]["atoms_per_axis"] = -3;
  EXPECT_NE(error_of(j).find("measure.atoms_per_axis"), std::string::npos);

  j = minimal();
  j["params"] = {{"tau", 1.5}};
  EXPECT_NE(error_of(j).find("params.tau"), std::string::npos);

  j = minimal();
  j["kernel"] = {{"name", "nope"}};
  EXPECT_NE(error_of(j).find("kernel.name"), std::string::npos);

  j = minimal();
  j["params"] = {{"bogus", 1}};
  EXPECT_NE(error_of(j).find("params.bogus: unknown field"), std::string::npos);

  j = minimal();
  j["test_function"] = {{"family", "perturbed"}};
  EXPECT_NE(error_of(j).find("test_function.seed"), std::string::npos);

  j = minimal();
  j["exponents"] = {{"p", 2.5}};
  EXPECT_NE(error_of(j).find("exponents.p"), std::string::npos);

  j = minimal();
  j["weak"] = {{"pairs", {{2.0, 1.0}}}};
  EXPECT_NE(error_of(j).find("weak.pairs[0]"), std::string::npos);

  j = minimal();
  j["whitney"] = {{"kind", "open-cube"}, {"cubes", {{{"center", {0.5}}}}}};
  EXPECT_NE(error_of(j).find("whitney.cubes[0].side"), std::string::npos);

  EXPECT_NE(error_of(json::object()).find("measure"), std::string::npos);
  EXPECT_NE(error_of(json{{"measure", {{"kind", "blob"}}}}).find("unknown measure kind"), std::string::npos);
}

TEST(Config, LoadReportsBadJson) {
  const auto path = std::filesystem::path(::testing::TempDir()) / "czlab_bad.json";
  {
    std::ofstream out(path);
    out << "{ \"measure\": ";
  }
  EXPECT_THROW(load_config(path.string()), ConfigError);
  EXPECT_THROW(load_config((path.string() + ".missing")), ConfigError);
  std::filesystem::remove(path);
}

TEST(Config, RoundTripIdempotent) {
  Rng rng(71);
  const std::vector<json> measures{
      {{"kind", "uniform-cube"}, {"dim", 2}, {"side", 2.0}, {"atoms_per_axis", 16}},
      {{"kind", "corner-cantor"}, {"level", 3}},
      {{"kind", "segment"}, {"dim", 2}, {"length", 1.0}, {"atoms", 32}}};
  for (int trial = 0; trial < 30; ++trial) {
    json j{{"measure", measures[rng.below(measures.size())]}};
    j["exponents"] = {{"p", rng.uniform(1.2, 2.0)}, {"q", rng.uniform(1.01, 2.0)}, {"n", rng.uniform(0.5, 2.0)}};
    j["params"] = {{"tau", rng.uniform(0.01, 0.9)}, {"power_a", rng.uniform(0.1, 1.1)}, {"seed", rng.below(1000)}};
    if (rng.below(2)) j["params"]["t"] = rng.uniform(1, 500);
    if (rng.below(2)) j["test_function"] = {{"family", "adversarial"}, {"b1", 3.0}, {"seed", rng.below(99)}};
    if (rng.below(2)) j["cube"] = {{"center", {0.5, 0.5}}, {"side", rng.uniform(0.1, 1.0)}};
    if (rng.below(2)) j["weak"] = {{"pairs", {{0.5, 1.0}, {1.0, 3.0}}}};
    const std::string once = serialize(parse_config(j));
    const std::string twice = serialize(parse_config(json::parse(once)));
    EXPECT_EQ(once, twice);
  }
}

TEST(Config, DefaultConstants) {
  auto one = DefaultConstants::for_dim(1);
  EXPECT_DOUBLE_EQ(one.b, 26.0);
  EXPECT_DOUBLE_EQ(one.t, 128.0);
  EXPECT_EQ(one.d0, 759);
  EXPECT_DOUBLE_EQ(one.cd, 4.0);
  auto three = DefaultConstants::for_dim(3);
  EXPECT_DOUBLE_EQ(three.b, 126.0);
  ParamsConfig p;
  p.b = 40.0;
  p.d0 = 5;
  auto over = DefaultConstants::for_dim(2, p);
  EXPECT_DOUBLE_EQ(over.b, 40.0);
  EXPECT_EQ(over.d0, 5);
  EXPECT_EQ(over.as_map().size(), 6u);
}

TEST(Config, Builders) {
  EXPECT_THROW(build_kernel({"cauchy"}, 1), ConfigError);
  KernelConfig riesz{"riesz"};
  riesz.component = 3;
  EXPECT_THROW(build_kernel(riesz, 2), ConfigError);
  auto c = parse_config(json{{"measure", {{"kind", "segment"}, {"dim", 2}, {"length", 2.0}, {"atoms", 8}}}});
  auto mu = generate_measure(c.measure);
  auto q = build_cube(c, mu);
  EXPECT_DOUBLE_EQ(q.side, 2.0);
  EXPECT_DOUBLE_EQ(q.center[0], 1.0);
  EXPECT_DOUBLE_EQ(q.center[1], 0.0);
  c.cube = Cube(Point{0.5}, 1.0);
  EXPECT_THROW(build_cube(c, mu), ConfigError);
}

TEST(Commands, SeedRequiredForRandomizedCommands) {
  auto c = parse_config(minimal());
  EXPECT_THROW(run_command("stopping", c), ConfigError);
  EXPECT_THROW(run_command("nope", c), ConfigError);
}

TEST(Commands, RegionPasses) {
  auto out = run_command("region", parse_config(minimal()));
  EXPECT_TRUE(out.pass);
  EXPECT_EQ(out.csv.substr(0, 4), "p,q,");
}

TEST(Commands, DirectoryOutputsAreDeterministic) {
  auto j = minimal();
  j["params"] = {{"seed", 3}, {"samples", 8}};
  const auto c = parse_config(j);
  const auto base = std::filesystem::path(::testing::TempDir()) / "czlab_cmd";
  std::filesystem::remove_all(base);
  set_threads(1);
  run_to_directory("cotlar", c, (base / "a").string());
  set_threads(3);
  run_to_directory("cotlar", c, (base / "b").string());
  set_threads(0);
  for (const char* f : {"cotlar.json", "cotlar.csv", "config.json", "manifest.json", "test_function.csv"}) {
    EXPECT_FALSE(slurp(base / "a" / f).empty()) << f;
    EXPECT_EQ(slurp(base / "a" / f), slurp(base / "b" / f)) << f;
  }
  auto manifest = json::parse(slurp(base / "a" / "manifest.json"));
  for (const char* k : {"b", "t", "C1", "D0", "R", "Cd"}) EXPECT_TRUE(manifest["constants"].contains(k)) << k;
  // The written config reparses to the same text.
  EXPECT_EQ(serialize(load_config((base / "a" / "config.json").string())), slurp(base / "a" / "config.json"));
  std::filesystem::remove_all(base);
}
