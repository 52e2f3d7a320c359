#include <gtest/gtest.h>

#include "czlab/czlab.hpp"

using namespace czlab;

TEST(TestFunction, IndicatorAdmissible) {
  auto mu = uniform_cube(2, 1.0, 8);
  Cube q(Point{0.25, 0.25}, 0.5);
  auto b = indicator(q, mu);
  auto a = admissible_check(b, mu);
  EXPECT_TRUE(a.ok());
  EXPECT_DOUBLE_EQ(a.mass, 0.25);
  EXPECT_DOUBLE_EQ(a.p_norm, 0.25);
  EXPECT_EQ(a.outside, 0.0);
}

TEST(TestFunction, DetectsViolations) {
  auto mu = uniform_cube(1, 1.0, 4);
  Cube q(Point{0.25}, 0.5);
  TestFunction b{Density(std::vector<Complex>{1.0, 1.0, 0.5, 0.0}), q, 2.0, 1.0};
  EXPECT_FALSE(admissible_check(b, mu).supported);
  TestFunction c{Density(std::vector<Complex>{2.0, 1.0, 0.0, 0.0}), q, 2.0, 10.0};
  EXPECT_FALSE(admissible_check(c, mu).mean_ok);
  TestFunction e{Density(std::vector<Complex>{2.0, 0.0, 0.0, 0.0}), q, 2.0, 1.5};
  auto a = admissible_check(e, mu);
  EXPECT_TRUE(a.mean_ok);
  EXPECT_FALSE(a.norm_ok);
}

TEST(TestFunction, FamiliesAdmissibleAcrossSeeds) {
  auto cube = uniform_cube(2, 1.0, 16);
  auto cantor = corner_cantor(3);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(seed);
    const double p = rng.uniform(1.0, 4.0);
    const double b1 = rng.uniform(1.0, 10.0);
    Cube q(Point{rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7)}, rng.uniform(0.3, 0.6));
    for (const auto* mu : {&cube, &cantor}) {
      if (cube_mass(*mu, q) == 0.0) continue;
      auto pb = make_test(q, *mu, PerturbedFamily{p, b1, seed});
      auto ab = make_test(q, *mu, AdversarialBoundaryFamily{p, b1, seed});
      EXPECT_TRUE(admissible_check(pb, *mu).ok()) << seed;
      EXPECT_TRUE(admissible_check(ab, *mu).ok()) << seed;
    }
  }
}

TEST(TestFunction, PerturbedIsDeterministic) {
  auto mu = uniform_cube(1, 1.0, 32);
  Cube q(Point{0.5}, 1.0);
  auto a = make_test(q, mu, PerturbedFamily{2.0, 4.0, 7});
  auto b = make_test(q, mu, PerturbedFamily{2.0, 4.0, 7});
  auto c = make_test(q, mu, PerturbedFamily{2.0, 4.0, 8});
  EXPECT_EQ(a.values.values, b.values.values);
  EXPECT_NE(a.values.values, c.values.values);
}

TEST(TestFunction, PerturbedUsesTheNormBudget) {
  auto mu = uniform_cube(1, 1.0, 64);
  Cube q(Point{0.5}, 1.0);
  auto b = make_test(q, mu, PerturbedFamily{2.0, 4.0, 3});
  auto a = admissible_check(b, mu);
  EXPECT_GT(a.p_norm, 1.5 * a.mass);
  EXPECT_LE(a.p_norm, 4.0 * a.mass * (1 + 1e-12));
}

TEST(TestFunction, RejectsEmptyCubeAndBadConstants) {
  auto mu = uniform_cube(1, 1.0, 4);
  EXPECT_THROW(make_test(Cube(Point{5.0}, 1.0), mu, IndicatorFamily{}), Error);
  EXPECT_THROW(make_test(Cube(Point{0.5}, 1.0), mu, PerturbedFamily{2.0, 0.5, 1}), Error);
}

TEST(Polar, Decomposition) {
  auto mu = uniform_cube(1, 1.0, 4);
  Density b(std::vector<Complex>{Complex(0, 2), 0.0, -1.0, Complex(3, 4)});
  auto pl = polar(b, mu);
  ASSERT_EQ(pl.sigma.size(), 3u);
  EXPECT_DOUBLE_EQ(pl.sigma.weight(0), 0.5);
  EXPECT_DOUBLE_EQ(pl.sigma.weight(2), 1.25);
  EXPECT_EQ(pl.bhat[1], Complex(1.0));
  EXPECT_EQ(pl.source, (std::vector<std::size_t>{0, 2, 3}));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    EXPECT_NEAR(std::abs(pl.bhat[i]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(b[i] - std::abs(b[i]) * pl.bhat[i]), 0.0, 1e-15);
  }
}
