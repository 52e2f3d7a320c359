#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "czlab/czlab.hpp"
#include "czlab/oracle.hpp"

using namespace czlab;

namespace {

DiscreteMeasure random_cloud(Rng& rng, std::size_t d, std::size_t atoms) {
  DiscreteMeasure mu(d, 1e-3);
  Point p(d);
  for (std::size_t i = 0; i < atoms; ++i) {
    for (auto& c : p) c = rng.uniform();
    mu.add_atom(p, rng.uniform(0.1, 1.0));
  }
  return mu;
}

Density random_density(Rng& rng, std::size_t size) {
  std::vector<Complex> v(size);
  for (auto& z : v) z = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return Density(std::move(v));
}

}  // namespace

TEST(Measure, RejectsBadWeights) {
  EXPECT_THROW(DiscreteMeasure(1, 0.1, {0.0}, {0.0}), Error);
  EXPECT_THROW(DiscreteMeasure(1, 0.1, {0.0, 1.0}, {1.0}), Error);
  EXPECT_THROW(DiscreteMeasure(1, 0.0), Error);
  DiscreteMeasure mu(2, 0.1);
  EXPECT_THROW(mu.add_atom(Point{1.0}, 1.0), Error);
}

TEST(Measure, UniformCubeLayout) {
  auto mu = uniform_cube(2, 1.0, 4);
  EXPECT_EQ(mu.size(), 16u);
  EXPECT_DOUBLE_EQ(mu.resolution(), 0.25);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 1.0);
  EXPECT_DOUBLE_EQ(mu.point(0)[0], 0.125);
  EXPECT_DOUBLE_EQ(mu.point(5)[1], 0.375);
  EXPECT_THROW(uniform_cube(1, 1.0, -3), Error);
}

TEST(Measure, CornerCantorLevels) {
  for (int L = 0; L <= 4; ++L) {
    auto mu = corner_cantor(L);
    EXPECT_EQ(mu.size(), std::size_t{1} << (2 * L));
    EXPECT_NEAR(mu.total_mass(), 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(mu.resolution(), std::pow(0.25, L));
  }
  auto mu = corner_cantor(1);
  EXPECT_DOUBLE_EQ(mu.point(3)[0], 0.875);
  EXPECT_DOUBLE_EQ(mu.point(3)[1], 0.875);
}

TEST(Measure, SegmentIsOneDimensional) {
  auto mu = segment(2, 1.0, 8);
  EXPECT_EQ(mu.size(), 8u);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 1.0);
  EXPECT_NEAR(degree_constant(mu, 1.0, mu.resolution()), 3.0, 1e-12);
}

TEST(Measure, DegreeConstantHandValue) {
  // Atoms 1/8, 3/8, 5/8, 7/8 of mass 1/4: three atoms fit in a radius-1/4 ball.
  auto mu = uniform_cube(1, 1.0, 4);
  EXPECT_DOUBLE_EQ(degree_constant(mu, 1.0, 0.25), 3.0);
}

TEST(Measure, WeakNormHandValue) {
  auto mu = uniform_cube(1, 1.0, 4);
  Density f(std::vector<Complex>{1.0, 2.0, 3.0, 4.0});
  Cube q(Point{0.5}, 1.0);
  EXPECT_DOUBLE_EQ(weak_norm(mu, f, q, 1.0), 1.5);
  EXPECT_DOUBLE_EQ(weak_norm(mu, f, q, 2.0), std::max({4 * 0.5, 3 * std::sqrt(0.5), 2 * std::sqrt(0.75), 1.0}));
  // Only the atom at 7/8 lies in the right quarter.
  EXPECT_DOUBLE_EQ(weak_norm(mu, f, Cube(Point{0.875}, 0.25), 1.0), 1.0);
}

TEST(Measure, MassQueriesAgreeWithRestriction) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = random_cloud(rng, 2, 60);
    Cube q(Point{rng.uniform(), rng.uniform()}, rng.uniform(0.1, 0.8));
    EXPECT_NEAR(cube_mass(mu, q), restrict(mu, q).total_mass(), 1e-12);
    Point x{rng.uniform(), rng.uniform()};
    const double r = rng.uniform(0.05, 0.5);
    double brute = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (euclid(x, mu.point(i)) <= r) brute += mu.weight(i);
    EXPECT_NEAR(ball_mass(mu, x, r), brute, 1e-12);
  }
}

TEST(Measure, DegreeConstantMatchesOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = 1 + rng.below(2);
    auto mu = random_cloud(rng, d, 40);
    const double n = d == 1 ? 1.0 : rng.uniform(0.5, 2.0);
    const double h = rng.uniform(0.01, 0.1);
    const double fast = degree_constant(mu, n, h);
    EXPECT_LE(oracle::relative_error(fast, oracle::degree_constant(mu, n, h)), 1e-12);
  }
}

TEST(Measure, WeakNormMatchesOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    auto mu = random_cloud(rng, 2, 50);
    auto f = random_density(rng, mu.size());
    Cube q(Point{0.5, 0.5}, rng.uniform(0.3, 1.0));
    const double s = rng.uniform(0.5, 4.0);
    EXPECT_LE(oracle::relative_error(weak_norm(mu, f, q, s), oracle::weak_norm(mu, f, q, s)), 1e-9);
  }
}

TEST(Measure, DegreeConstantTranslationInvariant) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto mu = random_cloud(rng, 2, 30);
    Point off{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double a = degree_constant(mu, 2.0, 0.05);
    const double b = degree_constant(mu.translated(off), 2.0, 0.05);
    EXPECT_NEAR(a, b, 1e-9 * a);
  }
}

TEST(Measure, WeakNormHomogeneous) {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    auto mu = random_cloud(rng, 1, 30);
    auto f = random_density(rng, mu.size());
    Cube q(Point{0.5}, 1.0);
    const double lam = rng.uniform(0.1, 10.0);
    const double s = rng.uniform(1.0, 3.0);
    Density g = f;
    for (auto& v : g.values) v *= lam;
    EXPECT_NEAR(weak_norm(mu, g, q, s), lam * weak_norm(mu, f, q, s), 1e-12 * lam);
    // Scaling the measure by c scales the weak norm by c^(1/s).
    EXPECT_NEAR(weak_norm(mu.scaled(lam), f, q, s), std::pow(lam, 1 / s) * weak_norm(mu, f, q, s), 1e-9);
  }
}

TEST(Measure, IntegrateAndSubset) {
  auto mu = uniform_cube(1, 1.0, 8);
  auto f = Density::from(mu, [](PointView x) { return Complex(x[0], 0.0); });
  EXPECT_NEAR(integrate(mu, f).real(), 0.5, 1e-14);
  Cube left(Point{0.25}, 0.5);
  EXPECT_NEAR(integrate(mu, f, left).real(), 0.125, 1e-14);
  auto idx = indices_in(mu, [&](PointView y) { return left.contains(y); });
  EXPECT_EQ(idx.size(), 4u);
  EXPECT_EQ(subset(f, idx).size(), 4u);
}

TEST(Measure, AtomFileRoundTrip) {
  const std::string path = ::testing::TempDir() + "czlab_atoms.csv";
  {
    std::ofstream out(path);
    out << "# x,y,w\n0,0,0.5\n0.25,0,0.25\n\n1,1,0.25  # tail\n";
  }
  auto mu = load_atom_file(path);
  EXPECT_EQ(mu.dim(), 2u);
  EXPECT_EQ(mu.size(), 3u);
  EXPECT_DOUBLE_EQ(mu.resolution(), 0.25);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 1.0);
  {
    std::ofstream out(path);
    out << "0,0,1\n0,x,1\n";
  }
  try {
    load_atom_file(path);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
  std::remove(path.c_str());
}

TEST(Measure, GenerateDispatch) {
  EXPECT_EQ(generate_measure(CornerCantorSpec{2}).size(), 16u);
  EXPECT_EQ(generate_measure(UniformCubeSpec{2, 1.0, 3}).size(), 9u);
  EXPECT_EQ(generate_measure(SegmentSpec{3, 2.0, 5}).dim(), 3u);
}

TEST(Rng, Deterministic) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(c.below(5), 5u);
  }
}

TEST(Accumulator, CompensatedSum) {
  Accumulator<double> acc(true);
  acc.add(1.0);
  for (int i = 0; i < 1000; ++i) acc.add(1e-16);
  EXPECT_NEAR(acc.value(), 1.0 + 1e-13, 1e-16);
}
