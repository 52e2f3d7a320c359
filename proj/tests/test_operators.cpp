#include <gtest/gtest.h>

#include "czlab/czlab.hpp"
#include "czlab/oracle.hpp"

using namespace czlab;

namespace {

DiscreteMeasure random_cloud(Rng& rng, std::size_t d, std::size_t atoms, double h) {
  DiscreteMeasure mu(d, h);
  Point p(d);
  for (std::size_t i = 0; i < atoms; ++i) {
    for (auto& c : p) c = rng.uniform();
    mu.add_atom(p, rng.uniform(0.1, 1.0) / static_cast<double>(atoms));
  }
  return mu;
}

Density random_density(Rng& rng, std::size_t size) {
  std::vector<Complex> v(size);
  for (auto& z : v) z = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return Density(std::move(v));
}

}  // namespace

TEST(Operators, HilbertHandValue) {
  DiscreteMeasure mu(1, 0.5, {0.0, 1.0, 3.0}, {1.0, 1.0, 1.0});
  auto f = Density::constant(mu, 1.0);
  auto k = kernels::hilbert();
  Point x{0.0};
  EXPECT_DOUBLE_EQ(t_eps(mu, k, f, x, 0.5).real(), -4.0 / 3.0);
  EXPECT_DOUBLE_EQ(t_eps(mu, k, f, x, 1.0).real(), -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(t_eps(mu, k, f, x, 3.0).real(), 0.0);
  auto m = t_max_detail(mu, k, f, x, 0.5);
  EXPECT_DOUBLE_EQ(m.value, 4.0 / 3.0);
  EXPECT_GT(m.eps, 0.5);
  EXPECT_LT(m.eps, 1.0);
  EXPECT_THROW(t_eps(mu, k, f, x, 0.1), Error);
}

TEST(Operators, KernelDimensionChecked) {
  auto mu = uniform_cube(1, 1.0, 4);
  auto f = Density::constant(mu, 1.0);
  EXPECT_THROW(t_eps(mu, kernels::cauchy(), f, Point{0.0}, 0.25), Error);
}

TEST(Operators, TMaxMatchesOracle) {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + rng.below(2);
    auto mu = random_cloud(rng, d, 40, 1e-3);
    auto f = random_density(rng, mu.size());
    auto k = d == 1 ? kernels::hilbert() : kernels::cauchy();
    Point x(d);
    for (auto& c : x) c = rng.uniform();
    const double delta = rng.uniform(1e-3, 0.2);
    EXPECT_LE(oracle::relative_error(t_max(mu, k, f, x, delta), oracle::t_max(mu, k, f, x, delta)), 1e-9);
  }
}

TEST(Operators, TMaxDominatesEveryTruncation) {
  Rng rng(62);
  auto mu = random_cloud(rng, 2, 50, 1e-3);
  auto f = random_density(rng, mu.size());
  auto k = kernels::cauchy();
  Point x{0.4, 0.6};
  const double top = t_max(mu, k, f, x, 0.01);
  for (double e : oracle::log_grid(0.0101, 2.0, 200)) EXPECT_LE(std::abs(t_eps(mu, k, f, x, e)), top * (1 + 1e-12));
}

TEST(Operators, TMaxHomogeneousAndTranslationInvariant) {
  Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    auto mu = random_cloud(rng, 2, 30, 1e-3);
    auto f = random_density(rng, mu.size());
    auto k = kernels::cauchy();
    Point x{rng.uniform(), rng.uniform()};
    const double base = t_max(mu, k, f, x, 0.02);
    const Complex lam(rng.uniform(-3, 3), rng.uniform(-3, 3));
    Density g = f;
    for (auto& v : g.values) v *= lam;
    EXPECT_NEAR(t_max(mu, k, g, x, 0.02), std::abs(lam) * base, 1e-10 * (1 + base));
    Point off{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Point xs{x[0] + off[0], x[1] + off[1]};
    EXPECT_NEAR(t_max(mu.translated(off), k, f, xs, 0.02), base, 1e-8 * (1 + base));
  }
}

TEST(Operators, AntisymmetricPairing) {
  // For antisymmetric K the symmetric-truncation bilinear form is skew.
  Rng rng(64);
  auto mu = random_cloud(rng, 2, 40, 1e-3);
  auto f = random_density(rng, mu.size());
  auto g = random_density(rng, mu.size());
  auto k = kernels::cauchy();
  const double eps = 0.05;
  Complex a{}, b{};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    a += g[i] * t_eps(mu, k, f, mu.point(i), eps) * mu.weight(i);
    b += f[i] * t_eps(mu, k, g, mu.point(i), eps) * mu.weight(i);
  }
  EXPECT_NEAR(std::abs(a + b), 0.0, 1e-12);
}

TEST(Operators, AdjointSwapsArguments) {
  auto k = kernels::cauchy();
  auto a = adjoint(k);
  Point x{0.1, 0.2}, y{0.7, -0.3};
  EXPECT_EQ(a(x, y), k(y, x));
  auto mu = uniform_cube(2, 1.0, 6);
  auto f = Density::constant(mu, 1.0);
  EXPECT_NEAR(std::abs(t_eps_adjoint(mu, k, f, x, 0.2) + t_eps(mu, k, f, x, 0.2)), 0.0, 1e-13);
  EXPECT_DOUBLE_EQ(t_star_adjoint(mu, k, f, x, 0.2), t_max(mu, k, f, x, 0.2));
}

TEST(Operators, MaximalFunctionsMatchOracle) {
  Rng rng(65);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = random_cloud(rng, 2, 40, 1e-3);
    auto f = random_density(rng, mu.size());
    Point x{rng.uniform(), rng.uniform()};
    const double p = rng.uniform(1.0, 3.0);
    EXPECT_LE(oracle::relative_error(m_ball(mu, f, x), oracle::m_ball(mu, f, x)), 1e-9);
    EXPECT_LE(oracle::relative_error(m_cube_p(mu, f, x, p), oracle::m_cube_p(mu, f, x, p)), 1e-9);
    EXPECT_LE(oracle::relative_error(m_radial(mu, x, 1.5, 0.01), oracle::m_radial(mu, x, 1.5, 0.01)), 1e-9);
  }
}

TEST(Operators, MaximalFunctionBounds) {
  Rng rng(66);
  auto mu = random_cloud(rng, 1, 50, 1e-3);
  auto f = random_density(rng, mu.size());
  double sup = 0.0;
  for (auto& v : f.values) sup = std::max(sup, std::abs(v));
  for (int i = 0; i < 20; ++i) {
    Point x{rng.uniform()};
    EXPECT_LE(m_ball(mu, f, x), sup * (1 + 1e-12));
    EXPECT_LE(m_cube_p(mu, f, x, 1.0), m_cube_p(mu, f, x, 2.0) * (1 + 1e-12));
    EXPECT_NEAR(m_ball(mu, Density::constant(mu, Complex(0, 3)), x), 3.0, 1e-12);
  }
  DiscreteMeasure empty(1, 0.1);
  EXPECT_EQ(m_ball(empty, Density(), Point{0.0}), 0.0);
}

TEST(Operators, KernelConstants) {
  for (const auto& k : {kernels::hilbert(), kernels::cauchy(), kernels::cauchy_re(), kernels::cauchy_im(),
                        kernels::riesz(0, 2.0, 2), kernels::riesz(2, 2.0, 3)}) {
    auto c = kernel_constants_check(k, 2000, 99);
    EXPECT_TRUE(c.pass) << k.name << " size " << c.size_ratio << " sx " << c.smooth_x_ratio << " sy "
                        << c.smooth_y_ratio;
  }
  auto s = kernel_constants_check(kernels::symmetric_diagnostic(), 200, 1);
  EXPECT_EQ(s.antisymmetry_defect, 0.0);
  EXPECT_THROW(kernels::riesz(2, 1.0, 2), Error);
}
