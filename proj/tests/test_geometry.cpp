#include <gtest/gtest.h>

#include <set>

#include "czlab/czlab.hpp"
#include "czlab/oracle.hpp"

using namespace czlab;

TEST(Cube, Membership) {
  Cube q(Point{0.5, 0.5}, 1.0);
  EXPECT_TRUE(q.contains(Point{1.0, 0.0}));
  EXPECT_FALSE(q.contains_half_open(Point{1.0, 0.5}));
  EXPECT_TRUE(q.contains_half_open(Point{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(q.boundary_distance(Point{0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(q.boundary_distance(Point{1.5, 0.5}), 0.5);
  EXPECT_TRUE(q.contains_cube(Cube(Point{0.25, 0.25}, 0.5)));
  EXPECT_FALSE(q.contains_cube(Cube(Point{0.25, 0.25}, 0.6)));
  EXPECT_TRUE(q.intersects(Cube(Point{2.0, 0.5}, 2.0)));
  EXPECT_THROW(Cube(Point{0.0}, -1.0), Error);
}

TEST(Grid, ExponentBracket) {
  for (double side : {0.01, 0.3, 1.0, 1.5, 7.0, 1024.0}) {
    const int n = grid_exponent(side);
    EXPECT_LE(std::ldexp(1.0, n - 3), side);
    EXPECT_LT(side, std::ldexp(1.0, n - 2));
  }
  EXPECT_EQ(grid_exponent(1.0), 3);
}

TEST(Grid, ShiftDomain) {
  EXPECT_TRUE(in_shift_domain(Point{-4.0, 3.999}, 3));
  EXPECT_FALSE(in_shift_domain(Point{4.0, 0.0}, 3));
  Cube q(Point{0.5}, 1.0);
  EXPECT_THROW(random_grid(q, Point{4.0}, 3), Error);
}

TEST(Grid, RootContainsQForEveryShift) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    Point c(d);
    for (auto& v : c) v = rng.uniform(-10, 10);
    Cube q(c, rng.uniform(0.01, 50.0));
    const int n = grid_exponent(q.side);
    Point w(d);
    for (auto& v : w) v = rng.uniform(-1, 1) * std::ldexp(1.0, n - 1);
    auto g = random_grid(q, w, 4);
    EXPECT_DOUBLE_EQ(g.root.side, std::ldexp(1.0, n + 1));
    EXPECT_TRUE(g.root.contains_cube(q));
  }
}

TEST(Grid, ChildrenTile) {
  DyadicGrid g{Cube(Point{0.0, 0.0}, 2.0), 4};
  auto kids = children(g, g.root, 2);
  ASSERT_EQ(kids.size(), 16u);
  EXPECT_DOUBLE_EQ(kids[0].side, 0.5);
  EXPECT_DOUBLE_EQ(kids[0].lower(0), -1.0);
  EXPECT_DOUBLE_EQ(kids[1].lower(1), -0.5);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Point y{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    int hits = 0;
    for (auto& k : kids) hits += k.contains_half_open(y);
    EXPECT_EQ(hits, 1);
    auto idx = g.index_of(y, 2);
    EXPECT_TRUE(g.cell(2, idx).contains_half_open(y));
  }
  EXPECT_EQ(g.depth_of(kids[3]), 2);
  EXPECT_EQ(g.depth_of(Cube(Point{0.0, 0.0}, 0.3)), -1);
  EXPECT_THROW(children(g, kids[0], 3), Error);
}

TEST(Grid, ResolvingDepth) {
  EXPECT_EQ(resolving_depth(1.0, 0.25), 2);
  EXPECT_EQ(resolving_depth(1.0, 0.2), 3);
  EXPECT_EQ(resolving_depth(0.1, 1.0), 0);
}

TEST(Doubling, UniformCubeIsDoubling) {
  auto mu = uniform_cube(2, 1.0, 16);
  Cube q(Point{0.5, 0.5}, 0.25);
  EXPECT_TRUE(doubling_check(mu, q, 2.0, 4.0 + 1e-9));
  EXPECT_FALSE(doubling_check(mu, q, 2.0, 3.0));
}

TEST(Doubling, SearchReturnsFirstDoublingSide) {
  Rng rng(9);
  auto mu = corner_cantor(3);
  for (int trial = 0; trial < 30; ++trial) {
    Point x{rng.uniform(), rng.uniform()};
    auto r = doubling_search(mu, x, 2.0, 26.0, 0.01);
    EXPECT_TRUE(doubling_check(mu, r.cube, 2.0, 26.0));
    for (int k = 0; k < r.k; ++k) EXPECT_FALSE(doubling_check(mu, Cube(x, 0.01 * std::ldexp(1.0, k)), 2.0, 26.0));
  }
}

TEST(Doubling, BallRadius) {
  auto mu = uniform_cube(2, 1.0, 32);
  Point x{0.5, 0.5};
  auto r = doubling_ball_radius(mu, x, 1e-3, 4 * std::sqrt(2.0), 26.0 * 26.0);
  EXPECT_LE(ball_mass(mu, x, 5 * 4 * std::sqrt(2.0) * r.radius), 26.0 * 26.0 * ball_mass(mu, x, r.radius));
  EXPECT_DOUBLE_EQ(r.radius, 1e-3 * std::ldexp(1.0, r.m));
}

TEST(SmallBoundary, MatchesOracle) {
  Rng rng(17);
  auto mu = uniform_cube(2, 1.0, 20);
  for (int trial = 0; trial < 30; ++trial) {
    Cube q(Point{rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)}, rng.uniform(0.05, 0.4));
    const double t = rng.uniform(4.0, 64.0);
    auto fast = small_boundary_check(mu, q, t);
    const double slow = oracle::small_boundary_ratio(mu, q, t);
    EXPECT_LE(oracle::relative_error(fast.worst_ratio, slow), 1e-9) << trial;
    EXPECT_EQ(fast.pass, slow <= 1.0 + 1e-12);
  }
}

TEST(SmallBoundary, AtomOnBoundaryFails) {
  DiscreteMeasure mu(1, 0.1);
  mu.add_atom(Point{1.0}, 1.0);
  EXPECT_FALSE(small_boundary_check(mu, Cube(Point{0.5}, 1.0), 1000.0).pass);
}

TEST(SmallBoundary, SelectStaysInRange) {
  Rng rng(23);
  auto mu = uniform_cube(2, 1.0, 24);
  auto nu = corner_cantor(3);
  for (int trial = 0; trial < 20; ++trial) {
    Cube q(Point{rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)}, rng.uniform(0.05, 0.3));
    auto s = small_boundary_select(mu, nu, q, 256.0);
    EXPECT_GE(s.side, q.side);
    EXPECT_LE(s.side, 1.1 * q.side);
    EXPECT_TRUE(small_boundary_check(mu, s, 256.0).pass);
    EXPECT_TRUE(small_boundary_check(nu, s, 256.0).pass);
  }
}
