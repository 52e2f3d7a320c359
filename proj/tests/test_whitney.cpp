#include <gtest/gtest.h>

#include "czlab/czlab.hpp"

using namespace czlab;

namespace {

void expect_audit(const Region& omega, const DiscreteMeasure& mu, double c1) {
  const long d0 = whitney_overlap_bound(mu.dim());
  auto w = whitney(omega, mu, d0, c1);
  auto a = whitney_audit(omega, mu, w);
  EXPECT_TRUE(a.interior);
  EXPECT_TRUE(a.reach);
  EXPECT_LE(a.max_neighbours, d0);
  EXPECT_LE(a.max_side_ratio, 32.0);
  EXPECT_TRUE(a.disjoint_interiors);
  EXPECT_TRUE(a.atoms_covered);
  EXPECT_TRUE(a.selected_nested);
  EXPECT_TRUE(a.selected_doubling);
  EXPECT_TRUE(a.selected_small_boundary);
  EXPECT_TRUE(a.selected_disjoint);
  EXPECT_TRUE(a.mass_ok) << a.mass_fraction;
  EXPECT_TRUE(a.ok(d0));
}

}  // namespace

TEST(Region, OpenCube) {
  Region r(OpenCubeRegion{Cube(Point{0.5, 0.5}, 1.0)});
  EXPECT_TRUE(r.contains(Point{0.5, 0.99}));
  EXPECT_FALSE(r.contains(Point{0.5, 1.0}));
  EXPECT_TRUE(r.contains_closed_cube(Cube(Point{0.5, 0.5}, 0.9)));
  EXPECT_FALSE(r.contains_closed_cube(Cube(Point{0.5, 0.5}, 1.0)));
  EXPECT_EQ(r.kind(), "open-cube");
}

TEST(Region, ComplementOfPoint) {
  Region r(ComplementOfCubeRegion{Cube(Point{0.0}, 0.0)});
  EXPECT_FALSE(r.contains(Point{0.0}));
  EXPECT_TRUE(r.contains(Point{1e-9}));
  EXPECT_TRUE(r.contains_closed_cube(Cube(Point{1.0}, 1.9)));
  EXPECT_FALSE(r.contains_closed_cube(Cube(Point{1.0}, 2.0)));
}

TEST(Region, UnionCoverage) {
  // Two overlapping open squares cover [0.1,1.9] x [0.1,0.9] but not the seam line of two touching ones.
  Region overlap(UnionOfOpenCubesRegion{{Cube(Point{0.5, 0.5}, 1.0), Cube(Point{1.4, 0.5}, 1.0)}});
  EXPECT_TRUE(overlap.contains_closed_cube(Cube(Point{0.95, 0.5}, 0.8)));
  Region touching(UnionOfOpenCubesRegion{{Cube(Point{0.5, 0.5}, 1.0), Cube(Point{1.5, 0.5}, 1.0)}});
  EXPECT_FALSE(touching.contains_closed_cube(Cube(Point{1.0, 0.5}, 0.2)));
  EXPECT_FALSE(touching.contains(Point{1.0, 0.5}));
}

TEST(Whitney, OverlapBoundOneDim) { EXPECT_EQ(whitney_overlap_bound(1), 759); }

TEST(Whitney, OverlapBoundGrowsWithDim) {
  EXPECT_GT(whitney_overlap_bound(2), whitney_overlap_bound(1) * 21);
  EXPECT_GT(whitney_overlap_bound(3), whitney_overlap_bound(2));
}

TEST(Whitney, OpenCubeUniform) {
  auto mu = uniform_cube(2, 1.0, 32);
  expect_audit(Region(OpenCubeRegion{Cube(Point{0.5, 0.5}, 0.8)}), mu, 256.0);
}

TEST(Whitney, ComplementOfPointCantor) {
  auto mu = corner_cantor(3);
  expect_audit(Region(ComplementOfCubeRegion{Cube(Point{0.5, 0.5}, 0.0)}), mu, 256.0);
}

TEST(Whitney, UnionOneDim) {
  auto mu = uniform_cube(1, 1.0, 256);
  expect_audit(Region(UnionOfOpenCubesRegion{{Cube(Point{0.3}, 0.4), Cube(Point{0.7}, 0.3)}}), mu, 128.0);
}

TEST(Whitney, EmptyIntersection) {
  auto mu = uniform_cube(1, 1.0, 8);
  auto w = whitney(Region(OpenCubeRegion{Cube(Point{5.0}, 1.0)}), mu, whitney_overlap_bound(1), 128.0);
  EXPECT_TRUE(w.cubes.empty());
  EXPECT_EQ(w.omega_mass, 0.0);
}

TEST(Whitney, RandomOpenCubes) {
  Rng rng(101);
  auto mu = uniform_cube(2, 1.0, 24);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Cube> cubes;
    for (int k = 0; k < 3; ++k) cubes.emplace_back(Point{rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)}, rng.uniform(0.1, 0.4));
    expect_audit(Region(UnionOfOpenCubesRegion{cubes}), mu, 256.0);
  }
}
