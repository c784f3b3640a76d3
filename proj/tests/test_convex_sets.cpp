// Copyright 2026 The distdyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "distdyk/convex_sets.hpp"
#include "support/reference.hpp"

namespace distdyk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec v2(double a, double b) { return Vec{{a, b}}; }

ConvexSet left_halfplane() { return ConvexSet::halfspace(v2(1, 0), 0.0); }
ConvexSet unit_ball_left() { return ConvexSet::ball(v2(-1, 0), 1.0); }

TEST(Project, CoordinateHalfspace) {
  const auto r = project(left_halfplane(), v2(2, 3));
  EXPECT_EQ(r.point, v2(0, 3));
  EXPECT_EQ(r.normal, v2(2, 0));
  EXPECT_EQ(r.support_value, 0.0);
}

TEST(Project, BallAlongCenterRay) {
  const auto r = project(unit_ball_left(), v2(1, 0));
  EXPECT_NEAR((r.point - v2(0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((r.normal - v2(1, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(r.support_value, 0.0, 1e-15);
}

TEST(Project, PolyhedronSingleActiveRow) {
  const auto p = ConvexSet::polyhedron(Mat{{1.0, 1.0}}, Vec{{0.0}});
  const auto r = project(p, v2(1, 1));
  EXPECT_NEAR((r.point - v2(0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((r.normal - v2(1, 1)).norm(), 0.0, 1e-15);
}

TEST(Project, InteriorPointIsFixed) {
  const auto r = project(ConvexSet::ball(v2(0, 0), 2.0), v2(1, 0));
  EXPECT_EQ(r.point, v2(1, 0));
  EXPECT_EQ(r.normal, v2(0, 0));
  EXPECT_EQ(r.support_value, 0.0);
}

TEST(Project, WholeSpaceIsIdentity) {
  const auto r = project(ConvexSet::whole_space(2), v2(4, -1));
  EXPECT_EQ(r.point, v2(4, -1));
  EXPECT_EQ(r.normal, v2(0, 0));
  EXPECT_EQ(r.support_value, 0.0);
}

TEST(Project, BoxClampsComponents) {
  const auto b = ConvexSet::box(v2(-1, -kInf), v2(1, 2));
  const auto r = project(b, v2(3, -50));
  EXPECT_EQ(r.point, v2(1, -50));
  EXPECT_EQ(r.normal, v2(2, 0));
  EXPECT_EQ(r.support_value, 2.0);
}

TEST(Project, PointPlusNormalIsInput) {
  std::mt19937_64 rng(3);
  for (const char* fam : {"halfspace", "ball", "box", "polyhedron"}) {
    for (int t = 0; t < 50; ++t) {
      const ConvexSet c = testing::random_set(fam, 3, rng);
      const Vec s = testing::random_vec(3, 3.0, rng);
      const auto r = project(c, s);
      EXPECT_LE((r.point + r.normal - s).norm(), 1e-14 * (1 + s.norm())) << fam;
    }
  }
}

TEST(Project, DimensionMismatchThrows) {
  EXPECT_THROW(project(left_halfplane(), Vec::Zero(3)), InvalidSet);
}

TEST(Support, BallBoundaryNormal) {
  EXPECT_NEAR(support(unit_ball_left(), v2(2, 0)), 0.0, 1e-15);
}

TEST(Support, HalfspaceOnlyOnNormalRay) {
  EXPECT_EQ(support(left_halfplane(), v2(3, 0)), 0.0);
  EXPECT_EQ(support(left_halfplane(), v2(0, 1)), kInf);
  EXPECT_EQ(support(left_halfplane(), v2(-1, 0)), kInf);
}

TEST(Support, HalfspaceCollinearityTolerance) {
  const auto h = ConvexSet::halfspace(v2(1, 0), 2.0);
  EXPECT_EQ(support(h, v2(3, 1e-12)), 6.0);
  EXPECT_EQ(support(h, v2(3, 1e-6)), kInf);
}

TEST(Support, BoxSeparableMaximum) {
  const auto b = ConvexSet::box(v2(-1, -1), v2(1, 1));
  EXPECT_EQ(support(b, v2(2, -3)), 5.0);
}

TEST(Support, BoxInfiniteBounds) {
  const auto b = ConvexSet::box(v2(-1, -kInf), v2(kInf, 1));
  EXPECT_EQ(support(b, v2(-2, 3)), 5.0);
  EXPECT_EQ(support(b, v2(0, 3)), 3.0);
  EXPECT_EQ(support(b, v2(1, 0)), kInf);
  EXPECT_EQ(support(b, v2(0, -1)), kInf);
}

TEST(Support, WholeSpace) {
  EXPECT_EQ(support(ConvexSet::whole_space(2), v2(0, 0)), 0.0);
  EXPECT_EQ(support(ConvexSet::whole_space(2), v2(0, 1e-3)), kInf);
}

TEST(Support, PolyhedronBoundedAndUnbounded) {
  // Triangle with vertices (0,0), (1,0), (0,1).
  const auto p = ConvexSet::polyhedron(Mat{{-1, 0}, {0, -1}, {1, 1}}, Vec{{0, 0, 1}});
  EXPECT_NEAR(support(p, v2(2, 1)), 2.0, 1e-12);
  EXPECT_NEAR(support(p, v2(-1, -1)), 0.0, 1e-12);
  const auto half = ConvexSet::polyhedron(Mat{{1, 1}}, Vec{{0}});
  EXPECT_EQ(support(half, v2(1, 0)), kInf);
  EXPECT_NEAR(support(half, v2(2, 2)), 0.0, 1e-15);
}

TEST(NormalResidual, Examples) {
  EXPECT_EQ(normal_residual(left_halfplane(), v2(0, 3), v2(2, 0)), 0.0);
  EXPECT_EQ(normal_residual(left_halfplane(), v2(0, 3), v2(-1, 0)), 1.0);
  EXPECT_NEAR(normal_residual(unit_ball_left(), v2(0, 0), v2(5, 0)), 0.0, 1e-15);
}

TEST(NormalResidual, InfeasiblePointIsPositive) {
  EXPECT_GT(normal_residual(left_halfplane(), v2(1, 0), v2(0, 0)), 0.5);
}

TEST(Construction, RejectsInvalidSets) {
  EXPECT_THROW(ConvexSet::halfspace(v2(0, 0), 1.0), InvalidSet);
  EXPECT_THROW(ConvexSet::ball(v2(0, 0), 0.0), InvalidSet);
  EXPECT_THROW(ConvexSet::ball(v2(0, 0), -1.0), InvalidSet);
  EXPECT_THROW(ConvexSet::box(v2(0, 2), v2(1, 1)), InvalidSet);
  EXPECT_THROW(ConvexSet::box(v2(0, 0), Vec::Zero(3)), InvalidSet);
  EXPECT_THROW(ConvexSet::whole_space(0), InvalidSet);
  EXPECT_THROW(ConvexSet::polyhedron(Mat::Ones(33, 2), Vec::Ones(33)), InvalidSet);
  EXPECT_THROW(ConvexSet::polyhedron(Mat::Ones(2, 2), Vec::Ones(3)), InvalidSet);
}

TEST(Construction, EmptyPolyhedronRejected) {
  // x <= -1 and -x <= -1.
  EXPECT_THROW(ConvexSet::polyhedron(Mat{{1.0}, {-1.0}}, Vec{{-1.0, -1.0}}),
               InvalidSet);
}

TEST(Construction, TranslatedSets) {
  const auto h = ConvexSet::halfspace(v2(1, 0), 1.0).translated(v2(-1, 0));
  EXPECT_EQ(h.as<Halfspace>().offset, 0.0);
  const auto b = ConvexSet::ball(v2(2, 2), 3.0).translated(v2(-1, 0));
  EXPECT_EQ(b.as<Ball>().center, v2(1, 2));
  EXPECT_EQ(b.as<Ball>().radius, 3.0);
}

// Property checks over random sets of every family.

class SetProperties : public ::testing::TestWithParam<const char*> {};

TEST_P(SetProperties, Idempotence) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 4;
    const ConvexSet c = testing::random_set(GetParam(), m, rng);
    const Vec p = project(c, testing::random_vec(m, 4.0, rng)).point;
    EXPECT_LE((project(c, p).point - p).norm(), 1e-12);
  }
}

TEST_P(SetProperties, FirmNonexpansiveness) {
  std::mt19937_64 rng(12);
  const int m = 3;
  const ConvexSet c = testing::random_set(GetParam(), m, rng);
  for (int t = 0; t < 10000; ++t) {
    const Vec s = testing::random_vec(m, 3.0, rng);
    const Vec s2 = testing::random_vec(m, 3.0, rng);
    const Vec d = project(c, s).point - project(c, s2).point;
    EXPECT_LE(d.squaredNorm(), d.dot(s - s2) + 1e-10);
  }
}

TEST_P(SetProperties, MoreauConsistency) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + t % 4;
    const ConvexSet c = testing::random_set(GetParam(), m, rng);
    const auto r = project(c, testing::random_vec(m, 4.0, rng));
    const double sigma = support(c, r.normal);
    ASSERT_TRUE(std::isfinite(sigma));
    EXPECT_NEAR(r.support_value, sigma, 1e-9);
    EXPECT_NEAR(r.support_value, r.normal.dot(r.point), 1e-9);
  }
}

TEST_P(SetProperties, ProjectionIsFeasibleAndNormal) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + t % 4;
    const ConvexSet c = testing::random_set(GetParam(), m, rng);
    const auto r = project(c, testing::random_vec(m, 4.0, rng));
    EXPECT_TRUE(testing::contains(c, r.point, 1e-9));
    EXPECT_LE(normal_residual(c, r.point, r.normal), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Families, SetProperties,
                         ::testing::Values("whole_space", "halfspace", "ball",
                                           "box", "polyhedron"));

TEST(PolyhedronGrid, AgreesWithGridSearch) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const int m = 1 + t % 3;
    const ConvexSet c = testing::random_set("polyhedron", m, rng);
    const Vec s = testing::random_vec(m, 1.5, rng);
    const auto& p = c.as<Polyhedron>();
    const Vec grid = testing::grid_projection_polyhedron(p.rows, p.rhs, s, 1e-5);
    EXPECT_LE((project(c, s).point - grid).norm(), 2e-3) << "case " << t;
  }
}

TEST(PolyhedronGrid, PrimalGridOnABox) {
  // The primal lattice search on a set whose faces are lattice-aligned.
  const auto p = ConvexSet::polyhedron(Mat{{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                       Vec{{1, 1, 0.5, 0.5}});
  Vec grid;
  ASSERT_TRUE(testing::grid_projection({p}, v2(2, -1), -2.5, 2.5, 0.05, 1e-6, grid));
  EXPECT_LE((grid - v2(1, -0.5)).norm(), 1e-5);
  EXPECT_LE((project(p, v2(2, -1)).point - grid).norm(), 1e-5);
}

}  // namespace
}  // namespace distdyk
