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

#include "distdyk/engine.hpp"
#include "support/reference.hpp"

namespace distdyk {
namespace {

Vec v2(double a, double b) { return Vec{{a, b}}; }

const AuditEntry& entry(const AuditReport& r, const std::string& name) {
  for (const AuditEntry& e : r.entries) {
    if (e.check == name) return e;
  }
  throw std::runtime_error("no audit entry " + name);
}

// Edge duals that make every primal image zero, found by least squares on
// the signed incidence matrix.
Mat edge_flow_to_origin(const Instance& inst, const Mat& vertex_dual) {
  const int n = inst.num_vertices();
  const int ne = inst.graph.num_edges();
  Mat inc = Mat::Zero(n, ne);
  for (int e = 0; e < ne; ++e) {
    inc(inst.graph.edge(e).i, e) = 1.0;
    inc(inst.graph.edge(e).j, e) = -1.0;
  }
  // Row i of the target is (anchor - z_i)^T.
  Mat target(n, inst.m);
  for (int i = 0; i < n; ++i) target.row(i) = (inst.anchor - vertex_dual.col(i)).transpose();
  const Mat flows = inc.completeOrthogonalDecomposition().solve(target);
  return flows.transpose();
}

TEST(DualValue, ZeroStateTwoVertices) {
  Instance inst;
  inst.m = 2;
  inst.graph = path_graph(2);
  inst.sets = {ConvexSet::whole_space(2), ConvexSet::whole_space(2)};
  inst.anchor = v2(1, 0);
  EXPECT_EQ(dual_value(init_state(inst)), 1.0);
}

TEST(DualValue, ZeroAtTheCertificate) {
  for (auto kind : {InstanceKind::kBalls, InstanceKind::kHalfspaces, InstanceKind::kBoxes,
                    InstanceKind::kMixed}) {
    const Instance inst = generate(kind, 3, cycle_graph(4), 12);
    DualState warm;
    warm.m = 3;
    warm.vertex_dual = Mat(3, 4);
    for (int i = 0; i < 4; ++i) warm.vertex_dual.col(i) = inst.certificate->multipliers[i];
    warm.edge_dual = edge_flow_to_origin(inst, warm.vertex_dual);
    const DualState s = init_state(inst, warm);
    EXPECT_LE(s.primal.norm(), 1e-14);
    EXPECT_NEAR(dual_value(s), 0.0, 1e-14) << kind_name(kind);
  }
}

TEST(DualValue, InfiniteOutsideTheDomain) {
  Instance inst;
  inst.m = 2;
  inst.graph = path_graph(1);
  inst.sets = {ConvexSet::halfspace(v2(1, 0), 0.0)};
  inst.anchor = v2(1, 1);
  DualState warm;
  warm.m = 2;
  warm.vertex_dual = Mat(2, 1);
  warm.vertex_dual.col(0) = v2(0, 1);
  warm.edge_dual = Mat::Zero(2, 0);
  EXPECT_EQ(dual_value(init_state(inst, warm)), std::numeric_limits<double>::infinity());
}

Instance halfplane_at(double a) {
  Instance inst;
  inst.m = 2;
  inst.graph = path_graph(1);
  inst.sets = {ConvexSet::halfspace(v2(1, 0), 0.0)};
  inst.anchor = v2(a, 0);
  inst.certificate = Certificate{v2(0, 0), {v2(a, 0)}};
  return inst;
}

TEST(GapBound, Arithmetic) {
  const Instance inst = halfplane_at(0.2);
  ASSERT_TRUE(check_instance(inst).empty());
  const DualState s = init_state(inst);
  EXPECT_NEAR(dual_value(s), 0.02, 1e-15);
  EXPECT_NEAR(gap_bound(s, inst), 0.2, 1e-15);
}

TEST(GapBound, ZeroAtOptimum) {
  const Instance inst = halfplane_at(0.7);
  DualState s = init_state(inst);
  vertex_step(s, inst, 0);
  EXPECT_EQ(gap_bound(s, inst), 0.0);
}

TEST(GapBound, RefusesUnnormalized) {
  Instance inst = halfplane_at(0.3);
  inst.certificate->x_star = v2(0, 1);
  EXPECT_THROW(gap_bound(init_state(inst), inst), DiagnosticsError);
  inst.certificate.reset();
  EXPECT_THROW(gap_bound(init_state(inst), inst), DiagnosticsError);
}

TEST(GapBound, DominatesDistanceAlongTraces) {
  for (const auto& c : testing::sweep_cases(24)) {
    const Instance inst = testing::make_case(c);
    const RunResult r = run(inst, make_schedule(inst.graph, SchedulePolicy::kSingletonCyclic, 1));
    for (const TraceRecord& rec : r.trace.records) {
      ASSERT_TRUE(rec.gap && rec.dist_max);
      EXPECT_LE(*rec.dist_max, *rec.gap + 1e-10);
      EXPECT_NEAR(*rec.gap, std::sqrt(2 * std::max(0.0, rec.f)), 1e-15);
    }
  }
}

TEST(FitRate, ExactGeometric) {
  std::vector<double> f;
  for (int n = 1; n <= 40; ++n) f.push_back(std::pow(0.5, n));
  const RateFit fit = fit_rate(testing::synthetic_trace(f), 0.5);
  EXPECT_NEAR(fit.rate, 0.5, 1e-12);
  EXPECT_NEAR(fit.two_cycle_rate, 0.25, 1e-12);
  EXPECT_NEAR(fit.log_slope, std::log(0.5), 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.n_end, 40);
  EXPECT_EQ(fit.n_start, 21);
}

TEST(FitRate, SublinearIsWorseThanGeometric) {
  std::vector<double> f;
  for (int n = 1; n <= 1000; ++n) f.push_back(1.0 / n);
  const RateFit fit = fit_rate(testing::synthetic_trace(f), 0.5);
  EXPECT_GT(fit.rate, 0.99);
  EXPECT_LT(fit.rate, 1.0);
  EXPECT_LT(fit.r_squared, 1.0 - 1e-4);
}

TEST(FitRate, FloorExcludesRoundingNoise) {
  std::vector<double> f;
  for (int n = 1; n <= 30; ++n) f.push_back(std::pow(0.1, n));
  const RateFit fit = fit_rate(testing::synthetic_trace(f), 1.0);
  // Values below 1e2 * eps * F_1 (about 2.2e-16 here) are dropped.
  EXPECT_EQ(fit.n_end, 14);
  EXPECT_NEAR(fit.rate, 0.1, 1e-10);
}

TEST(FitRate, Preconditions) {
  EXPECT_THROW(fit_rate(testing::synthetic_trace({1, 0.5, 0.25}), 0.5), DiagnosticsError);
  std::vector<double> f(20, 0.0);
  f[0] = 1.0;
  EXPECT_THROW(fit_rate(testing::synthetic_trace(f), 0.5), DiagnosticsError);
  std::vector<double> g;
  for (int n = 1; n <= 20; ++n) g.push_back(std::pow(0.5, n));
  EXPECT_THROW(fit_rate(testing::synthetic_trace(g), 0.0), DiagnosticsError);
  EXPECT_THROW(fit_rate(testing::synthetic_trace(g), 1.5), DiagnosticsError);
}

TEST(FitRate, SeededBallRun) {
  const Instance inst = generate(InstanceKind::kBalls, 2, path_graph(3), 7);
  const RunResult r = run(inst, make_schedule(inst.graph, SchedulePolicy::kCyclicVFirst, 1));
  const RateFit fit = fit_rate(r.trace, 0.5);
  EXPECT_GT(fit.rate, 0.0);
  EXPECT_LT(fit.rate, 1.0);
  EXPECT_GE(fit.r_squared, 0.9);
}

Trace clean_trace() {
  const Instance inst = generate(InstanceKind::kMixed, 2, path_graph(4), 3);
  return run(inst, make_schedule(inst.graph, SchedulePolicy::kCyclicVFirst, 1)).trace;
}

TEST(Audit, CleanRunPasses) {
  const AuditReport r = audit(clean_trace());
  EXPECT_TRUE(r.passed());
  for (const AuditEntry& e : r.entries) EXPECT_EQ(e.status, AuditEntry::Status::kPass) << e.check;
}

TEST(Audit, IncrementedValueFailsMonotonicity) {
  Trace t = clean_trace();
  ASSERT_GT(t.records.size(), 8u);
  t.records[7].f += 1.0;
  const AuditReport r = audit(t);
  EXPECT_FALSE(r.passed());
  const AuditEntry& e = entry(r, "monotone_f");
  EXPECT_EQ(e.status, AuditEntry::Status::kFail);
  EXPECT_NE(e.detail.find("record 7"), std::string::npos) << e.detail;
}

TEST(Audit, MissingDistancesSkipped) {
  Trace t = clean_trace();
  for (TraceRecord& r : t.records) {
    r.dist_max.reset();
    r.distances.clear();
  }
  const AuditReport r = audit(t);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(entry(r, "gap_dominates_distance").status, AuditEntry::Status::kSkipped);
}

TEST(Audit, DistanceAboveGapFails) {
  Trace t = clean_trace();
  t.records[3].dist_max = *t.records[3].gap + 1e-6;
  EXPECT_EQ(entry(audit(t), "gap_dominates_distance").status, AuditEntry::Status::kFail);
}

TEST(Audit, DriftWarningsFlagged) {
  Trace t = clean_trace();
  t.metadata.warnings.push_back("cycle 3: primal drift");
  EXPECT_EQ(entry(audit(t), "drift_warnings").status, AuditEntry::Status::kFail);
}

TEST(Audit, StatusNames) {
  EXPECT_EQ(status_name(AuditEntry::Status::kPass), "pass");
  EXPECT_EQ(status_name(AuditEntry::Status::kFail), "fail");
  EXPECT_EQ(status_name(AuditEntry::Status::kSkipped), "skipped");
}

}  // namespace
}  // namespace distdyk
