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

#include "distdyk/engine.hpp"

#include <cmath>
#include <sstream>

namespace distdyk {
namespace kernels {

VertexUpdate vertex_prox(const ConvexSet& set, Eigen::Ref<Vec> x,
                         Eigen::Ref<Vec> z) {
  const Vec s = x + z;
  ProjectionResult p = project(set, s);
  VertexUpdate out;
  out.moved = (p.point - x).norm();
  out.support = p.support_value;
  x = p.point;
  z = p.normal;
  return out;
}

double edge_average(Eigen::Ref<Vec> x_i, Eigen::Ref<Vec> x_j,
                    Eigen::Ref<Vec> v) {
  const Vec r_i = x_i + v;
  const Vec r_j = x_j - v;
  const Vec mid = 0.5 * (r_i + r_j);
  const double moved =
      std::sqrt((mid - x_i).squaredNorm() + (mid - x_j).squaredNorm());
  v = 0.5 * (r_i - r_j);
  x_i = mid;
  x_j = mid;
  return moved;
}

}  // namespace kernels

namespace {

void check_vertex(const DualState& state, const Instance& instance, int i) {
  const ConvexSet& set = instance.sets[i];
  const Vec x = state.primal.col(i);
  const Vec z = state.vertex_dual.col(i);
  const double res = normal_residual(set, x, z);
  if (res > 1e-9 * (1.0 + x.norm() + z.norm())) {
    std::ostringstream msg;
    msg << "vertex " << i << ": normal-cone residual " << res;
    throw InvariantViolation(msg.str());
  }
  const double analytic = support(set, z);
  const double cached = state.support[i];
  if (!(std::abs(analytic - cached) <= 1e-9 * (1.0 + std::abs(analytic)))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "vertex " << i << ": cached support " << cached
        << " disagrees with analytic " << analytic;
    throw InvariantViolation(msg.str());
  }
}

void check_consistency(const DualState& state, const Instance& instance) {
  const double drift = primal_drift(instance.graph, state);
  if (drift > 1e-12 * (1.0 + state.anchor.norm()) * (1.0 + state.primal.norm())) {
    std::ostringstream msg;
    msg << "primal image drifted " << drift << " from the duals";
    throw InvariantViolation(msg.str());
  }
}

}  // namespace

StepReport vertex_step(DualState& state, const Instance& instance, int vertex,
                       const StepOptions& options) {
  if (vertex < 0 || vertex >= instance.num_vertices()) {
    throw std::invalid_argument("vertex_step: vertex out of range");
  }
  StepReport rep{{Member::vertex(vertex)}, dual_value(state), 0.0, 0.0};
  const auto upd = kernels::vertex_prox(instance.sets[vertex],
                                        state.primal.col(vertex),
                                        state.vertex_dual.col(vertex));
  state.support[vertex] = upd.support;
  rep.moved = upd.moved;
  rep.f_after = dual_value(state);
  if (options.debug) {
    check_vertex(state, instance, vertex);
    check_consistency(state, instance);
  }
  return rep;
}

StepReport edge_step(DualState& state, const Instance& instance, int edge_index,
                     const StepOptions& options) {
  if (edge_index < 0 || edge_index >= instance.graph.num_edges()) {
    throw std::invalid_argument("edge_step: edge out of range");
  }
  const Edge& e = instance.graph.edge(edge_index);
  StepReport rep{{Member::edge(e.i, e.j)}, dual_value(state), 0.0, 0.0};
  rep.moved = kernels::edge_average(state.primal.col(e.i), state.primal.col(e.j),
                                    state.edge_dual.col(edge_index));
  rep.f_after = dual_value(state);
  if (options.debug) check_consistency(state, instance);
  return rep;
}

StepReport run_block(DualState& state, const Instance& instance,
                     const Block& block, const StepOptions& options) {
  if (block.empty()) throw std::invalid_argument("run_block: empty block");
  if (auto v = coupled_vertex(block)) {
    throw std::invalid_argument("run_block: block coupled on coordinate " +
                                std::to_string(*v));
  }
  StepReport rep{block, dual_value(state), 0.0, 0.0};
  double moved_sq = 0.0;
  for (const Member& m : block) {
    if (m.is_vertex()) {
      if (m.a < 0 || m.a >= instance.num_vertices()) {
        throw std::invalid_argument("run_block: unknown " + m.to_string());
      }
      const auto upd = kernels::vertex_prox(instance.sets[m.a],
                                            state.primal.col(m.a),
                                            state.vertex_dual.col(m.a));
      state.support[m.a] = upd.support;
      moved_sq += upd.moved * upd.moved;
      if (options.debug) check_vertex(state, instance, m.a);
    } else {
      const auto idx = instance.graph.edge_index(m.a, m.b);
      if (!idx) throw std::invalid_argument("run_block: unknown " + m.to_string());
      const double moved = kernels::edge_average(
          state.primal.col(m.a), state.primal.col(m.b), state.edge_dual.col(*idx));
      moved_sq += moved * moved;
    }
  }
  if (options.debug) check_consistency(state, instance);
  rep.moved = std::sqrt(moved_sq);
  rep.f_after = dual_value(state);
  return rep;
}

RunResult run(const Instance& instance, const Schedule& schedule,
              const StopRule& stop, const RunOptions& options,
              const std::optional<DualState>& warm_start) {
  if (schedule.cycles.empty()) throw std::invalid_argument("run: empty schedule");
  RunResult result;
  result.state = init_state(instance, warm_start);
  DualState& state = result.state;
  Trace& trace = result.trace;
  if (instance.seed_info) trace.metadata.seed = instance.seed_info->seed;

  const bool normalized = instance.normalized();
  const int n_vertices = instance.num_vertices();
  const StepOptions step_opts{options.debug};

  auto make_record = [&](int cycle, int block, double f, double moved) {
    TraceRecord r;
    r.cycle = cycle;
    r.block = block;
    r.f = f;
    r.moved = moved;
    if (instance.certificate) {
      r.distances.resize(n_vertices);
      double worst = 0.0;
      for (int i = 0; i < n_vertices; ++i) {
        r.distances[i] =
            (state.primal.col(i) - instance.certificate->x_star).norm();
        worst = std::max(worst, r.distances[i]);
      }
      r.dist_max = worst;
    }
    if (normalized) r.gap = std::sqrt(2.0 * std::max(0.0, f));
    trace.records.push_back(std::move(r));
  };

  double f = dual_value(state);
  std::vector<double> boundary_f{f};
  make_record(1, 0, f, 0.0);

  int n = 1;
  while (true) {
    if (normalized && 2.0 * f <= stop.gap_eps * stop.gap_eps) {
      trace.metadata.stop_reason = "gap_certified";
      result.stop_satisfied = true;
      break;
    }
    const int window = stop.plateau_window;
    if (!normalized && static_cast<int>(boundary_f.size()) > window) {
      const double earlier = boundary_f[boundary_f.size() - 1 - window];
      if (earlier - f <= stop.plateau_rel * std::abs(f)) {
        trace.metadata.stop_reason = "plateau";
        result.stop_satisfied = true;
        break;
      }
    }
    if (n > stop.max_cycles) {
      trace.metadata.stop_reason = "max_cycles";
      break;
    }

    const auto& blocks = schedule.cycles[(n - 1) % schedule.cycles.size()];
    double cycle_moved_sq = 0.0;
    for (size_t w = 0; w < blocks.size(); ++w) {
      StepReport rep = run_block(state, instance, blocks[w], step_opts);
      cycle_moved_sq += rep.moved * rep.moved;
      make_record(n, static_cast<int>(w) + 1, rep.f_after, rep.moved);
    }

    // Hand-off to the next cycle, with a full recomputation of x from the
    // duals to keep floating-point drift bounded.
    const Mat fresh = recompute_primal(instance.graph, state);
    const double drift = (state.primal - fresh).colwise().norm().maxCoeff();
    if (drift > options.drift_tol * (1.0 + state.anchor.norm())) {
      std::ostringstream msg;
      msg << "cycle " << n << ": primal drift " << drift
          << " exceeded tolerance; recomputed";
      trace.metadata.warnings.push_back(msg.str());
    }
    state.primal = fresh;

    f = dual_value(state);
    boundary_f.push_back(f);
    ++n;
    make_record(n, 0, f, std::sqrt(cycle_moved_sq));
  }
  result.cycles = n - 1;
  return result;
}

}  // namespace distdyk
