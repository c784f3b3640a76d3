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

#ifndef DISTDYK_ENGINE_HPP_
#define DISTDYK_ENGINE_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "distdyk/diagnostics.hpp"
#include "distdyk/state.hpp"
#include "distdyk/topology.hpp"

namespace distdyk {

// Raised by debug-mode cross-checks.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StepReport {
  Block block;
  double f_before = 0.0;
  double f_after = 0.0;
  double moved = 0.0;  // ||change of the primal image over the block||
};

// Local kernels. Each receives only the slices of the state it may touch.
namespace kernels {

struct VertexUpdate {
  double support = 0.0;
  double moved = 0.0;
};

// Proximal step at one vertex: s = x + z, x <- P_C(s), z <- s - x.
VertexUpdate vertex_prox(const ConvexSet& set, Eigen::Ref<Vec> x,
                         Eigen::Ref<Vec> z);

// Exact minimization over the dual of edge (i, j), i < j. With the edge's
// contribution removed, r_i = x_i + v and r_j = x_j - v; both endpoints move
// to the midpoint and v <- (r_i - r_j) / 2. Returns the primal movement.
double edge_average(Eigen::Ref<Vec> x_i, Eigen::Ref<Vec> x_j,
                    Eigen::Ref<Vec> v);

}  // namespace kernels

struct StepOptions {
  bool debug = false;  // cross-check invariants after each step
};

StepReport vertex_step(DualState& state, const Instance& instance, int vertex,
                       const StepOptions& options = {});
StepReport edge_step(DualState& state, const Instance& instance,
                     int edge_index, const StepOptions& options = {});
// Throws std::invalid_argument for coupled blocks or unknown members.
StepReport run_block(DualState& state, const Instance& instance,
                     const Block& block, const StepOptions& options = {});

struct StopRule {
  int max_cycles = 10000;
  // Normalized instances stop once 2F <= gap_eps^2.
  double gap_eps = 1e-8;
  // Otherwise stop when F decreased by less than plateau_rel * |F| over
  // plateau_window cycles.
  double plateau_rel = 1e-15;
  int plateau_window = 10;
};

struct RunOptions {
  bool debug = false;
  // Relative drift between maintained and recomputed primal images that
  // triggers a trace warning.
  double drift_tol = 1e-8;
};

struct RunResult {
  DualState state;
  Trace trace;
  int cycles = 0;
  bool stop_satisfied = false;  // false when max_cycles was hit
};

// Runs cycles of the schedule (repeating it when shorter than the run)
// until the stop rule fires. Records every block and every cycle boundary.
RunResult run(const Instance& instance, const Schedule& schedule,
              const StopRule& stop = {}, const RunOptions& options = {},
              const std::optional<DualState>& warm_start = std::nullopt);

}  // namespace distdyk

#endif  // DISTDYK_ENGINE_HPP_
