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

#ifndef DISTDYK_STATE_HPP_
#define DISTDYK_STATE_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "distdyk/instances.hpp"

namespace distdyk {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sparse dual variables of the lifted problem.
//
// Column i of `vertex_dual` is the only nonzero block of the vertex dual for
// i. Column e of `edge_dual` is v_e for edge e = (i, j), i < j; the edge dual
// is +v_e on coordinate i and -v_e on coordinate j and zero elsewhere, so the
// sparsity pattern and the pairwise cancellation hold by construction.
//
// `primal` caches x = anchor - sum of all duals, one column per vertex:
//   x_i = anchor - z_i - sum_{e ∋ i} orientation(e, i) * v_e.
// `support` caches sigma_{C_i}(z_i) per vertex.
struct DualState {
  int m = 0;
  Mat vertex_dual;
  Mat edge_dual;
  Vec anchor;
  Mat primal;
  std::vector<double> support;
};

// x recomputed from the duals alone.
Mat recompute_primal(const Graph& graph, const DualState& state);

// Max over vertices of ||maintained x_i - recomputed x_i||.
double primal_drift(const Graph& graph, const DualState& state);

// Default start: all duals zero, x_i = anchor. When the instance carries
// distinct per-vertex anchors, the edge duals instead start at a spanning
// tree flow so that x_i equals vertex i's own anchor. A warm start has its
// primal image and support cache recomputed from its duals.
DualState init_state(const Instance& instance,
                     const std::optional<DualState>& warm_start = std::nullopt);

}  // namespace distdyk

#endif  // DISTDYK_STATE_HPP_
