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

#include "distdyk/state.hpp"

#include <deque>

namespace distdyk {

Mat recompute_primal(const Graph& graph, const DualState& state) {
  Mat x = (-state.vertex_dual).colwise() + state.anchor;
  for (int e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    x.col(edge.i) -= state.edge_dual.col(e);
    x.col(edge.j) += state.edge_dual.col(e);
  }
  return x;
}

double primal_drift(const Graph& graph, const DualState& state) {
  const Mat diff = state.primal - recompute_primal(graph, state);
  return diff.colwise().norm().maxCoeff();
}

namespace {

// Edge duals reproducing x_i = vertex_anchors[i] from the reduced anchor.
Mat spanning_tree_flow(const Instance& inst) {
  const Graph& g = inst.graph;
  const int n = g.num_vertices();
  Mat flow = Mat::Zero(inst.m, g.num_edges());

  std::vector<int> order;
  std::vector<int> parent_edge(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int idx : g.incident(v)) {
      const Edge& e = g.edge(idx);
      const int w = e.i == v ? e.j : e.i;
      if (!seen[w]) {
        seen[w] = true;
        parent_edge[w] = idx;
        queue.push_back(w);
      }
    }
  }

  // Net orientation-weighted edge dual required at each vertex.
  Mat demand(inst.m, n);
  for (int i = 0; i < n; ++i) {
    demand.col(i) = inst.anchor - (*inst.vertex_anchors)[i];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    const int pe = parent_edge[v];
    if (pe < 0) continue;
    const Edge& e = g.edge(pe);
    const int parent = e.i == v ? e.j : e.i;
    const Vec contribution = demand.col(v);
    flow.col(pe) = orientation(e, v) * contribution;
    demand.col(parent) += contribution;
  }
  return flow;
}

}  // namespace

DualState init_state(const Instance& instance,
                     const std::optional<DualState>& warm_start) {
  const int n = instance.num_vertices();
  const int m = instance.m;
  DualState s;
  s.m = m;
  s.anchor = instance.anchor;
  if (warm_start) {
    const DualState& w = *warm_start;
    if (w.m != m || w.vertex_dual.rows() != m || w.vertex_dual.cols() != n ||
        w.edge_dual.rows() != m ||
        w.edge_dual.cols() != instance.graph.num_edges()) {
      throw StateError("warm start does not match instance dimensions");
    }
    s.vertex_dual = w.vertex_dual;
    s.edge_dual = w.edge_dual;
  } else {
    s.vertex_dual = Mat::Zero(m, n);
    s.edge_dual = instance.vertex_anchors
                      ? spanning_tree_flow(instance)
                      : Mat::Zero(m, instance.graph.num_edges());
  }
  s.primal = recompute_primal(instance.graph, s);
  s.support.resize(n);
  for (int i = 0; i < n; ++i) {
    s.support[i] = distdyk::support(instance.sets[i], s.vertex_dual.col(i));
  }
  return s;
}

}  // namespace distdyk
