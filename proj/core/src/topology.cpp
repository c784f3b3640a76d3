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

#include "distdyk/topology.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace distdyk {

Graph Graph::build(int n_vertices,
                   const std::vector<std::pair<int, int>>& edges) {
  if (n_vertices < 1) throw GraphError("graph needs at least one vertex");
  Graph g;
  g.n_ = n_vertices;
  g.incident_.assign(n_vertices, {});
  std::set<Edge> seen;
  for (auto [u, w] : edges) {
    if (u < 0 || w < 0 || u >= n_vertices || w >= n_vertices) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(w) +
                       ") has an endpoint out of range");
    }
    if (u == w) {
      throw GraphError("self-loop (" + std::to_string(u) + "," + std::to_string(u) + ")");
    }
    const Edge e{std::min(u, w), std::max(u, w)};
    if (!seen.insert(e).second) {
      throw GraphError("duplicate edge (" + std::to_string(e.i) + "," +
                       std::to_string(e.j) + ")");
    }
    const int index = static_cast<int>(g.edges_.size());
    g.edges_.push_back(e);
    g.incident_[e.i].push_back(index);
    g.incident_[e.j].push_back(index);
  }

  std::vector<bool> reached(n_vertices, false);
  std::deque<int> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int idx : g.incident_[v]) {
      const Edge& e = g.edges_[idx];
      const int other = e.i == v ? e.j : e.i;
      if (!reached[other]) {
        reached[other] = true;
        queue.push_back(other);
      }
    }
  }
  for (int v = 0; v < n_vertices; ++v) {
    if (!reached[v]) {
      throw GraphError("graph is disconnected: vertex " + std::to_string(v) +
                       " unreachable from vertex 0");
    }
  }
  return g;
}

std::optional<int> Graph::edge_index(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return std::nullopt;
  const Edge key{std::min(a, b), std::max(a, b)};
  for (int idx : incident_[key.i]) {
    if (edges_[idx] == key) return idx;
  }
  return std::nullopt;
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::build(n, e);
}

Graph cycle_graph(int n) {
  if (n < 3) throw GraphError("cycle graph needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(n - 1, 0);
  return Graph::build(n, e);
}

Graph star_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph::build(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) e.emplace_back(u, w);
  }
  return Graph::build(n, e);
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw GraphError("invalid " + std::string(what) + " '" +
                     std::string(text) + "' in graph spec");
  }
  return value;
}

}  // namespace

Graph parse_graph_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw GraphError("graph spec '" + std::string(spec) +
                     "' must look like kind:N");
  }
  const std::string_view kind = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  if (kind == "edges") {
    const auto colon2 = rest.find(':');
    const int n = parse_int(rest.substr(0, colon2), "vertex count");
    std::vector<std::pair<int, int>> edges;
    if (colon2 != std::string_view::npos) {
      std::string_view list = rest.substr(colon2 + 1);
      while (!list.empty()) {
        const auto comma = list.find(',');
        const std::string_view item = list.substr(0, comma);
        const auto dash = item.find('-');
        if (dash == std::string_view::npos) {
          throw GraphError("edge '" + std::string(item) + "' must be a-b");
        }
        edges.emplace_back(parse_int(item.substr(0, dash), "endpoint"),
                           parse_int(item.substr(dash + 1), "endpoint"));
        if (comma == std::string_view::npos) break;
        list = list.substr(comma + 1);
      }
    }
    return Graph::build(n, edges);
  }
  const int n = parse_int(rest, "vertex count");
  if (n < 1) throw GraphError("graph spec needs a positive vertex count");
  if (kind == "path") return path_graph(n);
  if (kind == "cycle") return cycle_graph(n);
  if (kind == "star") return star_graph(n);
  if (kind == "complete") return complete_graph(n);
  throw GraphError("unknown graph kind '" + std::string(kind) + "'");
}

std::string Member::to_string() const {
  if (is_vertex()) return "Vertex(" + std::to_string(a) + ")";
  return "Edge(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string_view policy_name(SchedulePolicy policy) {
  switch (policy) {
    case SchedulePolicy::kCyclicVFirst:
      return "cyclic_v_first";
    case SchedulePolicy::kSingletonCyclic:
      return "singleton_cyclic";
    case SchedulePolicy::kRandomCoverage:
      return "random_coverage";
    case SchedulePolicy::kEdgeColoringParallel:
      return "edge_coloring_parallel";
  }
  return "unknown";
}

SchedulePolicy parse_policy(std::string_view name) {
  for (auto p : {SchedulePolicy::kCyclicVFirst, SchedulePolicy::kSingletonCyclic,
                 SchedulePolicy::kRandomCoverage,
                 SchedulePolicy::kEdgeColoringParallel}) {
    if (policy_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown schedule policy '" + std::string(name) +
                              "'");
}

namespace {

Block all_vertices(const Graph& g) {
  Block b;
  for (int v = 0; v < g.num_vertices(); ++v) b.push_back(Member::vertex(v));
  return b;
}

std::vector<Block> singleton_cycle(const Graph& g) {
  std::vector<Block> cycle;
  for (int v = 0; v < g.num_vertices(); ++v) cycle.push_back({Member::vertex(v)});
  for (const Edge& e : g.edges()) cycle.push_back({Member::edge(e.i, e.j)});
  return cycle;
}

// Greedy proper edge coloring in canonical edge order.
std::vector<Block> color_edges(const Graph& g) {
  std::vector<Block> classes;
  std::vector<std::vector<bool>> used;
  for (const Edge& e : g.edges()) {
    size_t c = 0;
    while (c < classes.size() && (used[c][e.i] || used[c][e.j])) ++c;
    if (c == classes.size()) {
      classes.emplace_back();
      used.emplace_back(g.num_vertices(), false);
    }
    classes[c].push_back(Member::edge(e.i, e.j));
    used[c][e.i] = used[c][e.j] = true;
  }
  return classes;
}

}  // namespace

Schedule make_schedule(const Graph& graph, SchedulePolicy policy, int n_cycles,
                       std::uint64_t seed) {
  if (n_cycles < 1) throw std::invalid_argument("n_cycles must be positive");
  Schedule schedule;
  schedule.starts_with_all_vertices =
      policy == SchedulePolicy::kCyclicVFirst ||
      policy == SchedulePolicy::kEdgeColoringParallel;

  std::vector<Block> base;
  switch (policy) {
    case SchedulePolicy::kCyclicVFirst:
      base.push_back(all_vertices(graph));
      for (const Edge& e : graph.edges()) base.push_back({Member::edge(e.i, e.j)});
      break;
    case SchedulePolicy::kSingletonCyclic:
    case SchedulePolicy::kRandomCoverage:
      base = singleton_cycle(graph);
      break;
    case SchedulePolicy::kEdgeColoringParallel:
      base.push_back(all_vertices(graph));
      for (Block& b : color_edges(graph)) base.push_back(std::move(b));
      break;
  }

  std::mt19937_64 rng(seed);
  schedule.cycles.reserve(n_cycles);
  for (int n = 0; n < n_cycles; ++n) {
    schedule.cycles.push_back(base);
    if (policy == SchedulePolicy::kRandomCoverage) {
      std::shuffle(schedule.cycles.back().begin(), schedule.cycles.back().end(),
                   rng);
    }
  }
  return schedule;
}

std::optional<int> coupled_vertex(const Block& block) {
  std::set<int> touched;
  for (const Member& m : block) {
    if (!touched.insert(m.a).second) return m.a;
    if (!m.is_vertex() && !touched.insert(m.b).second) return m.b;
  }
  return std::nullopt;
}

std::optional<ScheduleViolation> validate_schedule(const Graph& graph,
                                                   const Schedule& schedule) {
  if (schedule.cycles.empty()) {
    return ScheduleViolation{0, 0, {}, {}, "schedule has no cycles"};
  }
  for (size_t c = 0; c < schedule.cycles.size(); ++c) {
    const int cycle_no = static_cast<int>(c) + 1;
    const auto& cycle = schedule.cycles[c];
    std::vector<bool> vertex_seen(graph.num_vertices(), false);
    std::vector<bool> edge_seen(graph.num_edges(), false);

    for (size_t b = 0; b < cycle.size(); ++b) {
      const int block_no = static_cast<int>(b) + 1;
      const Block& block = cycle[b];
      ScheduleViolation v{cycle_no, block_no, {}, {}, {}};
      if (block.empty()) {
        v.message = "cycle " + std::to_string(cycle_no) + " block " +
                    std::to_string(block_no) + " is empty";
        return v;
      }
      for (const Member& m : block) {
        if (m.is_vertex()) {
          if (m.a < 0 || m.a >= graph.num_vertices()) {
            v.message = "cycle " + std::to_string(cycle_no) + ": " +
                        m.to_string() + " is not a vertex of the graph";
            return v;
          }
          vertex_seen[m.a] = true;
        } else {
          const auto idx = graph.edge_index(m.a, m.b);
          if (!idx) {
            v.message = "cycle " + std::to_string(cycle_no) + ": " +
                        m.to_string() + " is not an edge of the graph";
            return v;
          }
          edge_seen[*idx] = true;
        }
      }
      if (auto coord = coupled_vertex(block)) {
        for (const Member& m : block) {
          if (m.a == *coord || (!m.is_vertex() && m.b == *coord)) {
            v.coupled.push_back(m);
          }
        }
        std::ostringstream msg;
        msg << "cycle " << cycle_no << " block " << block_no
            << ": coupled on coordinate " << *coord << " {";
        for (size_t i = 0; i < v.coupled.size(); ++i) {
          msg << (i ? ", " : "") << v.coupled[i].to_string();
        }
        msg << "}";
        v.message = msg.str();
        return v;
      }
    }

    if (schedule.starts_with_all_vertices) {
      std::vector<Member> first = cycle.front();
      std::sort(first.begin(), first.end());
      Block expected = all_vertices(graph);
      if (first != expected) {
        return ScheduleViolation{
            cycle_no, 1, {}, {},
            "cycle " + std::to_string(cycle_no) +
                " does not start with the all-vertex block"};
      }
    }

    ScheduleViolation v{cycle_no, 0, {}, {}, {}};
    for (int i = 0; i < graph.num_vertices(); ++i) {
      if (!vertex_seen[i]) v.missing.push_back(Member::vertex(i));
    }
    for (int e = 0; e < graph.num_edges(); ++e) {
      if (!edge_seen[e]) {
        v.missing.push_back(Member::edge(graph.edge(e).i, graph.edge(e).j));
      }
    }
    if (!v.missing.empty()) {
      std::ostringstream msg;
      msg << "cycle " << cycle_no << " misses ";
      for (size_t i = 0; i < v.missing.size(); ++i) {
        msg << (i ? ", " : "") << v.missing[i].to_string();
      }
      v.message = msg.str();
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace distdyk
