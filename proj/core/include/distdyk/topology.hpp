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

#ifndef DISTDYK_TOPOLOGY_HPP_
#define DISTDYK_TOPOLOGY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace distdyk {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Undirected edge stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Connected undirected simple graph. Edges keep their input order after
// canonicalization; the edge index is the position in edges().
class Graph {
 public:
  // Throws GraphError for out-of-range endpoints, self-loops, duplicates and
  // disconnected graphs.
  static Graph build(int n_vertices,
                     const std::vector<std::pair<int, int>>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_.at(index); }
  // Indices of edges incident to vertex v.
  std::span<const int> incident(int v) const { return incident_.at(v); }
  // Index of edge {a, b} in either orientation, or nullopt.
  std::optional<int> edge_index(int a, int b) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int n);  // vertex 0 is the hub
Graph complete_graph(int n);

// Parses "path:N", "cycle:N", "star:N", "complete:N" or
// "edges:N:a-b,c-d,...".
Graph parse_graph_spec(std::string_view spec);

// +1 when v is the smaller endpoint of e, -1 when it is the larger.
inline int orientation(const Edge& e, int v) { return v == e.i ? 1 : -1; }

// One element of V u E.
struct Member {
  enum class Kind : std::uint8_t { kVertex, kEdge };
  Kind kind = Kind::kVertex;
  int a = 0;  // vertex, or smaller endpoint
  int b = 0;  // larger endpoint (edges only)

  static Member vertex(int v) { return {Kind::kVertex, v, v}; }
  static Member edge(int u, int w) {
    return u < w ? Member{Kind::kEdge, u, w} : Member{Kind::kEdge, w, u};
  }
  bool is_vertex() const { return kind == Kind::kVertex; }
  std::string to_string() const;
  friend bool operator==(const Member&, const Member&) = default;
  friend auto operator<=>(const Member&, const Member&) = default;
};

using Block = std::vector<Member>;

struct Schedule {
  std::vector<std::vector<Block>> cycles;
  bool starts_with_all_vertices = false;
};

enum class SchedulePolicy {
  kCyclicVFirst,
  kSingletonCyclic,
  kRandomCoverage,
  kEdgeColoringParallel,
};

std::string_view policy_name(SchedulePolicy policy);
// Throws std::invalid_argument for unknown names.
SchedulePolicy parse_policy(std::string_view name);

Schedule make_schedule(const Graph& graph, SchedulePolicy policy,
                       int n_cycles, std::uint64_t seed = 0);

struct ScheduleViolation {
  int cycle = 0;  // 1-based
  int block = 0;  // 1-based, 0 when the violation is about coverage
  std::vector<Member> missing;
  std::vector<Member> coupled;
  std::string message;
};

// nullopt when every cycle covers V u E, every block is nonempty, valid and
// decoupled, and the starts_with_all_vertices flag is honored.
std::optional<ScheduleViolation> validate_schedule(const Graph& graph,
                                                   const Schedule& schedule);

// Empty when the block's members touch pairwise-disjoint vertices; otherwise
// the first vertex touched twice.
std::optional<int> coupled_vertex(const Block& block);

}  // namespace distdyk

#endif  // DISTDYK_TOPOLOGY_HPP_
