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

#ifndef DISTDYK_INSTANCES_HPP_
#define DISTDYK_INSTANCES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distdyk/convex_sets.hpp"
#include "distdyk/topology.hpp"

namespace distdyk {

// A feasible point together with optimality multipliers: z_i in N_{C_i}(x*)
// and sum_i z_i = |V| (anchor - x*). `multipliers` may be empty when only
// the optimum is known.
struct Certificate {
  Vec x_star;
  std::vector<Vec> multipliers;
};

enum class InstanceKind { kBalls, kHalfspaces, kBoxes, kMixed, kConsensus };

std::string_view kind_name(InstanceKind kind);
InstanceKind parse_kind(std::string_view name);

struct GeneratorParams {
  double t_lo = 0.5;  // multiplier norms drawn from [t_lo, t_hi]
  double t_hi = 2.0;
  double rho_lo = 0.5;  // ball radii drawn from [rho_lo, rho_hi]
  double rho_hi = 2.0;
  // Outward normals are drawn uniformly from the spherical cap
  // { g : <g, axis> >= cap_cos } around a seeded axis.
  double cap_cos = 0.5;
  // Draws are repeated until the distinct unit outward normals have smallest
  // singular value at least this. Zero disables the check.
  double min_singular = 0.3;
};

// Provenance of a generated instance; absent on hand-written instances.
struct SeedInfo {
  InstanceKind kind = InstanceKind::kBalls;
  std::uint64_t seed = 0;
  std::string graph;
  GeneratorParams params;
};

// Projection of the (reduced) anchor onto the intersection of per-vertex
// sets, with sets distributed over a connected graph.
struct Instance {
  int m = 0;
  Graph graph;
  std::vector<ConvexSet> sets;
  Vec anchor;
  std::optional<Certificate> certificate;
  // Original per-vertex anchors when the instance came from distinct
  // anchors; `anchor` is then their mean.
  std::optional<std::vector<Vec>> vertex_anchors;
  std::optional<SeedInfo> seed_info;

  int num_vertices() const { return graph.num_vertices(); }
  // True when the certificate places the optimum exactly at the origin.
  bool normalized() const;
};

struct AnchorReduction {
  Vec anchor;
  double objective_shift = 0.0;
};

// sum_i 1/2||x - a_i||^2 = |V| * 1/2||x - mean||^2 + objective_shift.
AnchorReduction reduce_anchors(const std::vector<Vec>& anchors);

// Builds an instance from distinct per-vertex anchors.
Instance make_instance(Graph graph, std::vector<ConvexSet> sets,
                       const std::vector<Vec>& vertex_anchors);

// Structural checks plus, when a certificate is present, feasibility of
// x*, z_i in N_{C_i}(x*) and the multiplier sum. Returns the list of
// violated conditions (empty when valid).
std::vector<std::string> check_instance(const Instance& instance,
                                        double tol = 1e-9);

Instance generate(InstanceKind kind, int m, const Graph& graph,
                  std::uint64_t seed, const GeneratorParams& params = {});

// Translates sets and anchors by -x_star so the optimum sits at the origin.
Instance normalize(const Instance& instance, const Vec& x_star);

}  // namespace distdyk

#endif  // DISTDYK_INSTANCES_HPP_
