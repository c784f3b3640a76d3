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

#include "distdyk/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace distdyk {

std::string_view kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kBalls:
      return "balls";
    case InstanceKind::kHalfspaces:
      return "halfspaces";
    case InstanceKind::kBoxes:
      return "boxes";
    case InstanceKind::kMixed:
      return "mixed";
    case InstanceKind::kConsensus:
      return "consensus";
  }
  return "unknown";
}

InstanceKind parse_kind(std::string_view name) {
  for (auto k : {InstanceKind::kBalls, InstanceKind::kHalfspaces,
                 InstanceKind::kBoxes, InstanceKind::kMixed,
                 InstanceKind::kConsensus}) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown instance kind '" + std::string(name) +
                              "'");
}

bool Instance::normalized() const {
  return certificate.has_value() && certificate->x_star.size() == m &&
         (m == 0 || certificate->x_star.cwiseAbs().maxCoeff() == 0.0);
}

AnchorReduction reduce_anchors(const std::vector<Vec>& anchors) {
  if (anchors.empty()) throw std::invalid_argument("reduce_anchors: no anchors");
  const Eigen::Index m = anchors.front().size();
  Vec sum = Vec::Zero(m);
  for (const Vec& a : anchors) {
    if (a.size() != m) {
      throw std::invalid_argument("reduce_anchors: dimension mismatch");
    }
    sum += a;
  }
  AnchorReduction out;
  out.anchor = sum / static_cast<double>(anchors.size());
  const double half_mean_sq = 0.5 * out.anchor.squaredNorm();
  for (const Vec& a : anchors) {
    out.objective_shift += 0.5 * a.squaredNorm() - half_mean_sq;
  }
  return out;
}

Instance make_instance(Graph graph, std::vector<ConvexSet> sets,
                       const std::vector<Vec>& vertex_anchors) {
  if (static_cast<int>(vertex_anchors.size()) != graph.num_vertices()) {
    throw std::invalid_argument("make_instance: one anchor per vertex required");
  }
  Instance inst;
  inst.m = static_cast<int>(vertex_anchors.front().size());
  inst.anchor = reduce_anchors(vertex_anchors).anchor;
  inst.graph = std::move(graph);
  inst.sets = std::move(sets);
  bool distinct = false;
  for (const Vec& a : vertex_anchors) distinct |= (a != vertex_anchors.front());
  if (distinct) inst.vertex_anchors = vertex_anchors;
  return inst;
}

std::vector<std::string> check_instance(const Instance& inst, double tol) {
  std::vector<std::string> problems;
  const int n = inst.num_vertices();
  if (inst.m < 1) problems.push_back("dimension must be positive");
  if (static_cast<int>(inst.sets.size()) != n) {
    problems.push_back("expected one set per vertex");
    return problems;
  }
  for (int i = 0; i < n; ++i) {
    if (inst.sets[i].dim() != inst.m) {
      problems.push_back("set " + std::to_string(i) + " has wrong dimension");
    }
  }
  if (inst.anchor.size() != inst.m) problems.push_back("anchor has wrong dimension");
  if (inst.vertex_anchors) {
    if (static_cast<int>(inst.vertex_anchors->size()) != n) {
      problems.push_back("expected one vertex anchor per vertex");
    } else {
      for (const Vec& a : *inst.vertex_anchors) {
        if (a.size() != inst.m) problems.push_back("vertex anchor has wrong dimension");
      }
    }
  }
  if (!problems.empty() || !inst.certificate) return problems;

  const Certificate& cert = *inst.certificate;
  if (cert.x_star.size() != inst.m) {
    problems.push_back("certificate x_star has wrong dimension");
    return problems;
  }
  const double xs_scale = 1.0 + cert.x_star.norm();
  for (int i = 0; i < n; ++i) {
    const double d = distance(inst.sets[i], cert.x_star);
    if (d > tol * xs_scale) {
      std::ostringstream msg;
      msg << "x_star violates set " << i << " by " << d;
      problems.push_back(msg.str());
    }
  }
  if (cert.multipliers.empty()) return problems;
  if (static_cast<int>(cert.multipliers.size()) != n) {
    problems.push_back("expected one multiplier per vertex");
    return problems;
  }
  Vec total = Vec::Zero(inst.m);
  double mult_scale = 1.0;
  for (int i = 0; i < n; ++i) {
    const Vec& z = cert.multipliers[i];
    if (z.size() != inst.m) {
      problems.push_back("multiplier " + std::to_string(i) +
                         " has wrong dimension");
      return problems;
    }
    const double r = normal_residual(inst.sets[i], cert.x_star, z);
    if (r > tol * (1.0 + z.norm())) {
      std::ostringstream msg;
      msg << "multiplier " << i << " is not in the normal cone (residual " << r
          << ")";
      problems.push_back(msg.str());
    }
    total += z;
    mult_scale += z.norm();
  }
  const Vec target = static_cast<double>(n) * (inst.anchor - cert.x_star);
  const double gap = (total - target).norm();
  if (gap > tol * mult_scale) {
    std::ostringstream msg;
    msg << "multipliers do not sum to |V|(anchor - x_star) (off by " << gap
        << ")";
    problems.push_back(msg.str());
  }
  return problems;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Vec gaussian(int m) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(m);
    for (int k = 0; k < m; ++k) v(k) = normal(rng_);
    return v;
  }

  Vec unit(int m) {
    while (true) {
      Vec v = gaussian(m);
      const double n = v.norm();
      if (n > 1e-12) return v / n;
    }
  }

 private:
  std::mt19937_64 rng_;
};

enum class SetFamily { kHalfspace, kBall, kBox, kPolyhedron };

constexpr int kMaxCapDraws = 1'000'000;
constexpr int kMaxConditioningDraws = 100'000;

// Smallest singular value of the matrix whose columns are the distinct
// directions among `normals`.
double distinct_normal_conditioning(const std::vector<Vec>& normals) {
  std::vector<Vec> distinct;
  for (const Vec& z : normals) {
    const Vec u = z.normalized();
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const Vec& d) { return (d - u).norm() < 1e-12; });
    if (!seen) distinct.push_back(u);
  }
  Mat cols(distinct.front().size(), static_cast<Eigen::Index>(distinct.size()));
  for (size_t k = 0; k < distinct.size(); ++k) cols.col(k) = distinct[k];
  return Eigen::JacobiSVD<Mat>(cols).singularValues().minCoeff();
}

struct VertexDraw {
  ConvexSet set;
  Vec multiplier;
};

// Builds a set through the origin whose outward normal there is `outward`
// (or the axis nearest to it, for boxes).
VertexDraw draw_vertex(SetFamily family, const Vec& axis, int m, Sampler& s,
                       const GeneratorParams& p) {
  const double axis_floor = p.cap_cos / std::sqrt(static_cast<double>(m));
  for (int attempt = 0; attempt < kMaxCapDraws; ++attempt) {
    const Vec g = s.unit(m);
    if (g.dot(axis) < p.cap_cos) continue;

    Vec normal = g;
    Eigen::Index k = 0;
    if (family == SetFamily::kBox) {
      g.cwiseAbs().maxCoeff(&k);
      normal = Vec::Zero(m);
      normal(k) = g(k) > 0.0 ? 1.0 : -1.0;
      if (normal.dot(axis) < axis_floor) continue;
    }
    const double t = s.uniform(p.t_lo, p.t_hi);
    Vec z = t * normal;

    switch (family) {
      case SetFamily::kHalfspace:
        return {ConvexSet::halfspace(g, 0.0), std::move(z)};
      case SetFamily::kBall: {
        const double rho = s.uniform(p.rho_lo, p.rho_hi);
        Vec center = -rho * g;
        // The radius is the computed norm of the center, the same quantity
        // projection and support compare against, so the origin lies on the
        // sphere as the numerics see it.
        const double radius = center.norm();
        return {ConvexSet::ball(std::move(center), radius), std::move(z)};
      }
      case SetFamily::kBox: {
        Vec lower(m), upper(m);
        for (int c = 0; c < m; ++c) {
          lower(c) = -s.uniform(1.0, 3.0);
          upper(c) = s.uniform(1.0, 3.0);
        }
        if (normal(k) > 0.0) {
          upper(k) = 0.0;
        } else {
          lower(k) = 0.0;
        }
        return {ConvexSet::box(std::move(lower), std::move(upper)), std::move(z)};
      }
      case SetFamily::kPolyhedron: {
        constexpr int kRows = 3;
        Mat rows(kRows, m);
        Vec rhs(kRows);
        rows.row(0) = g.transpose();
        rhs(0) = 0.0;
        for (int r = 1; r < kRows; ++r) {
          rows.row(r) = s.unit(m).transpose();
          rhs(r) = s.uniform(0.5, 2.0);
        }
        return {ConvexSet::polyhedron(std::move(rows), std::move(rhs)),
                std::move(z)};
      }
    }
  }
  throw std::runtime_error("generate: could not draw a normal inside the cap");
}

}  // namespace

Instance generate(InstanceKind kind, int m, const Graph& graph,
                  std::uint64_t seed, const GeneratorParams& params) {
  if (m < 1) throw std::invalid_argument("generate: m must be positive");
  if (!(params.t_lo > 0.0) || params.t_hi < params.t_lo) {
    throw std::invalid_argument("generate: need 0 < t_lo <= t_hi");
  }
  if (!(params.rho_lo > 0.0) || params.rho_hi < params.rho_lo) {
    throw std::invalid_argument("generate: need 0 < rho_lo <= rho_hi");
  }
  if (!(params.min_singular >= 0.0) || params.min_singular >= 1.0) {
    throw std::invalid_argument("generate: min_singular must lie in [0, 1)");
  }
  if (!(params.cap_cos > 0.0) || params.cap_cos > 1.0) {
    throw std::invalid_argument("generate: cap_cos must lie in (0, 1]");
  }

  const int n = graph.num_vertices();
  Sampler sampler(seed);
  Instance inst;
  inst.m = m;
  inst.graph = graph;
  inst.seed_info = SeedInfo{kind, seed, {}, params};

  if (kind == InstanceKind::kConsensus) {
    std::vector<Vec> anchors;
    for (int i = 0; i < n; ++i) anchors.push_back(sampler.gaussian(m));
    inst.sets.assign(n, ConvexSet::whole_space(m));
    inst.anchor = reduce_anchors(anchors).anchor;
    inst.vertex_anchors = std::move(anchors);
    inst.certificate =
        Certificate{inst.anchor, std::vector<Vec>(n, Vec::Zero(m))};
    return inst;
  }

  const Vec axis = sampler.unit(m);
  std::vector<Vec> multipliers;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxConditioningDraws) {
      throw std::runtime_error(
          "generate: no draw met the normal conditioning floor");
    }
    inst.sets.clear();
    multipliers.clear();
    for (int i = 0; i < n; ++i) {
      SetFamily family = SetFamily::kHalfspace;
      switch (kind) {
        case InstanceKind::kBalls:
          family = SetFamily::kBall;
          break;
        case InstanceKind::kHalfspaces:
          family = SetFamily::kHalfspace;
          break;
        case InstanceKind::kBoxes:
          family = SetFamily::kBox;
          break;
        default:
          family = static_cast<SetFamily>(sampler.index(4));
          break;
      }
      VertexDraw draw = draw_vertex(family, axis, m, sampler, params);
      inst.sets.push_back(std::move(draw.set));
      multipliers.push_back(std::move(draw.multiplier));
    }
    if (distinct_normal_conditioning(multipliers) >= params.min_singular) break;
  }
  Vec total = Vec::Zero(m);
  for (const Vec& z : multipliers) total += z;
  inst.anchor = total / static_cast<double>(n);
  inst.certificate = Certificate{Vec::Zero(m), std::move(multipliers)};
  return inst;
}

Instance normalize(const Instance& instance, const Vec& x_star) {
  if (x_star.size() != instance.m) {
    throw std::invalid_argument("normalize: dimension mismatch");
  }
  Instance out = instance;
  const Vec shift = -x_star;
  for (ConvexSet& s : out.sets) s = s.translated(shift);
  out.anchor = instance.anchor - x_star;
  if (out.vertex_anchors) {
    for (Vec& a : *out.vertex_anchors) a -= x_star;
  }
  if (out.certificate) {
    out.certificate->x_star = instance.certificate->x_star - x_star;
  } else {
    out.certificate = Certificate{Vec::Zero(instance.m), {}};
  }
  return out;
}

}  // namespace distdyk
