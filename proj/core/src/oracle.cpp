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

#include "distdyk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace distdyk {
namespace {

double max_distance(std::span<const ConvexSet> sets, const Vec& x) {
  double worst = 0.0;
  for (const ConvexSet& c : sets) worst = std::max(worst, distance(c, x));
  return worst;
}

}  // namespace

OracleResult centralized_dykstra(std::span<const ConvexSet> sets,
                                 const Vec& anchor,
                                 const OracleOptions& options) {
  if (sets.empty()) throw std::invalid_argument("oracle: no sets");
  for (const ConvexSet& c : sets) {
    if (c.dim() != anchor.size()) {
      throw std::invalid_argument("oracle: dimension mismatch");
    }
  }

  OracleResult out;
  out.corrections.assign(sets.size(), Vec::Zero(anchor.size()));
  if (sets.size() == 1) {
    ProjectionResult p = project(sets[0], anchor);
    out.x_star = std::move(p.point);
    out.corrections[0] = std::move(p.normal);
    out.iterations = 1;
    return out;
  }

  Vec x = anchor;
  for (int it = 1; it <= options.max_iter; ++it) {
    double displacement = 0.0;
    for (size_t i = 0; i < sets.size(); ++i) {
      ProjectionResult p = project(sets[i], x + out.corrections[i]);
      displacement += (p.point - x).norm();
      x = std::move(p.point);
      out.corrections[i] = std::move(p.normal);
    }
    out.iterations = it;
    if (displacement <= options.tol) {
      out.x_star = x;
      out.feasibility_residual = max_distance(sets, x);
      return out;
    }
  }
  out.x_star = x;
  out.feasibility_residual = max_distance(sets, x);
  std::ostringstream msg;
  msg << "oracle: no convergence within " << options.max_iter
      << " cycles (feasibility residual " << out.feasibility_residual << ")";
  throw OracleFailure(msg.str(), std::move(out));
}

CertifyResult certify(std::span<const ConvexSet> sets, const Vec& anchor,
                      const Vec& candidate, const CertifyOptions& options) {
  CertifyResult out;
  out.feasibility_residual = max_distance(sets, candidate);
  out.feasible = out.feasibility_residual <= options.feasibility_tol;
  if (!out.feasible) return out;

  const Vec dir = anchor - candidate;
  const double scale = 1.0 + dir.norm() + candidate.norm();
  auto violation = [&](const Vec& c) { return dir.dot(c - candidate); };

  double worst = 0.0;
  // The projection of the anchor itself is always the first sample.
  try {
    worst = std::max(worst, violation(centralized_dykstra(sets, anchor).x_star));
    ++out.samples_used;
  } catch (const OracleFailure&) {
  }
  for (int k = 1; k < options.samples; ++k) {
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL +
                        static_cast<std::uint64_t>(k));
    std::normal_distribution<double> normal(0.0, 1.0);
    // Spread sample radii geometrically over four decades.
    const double radius =
        scale * std::pow(10.0, -2.0 + 4.0 * (k % 16) / 15.0);
    Vec r(candidate.size());
    for (Eigen::Index d = 0; d < r.size(); ++d) r(d) = normal(rng);
    r = candidate + radius * r;
    try {
      worst = std::max(worst, violation(centralized_dykstra(sets, r).x_star));
      ++out.samples_used;
    } catch (const OracleFailure&) {
    }
  }
  out.certificate_residual = worst;
  return out;
}

Certificate to_certificate(const OracleResult& result) {
  Certificate cert;
  cert.x_star = result.x_star;
  const double n = static_cast<double>(result.corrections.size());
  for (const Vec& p : result.corrections) cert.multipliers.push_back(n * p);
  return cert;
}

}  // namespace distdyk
