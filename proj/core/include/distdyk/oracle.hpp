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

#ifndef DISTDYK_ORACLE_HPP_
#define DISTDYK_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "distdyk/instances.hpp"

namespace distdyk {

// Centralized reference solver: classical serial Dykstra over the sets,
// sharing nothing with the distributed engine except the projections.

struct OracleOptions {
  int max_iter = 100000;  // cycles through all sets
  double tol = 1e-13;     // stop when the cycle's total displacement <= tol
};

struct OracleResult {
  Vec x_star;
  int iterations = 0;
  double feasibility_residual = 0.0;  // max_i dist(x_star, C_i)
  // Filled by certify(); absent until then.
  std::optional<double> certificate_residual;
  // Dykstra correction vectors; they sum to anchor - x_star.
  std::vector<Vec> corrections;
};

class OracleFailure : public std::runtime_error {
 public:
  OracleFailure(const std::string& what, OracleResult last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const OracleResult& last() const { return last_; }

 private:
  OracleResult last_;
};

// Throws OracleFailure when max_iter is reached first.
OracleResult centralized_dykstra(std::span<const ConvexSet> sets,
                                 const Vec& anchor,
                                 const OracleOptions& options = {});

struct CertifyOptions {
  int samples = 64;
  std::uint64_t seed = 0;
  double feasibility_tol = 1e-6;
};

struct CertifyResult {
  bool feasible = false;
  double feasibility_residual = 0.0;
  // max(0, max_c <anchor - x, c - x>) over sampled feasible points c.
  // Only meaningful when feasible.
  double certificate_residual = 0.0;
  int samples_used = 0;
};

// Variational-inequality check of `candidate` as the projection of `anchor`
// onto the intersection. Infeasible candidates are reported without
// sampling.
CertifyResult certify(std::span<const ConvexSet> sets, const Vec& anchor,
                      const Vec& candidate, const CertifyOptions& options = {});

// Certificate for the instance built from an oracle solution: x* plus
// multipliers |V| * corrections.
Certificate to_certificate(const OracleResult& result);

}  // namespace distdyk

#endif  // DISTDYK_ORACLE_HPP_
