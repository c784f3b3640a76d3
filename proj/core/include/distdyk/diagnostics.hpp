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

#ifndef DISTDYK_DIAGNOSTICS_HPP_
#define DISTDYK_DIAGNOSTICS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "distdyk/state.hpp"

namespace distdyk {

// Slack allowed when comparing successive dual values.
inline constexpr double kMonotoneSlack = 1e-12;
// Slack allowed when comparing distances against the gap bound.
inline constexpr double kGapSlack = 1e-10;

// One trace entry. Block index 0 marks a cycle boundary, i.e. the state at
// the start of cycle `cycle`; blocks within a cycle are numbered from 1.
struct TraceRecord {
  int cycle = 1;
  int block = 0;
  double f = 0.0;
  std::optional<double> gap;
  std::optional<double> dist_max;
  std::vector<double> distances;  // per vertex, empty when not tracked
  double moved = 0.0;

  bool boundary() const { return block == 0; }
};

struct TraceMetadata {
  std::optional<std::uint64_t> seed;
  std::string policy;
  std::string stop_reason;
  std::vector<std::string> warnings;
};

struct Trace {
  std::vector<TraceRecord> records;
  TraceMetadata metadata;

  // Cycle-boundary records in order.
  std::vector<TraceRecord> boundaries() const;
};

class DiagnosticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// F(z) = sum_i sigma_{C_i}(z_i) + 1/2 sum_i ||x_i||^2. Edge terms vanish
// under the sparse representation. +infinity if any cached support value is.
double dual_value(const DualState& state);

// sqrt(2F). Every ||x_i - x*|| is bounded by this on a normalized instance.
// Throws DiagnosticsError if the instance is not normalized.
double gap_bound(const DualState& state, const Instance& instance);

struct RateFit {
  double rate = 1.0;            // exp(log_slope), the per-cycle ratio
  double two_cycle_rate = 1.0;  // exp(2 * log_slope)
  double log_slope = 0.0;
  double r_squared = 0.0;
  int n_start = 0;  // fitted window (cycle numbers)
  int n_end = 0;
  int points = 0;
};

// Least-squares fit of log F against cycle number over the last
// `tail_fraction` of cycle-boundary records, dropping values at or below
// 1e2 * eps * F(first boundary). Throws DiagnosticsError when fewer than 10
// positive boundary values exist or fewer than 3 survive the floor.
RateFit fit_rate(const Trace& trace, double tail_fraction);

struct AuditEntry {
  enum class Status { kPass, kFail, kSkipped };
  std::string check;
  Status status = Status::kPass;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  bool passed() const;
};

std::string_view status_name(AuditEntry::Status status);

// Checks: monotone F over all records, F(n+1) <= F(n-1) at boundaries,
// dist_max <= gap + kGapSlack where both are present, and drift warnings.
AuditReport audit(const Trace& trace);

}  // namespace distdyk

#endif  // DISTDYK_DIAGNOSTICS_HPP_
