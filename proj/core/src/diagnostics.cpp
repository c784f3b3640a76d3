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

#include "distdyk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace distdyk {

std::vector<TraceRecord> Trace::boundaries() const {
  std::vector<TraceRecord> out;
  for (const TraceRecord& r : records) {
    if (r.boundary()) out.push_back(r);
  }
  return out;
}

double dual_value(const DualState& state) {
  double f = 0.0;
  for (double s : state.support) {
    if (std::isinf(s)) return std::numeric_limits<double>::infinity();
    f += s;
  }
  return f + 0.5 * state.primal.squaredNorm();
}

double gap_bound(const DualState& state, const Instance& instance) {
  if (!instance.normalized()) {
    throw DiagnosticsError(
        "gap bound needs a normalized instance (certified optimum at 0)");
  }
  return std::sqrt(2.0 * std::max(0.0, dual_value(state)));
}

RateFit fit_rate(const Trace& trace, double tail_fraction) {
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw DiagnosticsError("tail fraction must lie in (0, 1]");
  }
  const std::vector<TraceRecord> b = trace.boundaries();
  const auto positive = std::count_if(
      b.begin(), b.end(), [](const TraceRecord& r) { return r.f > 0.0; });
  if (positive < 10) {
    throw DiagnosticsError("rate fit needs at least 10 cycle-boundary records "
                           "with positive F (have " +
                           std::to_string(positive) + ")");
  }
  const double floor =
      1e2 * std::numeric_limits<double>::epsilon() * std::max(0.0, b.front().f);
  const size_t count = static_cast<size_t>(
      std::ceil(tail_fraction * static_cast<double>(b.size())));
  const size_t first = b.size() - std::min(count, b.size());

  std::vector<double> xs, ys;
  for (size_t k = first; k < b.size(); ++k) {
    if (b[k].f > floor && std::isfinite(b[k].f)) {
      xs.push_back(b[k].cycle);
      ys.push_back(std::log(b[k].f));
    }
  }
  if (xs.size() < 3) {
    throw DiagnosticsError("rate fit: fewer than 3 usable points in the tail");
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  RateFit fit;
  fit.log_slope = sxy / sxx;
  double ss_res = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    const double pred = my + fit.log_slope * (xs[k] - mx);
    ss_res += (ys[k] - pred) * (ys[k] - pred);
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 0.0;
  fit.rate = std::exp(fit.log_slope);
  fit.two_cycle_rate = std::exp(2.0 * fit.log_slope);
  fit.n_start = static_cast<int>(xs.front());
  fit.n_end = static_cast<int>(xs.back());
  fit.points = static_cast<int>(xs.size());
  return fit;
}

bool AuditReport::passed() const {
  return std::none_of(entries.begin(), entries.end(), [](const AuditEntry& e) {
    return e.status == AuditEntry::Status::kFail;
  });
}

std::string_view status_name(AuditEntry::Status status) {
  switch (status) {
    case AuditEntry::Status::kPass:
      return "pass";
    case AuditEntry::Status::kFail:
      return "fail";
    case AuditEntry::Status::kSkipped:
      return "skipped";
  }
  return "unknown";
}

namespace {

bool not_above(double later, double earlier) {
  return later <= earlier + kMonotoneSlack * (1.0 + std::abs(earlier));
}

std::string at_record(size_t index, const TraceRecord& r) {
  std::ostringstream s;
  s.precision(17);
  s << "record " << index << " (n=" << r.cycle << ", w=" << r.block
    << ", f=" << r.f << ")";
  return s.str();
}

}  // namespace

AuditReport audit(const Trace& trace) {
  using Status = AuditEntry::Status;
  AuditReport report;

  AuditEntry mono{"monotone_f", Status::kPass, ""};
  if (trace.records.size() < 2) {
    mono.status = Status::kSkipped;
    mono.detail = "fewer than two records";
  }
  for (size_t k = 1; k < trace.records.size(); ++k) {
    const double prev = trace.records[k - 1].f;
    const double cur = trace.records[k].f;
    if (std::isnan(cur) || !not_above(cur, prev)) {
      mono.status = Status::kFail;
      mono.detail = "F increased at " + at_record(k, trace.records[k]);
      break;
    }
  }
  report.entries.push_back(mono);

  AuditEntry two{"two_cycle_decrease", Status::kPass, ""};
  const std::vector<TraceRecord> b = trace.boundaries();
  if (b.size() < 3) {
    two.status = Status::kSkipped;
    two.detail = "fewer than three cycle boundaries";
  }
  for (size_t k = 2; k < b.size(); ++k) {
    if (!not_above(b[k].f, b[k - 2].f)) {
      two.status = Status::kFail;
      two.detail = "F(n+1) > F(n-1) at cycle " + std::to_string(b[k].cycle);
      break;
    }
  }
  report.entries.push_back(two);

  AuditEntry gap{"gap_dominates_distance", Status::kPass, ""};
  size_t checked = 0;
  for (size_t k = 0; k < trace.records.size(); ++k) {
    const TraceRecord& r = trace.records[k];
    if (!r.gap || !r.dist_max) continue;
    ++checked;
    if (!(*r.dist_max <= *r.gap + kGapSlack)) {
      gap.status = Status::kFail;
      std::ostringstream s;
      s.precision(17);
      s << "dist_max " << *r.dist_max << " exceeds gap bound " << *r.gap
        << " at " << at_record(k, r);
      gap.detail = s.str();
      break;
    }
  }
  if (checked == 0) {
    gap.status = Status::kSkipped;
    gap.detail = "no records carry both gap and distances";
  }
  report.entries.push_back(gap);

  AuditEntry drift{"drift_warnings", Status::kPass, "none recorded"};
  if (!trace.metadata.warnings.empty()) {
    drift.status = Status::kFail;
    drift.detail = trace.metadata.warnings.front();
  }
  report.entries.push_back(drift);
  return report;
}

}  // namespace distdyk
