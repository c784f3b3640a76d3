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

#include "distdyk_tools/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "distdyk/engine.hpp"
#include "distdyk/oracle.hpp"
#include "distdyk_tools/io.hpp"

namespace distdyk::cli {
namespace {

using io::format_double;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::FormatError("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::FormatError("cannot open " + path);
  return in;
}

Instance load_instance(const std::string& path, std::ostream& err, bool& ok) {
  Instance inst = io::instance_from_json(io::read_json_file(path));
  ok = true;
  for (const std::string& p : check_instance(inst)) {
    err << "instance: " << p << '\n';
    ok = false;
  }
  return inst;
}

void print_audit(const AuditReport& report, std::ostream& out) {
  for (const AuditEntry& e : report.entries) {
    out << e.check << ' ' << status_name(e.status);
    if (!e.detail.empty()) out << ": " << e.detail;
    out << '\n';
  }
}

}  // namespace

bool debug_from_env() {
  const char* v = std::getenv("DYKSTRA_DEBUG");
  return v != nullptr && std::string(v) == "1";
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  (void)out;
  (void)err;
  const Graph graph = parse_graph_spec(opts.graph);
  Instance inst = generate(parse_kind(opts.kind), opts.m, graph, opts.seed,
                           opts.params);
  inst.seed_info->graph = opts.graph;
  io::write_json_file(opts.out, io::instance_to_json(inst));
  return 0;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool valid = true;
  Instance inst = load_instance(cfg.instance, err, valid);
  if (!valid) return 2;
  Vec shift = Vec::Zero(inst.m);
  if (cfg.normalize) {
    if (!inst.certificate || inst.certificate->multipliers.empty()) {
      err << "run: --normalize needs a certificate with multipliers\n";
      return 2;
    }
    shift = inst.certificate->x_star;
    inst = normalize(inst, shift);
  }

  const SchedulePolicy policy = parse_policy(cfg.schedule);
  // Only random schedules differ between cycles; the others repeat.
  const int n_cycles =
      policy == SchedulePolicy::kRandomCoverage ? std::max(cfg.max_cycles, 1) : 1;
  const Schedule schedule =
      make_schedule(inst.graph, policy, n_cycles, cfg.schedule_seed);
  if (auto v = validate_schedule(inst.graph, schedule)) {
    err << "schedule: " << v->message << '\n';
    return 2;
  }

  std::optional<DualState> warm;
  if (!cfg.warm_start.empty()) {
    warm = io::state_from_json(io::read_json_file(cfg.warm_start));
  }

  StopRule stop;
  stop.max_cycles = cfg.max_cycles;
  stop.gap_eps = cfg.gap_eps;
  RunOptions options;
  options.debug = cfg.debug || debug_from_env();

  RunResult result = run(inst, schedule, stop, options, warm);
  result.trace.metadata.policy = std::string(policy_name(policy));
  const Trace& trace = result.trace;

  if (!cfg.trace.empty()) {
    auto f = open_out(cfg.trace);
    io::write_trace_jsonl(f, trace);
  }

  io::SummaryRow row;
  if (trace.metadata.seed) row.seed = std::to_string(*trace.metadata.seed);
  row.policy = trace.metadata.policy;
  row.cycles = result.cycles;
  row.final_f = trace.records.back().f;
  row.stop_reason = trace.metadata.stop_reason;
  try {
    const RateFit fit = fit_rate(trace, cfg.tail);
    row.rate = fit.rate;
    row.r2 = fit.r_squared;
  } catch (const DiagnosticsError&) {
  }
  if (!cfg.summary.empty()) {
    auto f = open_out(cfg.summary);
    io::write_summary_csv(f, row);
  }
  if (!cfg.state_out.empty()) {
    io::write_json_file(cfg.state_out, io::state_to_json(result.state));
  }

  out << "policy=" << row.policy << " cycles=" << row.cycles
      << " final_f=" << format_double(row.final_f)
      << " stop_reason=" << row.stop_reason << '\n';
  if (!cfg.compare.empty()) {
    const OracleResult ref = io::oracle_from_json(io::read_json_file(cfg.compare));
    if (ref.x_star.size() != inst.m) {
      err << "compare: oracle x_star has wrong dimension\n";
      return 2;
    }
    const double d = ((result.state.primal.colwise() + shift).colwise() - ref.x_star)
                         .colwise()
                         .norm()
                         .maxCoeff();
    out << "compare max_dist=" << format_double(d) << '\n';
  }
  for (const std::string& w : trace.metadata.warnings) err << "warning: " << w << '\n';

  const AuditReport report = audit(trace);
  if (!report.passed()) {
    err << "audit failed\n";
    print_audit(report, err);
  }
  return result.stop_satisfied && report.passed() ? 0 : 1;
}

int cmd_oracle(const OracleConfig& cfg, std::ostream& out, std::ostream& err) {
  bool valid = true;
  Instance inst = load_instance(cfg.instance, err, valid);
  if (!valid) return 2;

  OracleOptions opts;
  opts.max_iter = cfg.max_iter;
  opts.tol = cfg.tol;
  OracleResult result;
  bool converged = true;
  try {
    result = centralized_dykstra(inst.sets, inst.anchor, opts);
  } catch (const OracleFailure& f) {
    err << f.what() << '\n';
    result = f.last();
    converged = false;
  }

  CertifyOptions copts;
  copts.samples = cfg.samples;
  copts.seed = cfg.seed;
  copts.feasibility_tol = cfg.feasibility_tol;
  const CertifyResult cert = certify(inst.sets, inst.anchor, result.x_star, copts);
  if (cert.feasible) result.certificate_residual = cert.certificate_residual;

  io::write_json_file(cfg.out, io::oracle_to_json(result));
  if (!cfg.embed.empty()) {
    inst.certificate = to_certificate(result);
    io::write_json_file(cfg.embed, io::instance_to_json(inst));
  }

  const bool certified =
      cert.feasible && cert.certificate_residual <= cfg.certificate_tol;
  (cfg.out == "-" ? err : out)
      << "iterations=" << result.iterations
      << " feasibility_residual=" << format_double(cert.feasibility_residual)
      << " certificate_residual="
      << (cert.feasible ? format_double(cert.certificate_residual) : "n/a")
      << " samples=" << cert.samples_used << '\n';
  if (!cert.feasible) err << "oracle: candidate is infeasible\n";
  return converged && certified ? 0 : 1;
}

int cmd_audit(const AuditConfig& cfg, std::ostream& out, std::ostream& err) {
  auto in = open_in(cfg.trace);
  const Trace trace = io::read_trace_jsonl(in);
  const AuditReport report = audit(trace);
  print_audit(report, out);
  if (!report.passed()) {
    err << "audit failed\n";
    return 1;
  }
  return 0;
}

int cmd_rate(const RateConfig& cfg, std::ostream& out, std::ostream& err) {
  auto in = open_in(cfg.trace);
  const Trace trace = io::read_trace_jsonl(in);
  try {
    const RateFit fit = fit_rate(trace, cfg.tail);
    out << "r=" << format_double(fit.rate)
        << " r2=" << format_double(fit.r_squared)
        << " two_cycle_r=" << format_double(fit.two_cycle_rate)
        << " window=[" << fit.n_start << "," << fit.n_end << "]"
        << " points=" << fit.points << '\n';
  } catch (const DiagnosticsError& e) {
    err << "rate: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace distdyk::cli
