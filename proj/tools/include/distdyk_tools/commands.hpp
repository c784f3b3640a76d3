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

#ifndef DISTDYK_TOOLS_COMMANDS_HPP_
#define DISTDYK_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "distdyk/instances.hpp"

// Subcommand bodies of the `distdyk` executable. Each returns the process
// exit code and writes human-readable output to `out`, diagnostics to `err`.
namespace distdyk::cli {

struct GenOptions {
  std::string kind;
  int m = 2;
  std::string graph;
  std::uint64_t seed = 0;
  GeneratorParams params;
  std::string out = "-";
};

struct RunConfig {
  std::string instance;
  std::string schedule = "cyclic_v_first";
  std::uint64_t schedule_seed = 0;
  int max_cycles = 10000;
  double gap_eps = 1e-8;
  double tail = 0.5;
  std::string trace;
  std::string summary;
  bool debug = false;
  // Translate the instance by its certificate's x_star before running, so
  // the gap stop rule applies. Reported iterates are translated back.
  bool normalize = false;
  std::string compare;
  std::string warm_start;
  std::string state_out;
};

struct OracleConfig {
  std::string instance;
  int max_iter = 100000;
  double tol = 1e-13;
  int samples = 64;
  std::uint64_t seed = 0;
  double feasibility_tol = 1e-6;
  double certificate_tol = 1e-6;
  std::string out = "-";
  std::string embed;
};

struct AuditConfig {
  std::string trace;
};

struct RateConfig {
  std::string trace;
  double tail = 0.5;
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_audit(const AuditConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rate(const RateConfig& cfg, std::ostream& out, std::ostream& err);

// True when DYKSTRA_DEBUG=1 is set in the environment.
bool debug_from_env();

}  // namespace distdyk::cli

#endif  // DISTDYK_TOOLS_COMMANDS_HPP_
