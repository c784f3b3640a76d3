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

#include <iostream>

#include <CLI11.hpp>

#include "distdyk_tools/commands.hpp"

using namespace distdyk::cli;

int main(int argc, char** argv) {
  CLI::App app{"Distributed Dykstra simulator"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a seeded instance with a certificate");
  g->add_option("--kind", gen.kind, "balls|halfspaces|boxes|mixed|consensus")
      ->required();
  g->add_option("--m", gen.m, "Dimension")->default_val(2);
  g->add_option("--graph", gen.graph, "path:N|cycle:N|star:N|complete:N|edges:N:a-b,...")
      ->required();
  g->add_option("--seed", gen.seed, "Generator seed")->default_val(0);
  g->add_option("--t-lo", gen.params.t_lo, "Smallest multiplier norm")->default_val(0.5);
  g->add_option("--t-hi", gen.params.t_hi, "Largest multiplier norm")->default_val(2.0);
  g->add_option("--rho-lo", gen.params.rho_lo, "Smallest ball radius")->default_val(0.5);
  g->add_option("--rho-hi", gen.params.rho_hi, "Largest ball radius")->default_val(2.0);
  g->add_option("--cap-cos", gen.params.cap_cos, "Normal cap cosine")->default_val(0.5);
  g->add_option("--min-singular", gen.params.min_singular,
                "Conditioning floor for the outward normals (0 disables)")
      ->default_val(0.3);
  g->add_option("--out", gen.out, "Output path, - for stdout")->default_val("-");

  RunConfig run;
  auto* r = app.add_subcommand("run", "Run the distributed engine on an instance");
  r->add_option("--instance", run.instance, "Instance JSON")->required();
  r->add_option("--schedule", run.schedule,
                "cyclic_v_first|singleton_cyclic|random_coverage|edge_coloring_parallel")
      ->default_val("cyclic_v_first");
  r->add_option("--schedule-seed", run.schedule_seed, "Seed for random schedules")
      ->default_val(0);
  r->add_option("--max-cycles", run.max_cycles, "Cycle budget")->default_val(10000);
  r->add_option("--gap-eps", run.gap_eps, "Certified distance target")->default_val(1e-8);
  r->add_option("--tail", run.tail, "Tail fraction for the summary rate fit")
      ->default_val(0.5);
  r->add_option("--trace", run.trace, "Trace JSONL output");
  r->add_option("--summary", run.summary, "Summary CSV output");
  r->add_flag("--debug", run.debug, "Enable invariant cross-checks");
  r->add_flag("--normalize", run.normalize,
              "Translate by the certified optimum so the gap stop rule applies");
  r->add_option("--compare", run.compare, "Oracle JSON to compare against");
  r->add_option("--warm-start", run.warm_start, "Dual state JSON to start from");
  r->add_option("--state-out", run.state_out, "Write the final dual state here");

  OracleConfig oracle;
  auto* o = app.add_subcommand("oracle", "Centralized reference projection");
  o->add_option("--instance", oracle.instance, "Instance JSON")->required();
  o->add_option("--max-iter", oracle.max_iter, "Cycle budget")->default_val(100000);
  o->add_option("--tol", oracle.tol, "Cycle displacement tolerance")->default_val(1e-13);
  o->add_option("--samples", oracle.samples, "Certification samples")->default_val(64);
  o->add_option("--seed", oracle.seed, "Certification seed")->default_val(0);
  o->add_option("--feasibility-tol", oracle.feasibility_tol)->default_val(1e-6);
  o->add_option("--certificate-tol", oracle.certificate_tol)->default_val(1e-6);
  o->add_option("--out", oracle.out, "Output path, - for stdout")->default_val("-");
  o->add_option("--embed", oracle.embed,
                "Also write the instance with this solution as its certificate");

  AuditConfig aud;
  auto* a = app.add_subcommand("audit", "Check trace invariants");
  a->add_option("--trace", aud.trace, "Trace JSONL")->required();

  RateConfig rate;
  auto* rt = app.add_subcommand("rate", "Fit a linear rate to a trace");
  rt->add_option("--trace", rate.trace, "Trace JSONL")->required();
  rt->add_option("--tail", rate.tail, "Fraction of cycles to fit")->default_val(0.5);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_gen(gen, std::cout, std::cerr);
    if (*r) return cmd_run(run, std::cout, std::cerr);
    if (*o) return cmd_oracle(oracle, std::cout, std::cerr);
    if (*a) return cmd_audit(aud, std::cout, std::cerr);
    if (*rt) return cmd_rate(rate, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
