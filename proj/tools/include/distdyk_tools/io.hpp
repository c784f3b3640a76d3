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

#ifndef DISTDYK_TOOLS_IO_HPP_
#define DISTDYK_TOOLS_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "distdyk/diagnostics.hpp"
#include "distdyk/instances.hpp"
#include "distdyk/oracle.hpp"
#include "distdyk/state.hpp"

namespace distdyk::io {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vectors are JSON arrays of numbers. Infinite entries (box bounds) are
// written as the strings "inf" and "-inf".
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, int expected_size = -1);

Json set_to_json(const ConvexSet& set);
ConvexSet set_from_json(const Json& j, int m);

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

Json state_to_json(const DualState& state);
DualState state_from_json(const Json& j);

Json oracle_to_json(const OracleResult& result);
OracleResult oracle_from_json(const Json& j);

// One line per record with keys n, w, f, gap, dist_max, moved; absent
// optionals are written as null.
void write_trace_jsonl(std::ostream& out, const Trace& trace);
Trace read_trace_jsonl(std::istream& in);

inline constexpr const char* kSummaryHeader =
    "seed,policy,cycles,final_f,rate,r2,stop_reason";

struct SummaryRow {
  std::string seed;  // empty for hand-written instances
  std::string policy;
  int cycles = 0;
  double final_f = 0.0;
  std::optional<double> rate;
  std::optional<double> r2;
  std::string stop_reason;
};

void write_summary_csv(std::ostream& out, const SummaryRow& row);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

Json read_json_file(const std::filesystem::path& path);
// Writes `j` compactly followed by a newline. "-" means stdout.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace distdyk::io

#endif  // DISTDYK_TOOLS_IO_HPP_
