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

#include "distdyk_tools/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

namespace distdyk::io {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw FormatError("expected a number, got " + j.dump());
}

Json number_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) throw FormatError("cannot serialize NaN");
  return x;
}

Json optional_json(const std::optional<double>& x) {
  return x ? number_json(*x) : Json(nullptr);
}

std::optional<double> optional_number(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number(j.at(key));
}

Json mat_cols_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec_to_json(m.col(c)));
  return out;
}

Mat mat_cols_from_json(const Json& j, int rows) {
  if (!j.is_array()) throw FormatError("expected an array of vectors");
  Mat out(rows, static_cast<Eigen::Index>(j.size()));
  for (size_t c = 0; c < j.size(); ++c) out.col(c) = vec_from_json(j[c], rows);
  return out;
}

Json params_to_json(const GeneratorParams& p) {
  return Json{{"t_lo", p.t_lo},       {"t_hi", p.t_hi},
              {"rho_lo", p.rho_lo},   {"rho_hi", p.rho_hi},
              {"cap_cos", p.cap_cos}, {"min_singular", p.min_singular}};
}

GeneratorParams params_from_json(const Json& j) {
  GeneratorParams p;
  p.t_lo = number(field(j, "t_lo"));
  p.t_hi = number(field(j, "t_hi"));
  p.rho_lo = number(field(j, "rho_lo"));
  p.rho_hi = number(field(j, "rho_hi"));
  p.cap_cos = number(field(j, "cap_cos"));
  p.min_singular = number(field(j, "min_singular"));
  return p;
}

}  // namespace

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(number_json(v(k)));
  return out;
}

Vec vec_from_json(const Json& j, int expected_size) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  if (expected_size >= 0 && static_cast<int>(j.size()) != expected_size) {
    throw FormatError("expected " + std::to_string(expected_size) +
                      " entries, got " + std::to_string(j.size()));
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t k = 0; k < j.size(); ++k) v(k) = number(j[k]);
  return v;
}

Json set_to_json(const ConvexSet& set) {
  Json out{{"variant", std::string(set.kind_name())}};
  if (set.is<Halfspace>()) {
    const auto& h = set.as<Halfspace>();
    out["normal"] = vec_to_json(h.normal);
    out["offset"] = number_json(h.offset);
  } else if (set.is<Ball>()) {
    const auto& b = set.as<Ball>();
    out["center"] = vec_to_json(b.center);
    out["radius"] = number_json(b.radius);
  } else if (set.is<Box>()) {
    const auto& b = set.as<Box>();
    out["lower"] = vec_to_json(b.lower);
    out["upper"] = vec_to_json(b.upper);
  } else if (set.is<Polyhedron>()) {
    const auto& p = set.as<Polyhedron>();
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < p.rows.rows(); ++r) {
      rows.push_back(vec_to_json(p.rows.row(r).transpose()));
    }
    out["rows"] = std::move(rows);
    out["rhs"] = vec_to_json(p.rhs);
  }
  return out;
}

ConvexSet set_from_json(const Json& j, int m) {
  const auto variant = field(j, "variant").get<std::string>();
  if (variant == "whole_space") return ConvexSet::whole_space(m);
  if (variant == "halfspace") {
    return ConvexSet::halfspace(vec_from_json(field(j, "normal"), m),
                                number(field(j, "offset")));
  }
  if (variant == "ball") {
    return ConvexSet::ball(vec_from_json(field(j, "center"), m),
                           number(field(j, "radius")));
  }
  if (variant == "box") {
    return ConvexSet::box(vec_from_json(field(j, "lower"), m),
                          vec_from_json(field(j, "upper"), m));
  }
  if (variant == "polyhedron") {
    const Json& rows = field(j, "rows");
    if (!rows.is_array()) throw FormatError("polyhedron rows must be an array");
    Mat a(static_cast<Eigen::Index>(rows.size()), m);
    for (size_t r = 0; r < rows.size(); ++r) {
      a.row(r) = vec_from_json(rows[r], m).transpose();
    }
    return ConvexSet::polyhedron(
        std::move(a), vec_from_json(field(j, "rhs"), static_cast<int>(rows.size())));
  }
  throw FormatError("unknown set variant '" + variant + "'");
}

Json instance_to_json(const Instance& inst) {
  Json edges = Json::array();
  for (const Edge& e : inst.graph.edges()) edges.push_back(Json::array({e.i, e.j}));
  Json sets = Json::array();
  for (const ConvexSet& s : inst.sets) sets.push_back(set_to_json(s));

  Json out;
  out["m"] = inst.m;
  out["graph"] = Json{{"n", inst.graph.num_vertices()}, {"edges", std::move(edges)}};
  out["anchor"] = vec_to_json(inst.anchor);
  out["sets"] = std::move(sets);
  if (inst.certificate) {
    Json mult = Json::array();
    for (const Vec& z : inst.certificate->multipliers) mult.push_back(vec_to_json(z));
    out["certificate"] = Json{{"x_star", vec_to_json(inst.certificate->x_star)},
                              {"multipliers", std::move(mult)}};
  } else {
    out["certificate"] = nullptr;
  }
  if (inst.seed_info) {
    const SeedInfo& s = *inst.seed_info;
    out["seed_info"] = Json{{"kind", std::string(kind_name(s.kind))},
                            {"seed", s.seed},
                            {"graph", s.graph},
                            {"params", params_to_json(s.params)}};
  } else {
    out["seed_info"] = nullptr;
  }
  if (inst.vertex_anchors) {
    Json anchors = Json::array();
    for (const Vec& a : *inst.vertex_anchors) anchors.push_back(vec_to_json(a));
    out["vertex_anchors"] = std::move(anchors);
  }
  return out;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.m = field(j, "m").get<int>();
  if (inst.m < 1) throw FormatError("m must be positive");

  const Json& g = field(j, "graph");
  std::vector<std::pair<int, int>> pairs;
  for (const Json& e : field(g, "edges")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("edges are [i, j] pairs");
    pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  inst.graph = Graph::build(field(g, "n").get<int>(), pairs);

  inst.anchor = vec_from_json(field(j, "anchor"), inst.m);
  const Json& sets = field(j, "sets");
  if (!sets.is_array() ||
      static_cast<int>(sets.size()) != inst.graph.num_vertices()) {
    throw FormatError("expected one set per vertex");
  }
  for (const Json& s : sets) inst.sets.push_back(set_from_json(s, inst.m));

  if (j.contains("certificate") && !j.at("certificate").is_null()) {
    const Json& c = j.at("certificate");
    Certificate cert;
    cert.x_star = vec_from_json(field(c, "x_star"), inst.m);
    if (c.contains("multipliers") && !c.at("multipliers").is_null()) {
      for (const Json& z : c.at("multipliers")) {
        cert.multipliers.push_back(vec_from_json(z, inst.m));
      }
    }
    inst.certificate = std::move(cert);
  }
  if (j.contains("seed_info") && !j.at("seed_info").is_null()) {
    const Json& s = j.at("seed_info");
    SeedInfo info;
    info.kind = parse_kind(field(s, "kind").get<std::string>());
    info.seed = field(s, "seed").get<std::uint64_t>();
    info.graph = s.value("graph", std::string());
    if (s.contains("params")) info.params = params_from_json(s.at("params"));
    inst.seed_info = std::move(info);
  }
  if (j.contains("vertex_anchors") && !j.at("vertex_anchors").is_null()) {
    std::vector<Vec> anchors;
    for (const Json& a : j.at("vertex_anchors")) {
      anchors.push_back(vec_from_json(a, inst.m));
    }
    inst.vertex_anchors = std::move(anchors);
  }
  return inst;
}

Json state_to_json(const DualState& state) {
  return Json{{"m", state.m},
              {"vertex_dual", mat_cols_to_json(state.vertex_dual)},
              {"edge_dual", mat_cols_to_json(state.edge_dual)}};
}

DualState state_from_json(const Json& j) {
  DualState s;
  s.m = field(j, "m").get<int>();
  s.vertex_dual = mat_cols_from_json(field(j, "vertex_dual"), s.m);
  s.edge_dual = mat_cols_from_json(field(j, "edge_dual"), s.m);
  return s;
}

Json oracle_to_json(const OracleResult& r) {
  Json corr = Json::array();
  for (const Vec& c : r.corrections) corr.push_back(vec_to_json(c));
  return Json{{"x_star", vec_to_json(r.x_star)},
              {"iterations", r.iterations},
              {"feasibility_residual", number_json(r.feasibility_residual)},
              {"certificate_residual", optional_json(r.certificate_residual)},
              {"corrections", std::move(corr)}};
}

OracleResult oracle_from_json(const Json& j) {
  OracleResult r;
  r.x_star = vec_from_json(field(j, "x_star"));
  r.iterations = j.value("iterations", 0);
  r.feasibility_residual =
      optional_number(j, "feasibility_residual").value_or(0.0);
  r.certificate_residual = optional_number(j, "certificate_residual");
  if (j.contains("corrections")) {
    for (const Json& c : j.at("corrections")) {
      r.corrections.push_back(
          vec_from_json(c, static_cast<int>(r.x_star.size())));
    }
  }
  return r;
}

void write_trace_jsonl(std::ostream& out, const Trace& trace) {
  for (const TraceRecord& r : trace.records) {
    Json line{{"n", r.cycle},
              {"w", r.block},
              {"f", number_json(r.f)},
              {"gap", optional_json(r.gap)},
              {"dist_max", optional_json(r.dist_max)},
              {"moved", number_json(r.moved)}};
    out << line.dump() << '\n';
  }
}

Trace read_trace_jsonl(std::istream& in) {
  Trace trace;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      TraceRecord r;
      r.cycle = field(j, "n").get<int>();
      r.block = field(j, "w").get<int>();
      r.f = number(field(j, "f"));
      r.gap = optional_number(j, "gap");
      r.dist_max = optional_number(j, "dist_max");
      r.moved = number(field(j, "moved"));
      trace.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return trace;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_summary_csv(std::ostream& out, const SummaryRow& row) {
  out << kSummaryHeader << '\n';
  out << row.seed << ',' << row.policy << ',' << row.cycles << ','
      << format_double(row.final_f) << ','
      << (row.rate ? format_double(*row.rate) : "") << ','
      << (row.r2 ? format_double(*row.r2) : "") << ',' << row.stop_reason
      << '\n';
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  if (path == "-") {
    std::cout << j.dump() << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump() << '\n';
}

}  // namespace distdyk::io
