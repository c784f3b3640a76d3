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

#ifndef DISTDYK_CONVEX_SETS_HPP_
#define DISTDYK_CONVEX_SETS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace distdyk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Largest number of polyhedron rows accepted. Projection enumerates active
// sets, so anything much past a dozen rows is slow in practice.
inline constexpr int kMaxPolyhedronRows = 32;

// Default tolerance for feasibility, KKT sign checks and collinearity.
inline constexpr double kDefaultFeasibilityTol = 1e-9;

struct WholeSpace {};

// { x : <normal, x> <= offset }
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

struct Ball {
  Vec center;
  double radius = 1.0;
};

// Componentwise lower <= x <= upper. Entries may be +-infinity.
struct Box {
  Vec lower;
  Vec upper;
};

// { x : rows * x <= rhs }
struct Polyhedron {
  Mat rows;
  Vec rhs;
};

class InvalidSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when polyhedron projection cannot find a well-conditioned active
// set satisfying the KKT conditions. `active` lists the rows that were
// (numerically) active at the best candidate.
class DegenerateActiveSet : public std::runtime_error {
 public:
  DegenerateActiveSet(const std::string& what, std::vector<int> active)
      : std::runtime_error(what), active_(std::move(active)) {}
  const std::vector<int>& active() const { return active_; }

 private:
  std::vector<int> active_;
};

// A closed convex set in R^m. Construction validates the set; instances are
// immutable afterwards.
class ConvexSet {
 public:
  using Variant = std::variant<WholeSpace, Halfspace, Ball, Box, Polyhedron>;

  static ConvexSet whole_space(int dim);
  static ConvexSet halfspace(Vec normal, double offset);
  static ConvexSet ball(Vec center, double radius);
  static ConvexSet box(Vec lower, Vec upper);
  // Throws InvalidSet if the polyhedron is empty or has more than
  // kMaxPolyhedronRows rows.
  static ConvexSet polyhedron(Mat rows, Vec rhs);

  int dim() const { return dim_; }
  const Variant& variant() const { return variant_; }
  std::string_view kind_name() const;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(variant_);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(variant_);
  }

  // The set shifted by `delta`, i.e. { x + delta : x in C }.
  ConvexSet translated(const Vec& delta) const;

 private:
  ConvexSet(int dim, Variant v) : dim_(dim), variant_(std::move(v)) {}

  int dim_;
  Variant variant_;
};

struct ProjectionResult {
  Vec point;   // P_C(s)
  Vec normal;  // s - P_C(s), an element of N_C(point)
  // <normal, point>, which equals the support function at `normal`. It is
  // evaluated with a cancellation-free formula for each family rather than
  // as a raw inner product.
  double support_value = 0.0;
};

ProjectionResult project(const ConvexSet& set, const Vec& s,
                         double tol = kDefaultFeasibilityTol);

// sup { <z, x> : x in C }, +infinity where unbounded.
double support(const ConvexSet& set, const Vec& z,
               double tol = kDefaultFeasibilityTol);

// || P_C(x + z) - x ||. Zero iff x in C and z in N_C(x).
double normal_residual(const ConvexSet& set, const Vec& x, const Vec& z);

// || P_C(x) - x ||.
double distance(const ConvexSet& set, const Vec& x);

}  // namespace distdyk

#endif  // DISTDYK_CONVEX_SETS_HPP_
