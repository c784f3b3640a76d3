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

#include "distdyk/convex_sets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace distdyk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Vec& v) { return v.allFinite(); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidSet(msg);
}

// Calls fn(subset) for every subset of {0..n-1} with size <= max_size, in
// order of increasing size.
void for_each_subset(int n, int max_size,
                     const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> idx;
  for (int size = 0; size <= std::min(n, max_size); ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (fn(idx)) return;
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

Mat select_rows(const Mat& a, const std::vector<int>& rows) {
  Mat out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (size_t r = 0; r < rows.size(); ++r) out.row(r) = a.row(rows[r]);
  return out;
}

Vec select(const Vec& v, const std::vector<int>& rows) {
  Vec out(static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) out(r) = v(rows[r]);
  return out;
}

bool full_row_rank(const Mat& a_s) {
  if (a_s.rows() == 0) return true;
  Eigen::ColPivHouseholderQR<Mat> qr(a_s.transpose());
  qr.setThreshold(1e-10);
  return qr.rank() == a_s.rows();
}

// sigma_B(z) = <z,c> + rho*||z||, evaluated without cancellation when z points
// away from the center. Uses
//   rho||z|| + <z,c> = (rho^2 ||z||^2 - <z,c>^2) / (rho||z|| - <z,c>)
// and ||z||^2 ||c||^2 - <z,c>^2 = ||z||^2 * ||c - (<z,c>/||z||^2) z||^2.
double ball_support(const Ball& b, const Vec& z) {
  const double zz = z.squaredNorm();
  if (zz == 0.0) return 0.0;
  const double nz = std::sqrt(zz);
  const double zc = z.dot(b.center);
  if (zc >= 0.0) return b.radius * nz + zc;
  const double nc = b.center.norm();
  const Vec perp = b.center - (zc / zz) * z;
  const double num =
      (b.radius - nc) * (b.radius + nc) * zz + zz * perp.squaredNorm();
  return num / (b.radius * nz - zc);
}

double box_support(const Box& b, const Vec& z) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    if (z(k) > 0.0) {
      if (std::isinf(b.upper(k))) return kInf;
      total += z(k) * b.upper(k);
    } else if (z(k) < 0.0) {
      if (std::isinf(b.lower(k))) return kInf;
      total += z(k) * b.lower(k);
    }
  }
  return total;
}

double halfspace_support(const Halfspace& h, const Vec& z, double tol) {
  const double zn = z.norm();
  if (zn == 0.0) return 0.0;
  const double t = z.dot(h.normal) / h.normal.squaredNorm();
  if (t < 0.0) return kInf;
  if ((z - t * h.normal).norm() > tol * zn) return kInf;
  return h.offset * t;
}

// Smallest b_S^T lambda over linearly independent row subsets S with
// A_S^T lambda = z, lambda >= 0. This is the LP dual of max <z,x> s.t.
// Ax <= b; an optimal basic solution always has independent support.
double polyhedron_support(const Polyhedron& p, const Vec& z, double tol) {
  if (z.squaredNorm() == 0.0) return 0.0;
  const int k = static_cast<int>(p.rows.rows());
  const int m = static_cast<int>(p.rows.cols());
  double best = kInf;
  for_each_subset(k, m, [&](const std::vector<int>& s) {
    if (s.empty()) return false;
    const Mat a_s = select_rows(p.rows, s);
    Eigen::ColPivHouseholderQR<Mat> qr(a_s.transpose());
    qr.setThreshold(1e-10);
    if (qr.rank() != static_cast<Eigen::Index>(s.size())) return false;
    const Vec lambda = qr.solve(z);
    const double scale = 1.0 + z.norm();
    if ((a_s.transpose() * lambda - z).norm() > tol * scale) return false;
    const double lam_scale = 1.0 + lambda.cwiseAbs().maxCoeff();
    if (lambda.minCoeff() < -tol * lam_scale) return false;
    best = std::min(best, select(p.rhs, s).dot(lambda));
    return false;
  });
  return best;
}

ProjectionResult project_polyhedron(const Polyhedron& p, const Vec& s,
                                    double tol) {
  const int k = static_cast<int>(p.rows.rows());
  const int m = static_cast<int>(p.rows.cols());

  ProjectionResult result;
  bool found = false;
  double best_violation = kInf;
  Vec best_point = s;

  auto violation_of = [&](const Vec& x) {
    double worst = 0.0;
    for (int r = 0; r < k; ++r) {
      const double scale =
          1.0 + std::abs(p.rhs(r)) + p.rows.row(r).norm() * x.norm();
      worst = std::max(worst, (p.rows.row(r).dot(x) - p.rhs(r)) / scale);
    }
    return worst;
  };

  for_each_subset(k, m, [&](const std::vector<int>& active) {
    if (active.empty()) {
      const double v = violation_of(s);
      if (v <= tol) {
        result = {s, Vec::Zero(m), 0.0};
        found = true;
        return true;
      }
      best_violation = v;
      return false;
    }
    const Mat a_s = select_rows(p.rows, active);
    if (!full_row_rank(a_s)) return false;
    const Vec b_s = select(p.rhs, active);
    const Mat gram = a_s * a_s.transpose();
    const Vec lambda = gram.ldlt().solve(a_s * s - b_s);
    const Vec normal = a_s.transpose() * lambda;
    const Vec x = s - normal;
    const double lam_scale = 1.0 + lambda.cwiseAbs().maxCoeff();
    const double v = std::max(violation_of(x),
                              -lambda.minCoeff() / lam_scale);
    if (v <= tol) {
      result = {x, normal, b_s.dot(lambda)};
      found = true;
      return true;
    }
    if (v < best_violation) {
      best_violation = v;
      best_point = x;
    }
    return false;
  });

  if (!found) {
    std::vector<int> near_active;
    for (int r = 0; r < k; ++r) {
      const double scale = 1.0 + std::abs(p.rhs(r));
      if (std::abs(p.rows.row(r).dot(best_point) - p.rhs(r)) <= 1e-6 * scale) {
        near_active.push_back(r);
      }
    }
    std::ostringstream msg;
    msg << "polyhedron projection: no well-conditioned KKT active set "
           "(best violation "
        << best_violation << "); near-active rows {";
    for (size_t i = 0; i < near_active.size(); ++i) {
      msg << (i ? "," : "") << near_active[i];
    }
    msg << "}";
    throw DegenerateActiveSet(msg.str(), std::move(near_active));
  }
  return result;
}

}  // namespace

ConvexSet ConvexSet::whole_space(int dim) {
  require(dim >= 1, "whole space: dimension must be positive");
  return ConvexSet(dim, WholeSpace{});
}

ConvexSet ConvexSet::halfspace(Vec normal, double offset) {
  require(normal.size() >= 1, "halfspace: empty normal");
  require(all_finite(normal) && std::isfinite(offset),
          "halfspace: non-finite data");
  require(normal.norm() > 0.0, "halfspace: normal must be nonzero");
  const int dim = static_cast<int>(normal.size());
  return ConvexSet(dim, Halfspace{std::move(normal), offset});
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
  require(center.size() >= 1, "ball: empty center");
  require(all_finite(center), "ball: non-finite center");
  require(std::isfinite(radius) && radius > 0.0,
          "ball: radius must be finite and positive");
  const int dim = static_cast<int>(center.size());
  return ConvexSet(dim, Ball{std::move(center), radius});
}

ConvexSet ConvexSet::box(Vec lower, Vec upper) {
  require(lower.size() >= 1, "box: empty bounds");
  require(lower.size() == upper.size(), "box: bound dimensions differ");
  for (Eigen::Index k = 0; k < lower.size(); ++k) {
    require(!std::isnan(lower(k)) && !std::isnan(upper(k)), "box: NaN bound");
    require(lower(k) != kInf && upper(k) != -kInf,
            "box: lower bound +inf or upper bound -inf");
    require(lower(k) <= upper(k), "box: lower bound exceeds upper bound");
  }
  const int dim = static_cast<int>(lower.size());
  return ConvexSet(dim, Box{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::polyhedron(Mat rows, Vec rhs) {
  require(rows.cols() >= 1, "polyhedron: zero dimension");
  require(rows.rows() >= 1, "polyhedron: needs at least one row");
  require(rows.rows() <= kMaxPolyhedronRows,
          "polyhedron: at most 32 rows supported");
  require(rows.rows() == rhs.size(), "polyhedron: rhs size mismatch");
  require(rows.allFinite() && all_finite(rhs), "polyhedron: non-finite data");
  const int dim = static_cast<int>(rows.cols());
  ConvexSet set(dim, Polyhedron{std::move(rows), std::move(rhs)});
  try {
    project(set, Vec::Zero(dim));
  } catch (const DegenerateActiveSet& e) {
    throw InvalidSet(std::string("polyhedron: empty or degenerate (") +
                     e.what() + ")");
  }
  return set;
}

std::string_view ConvexSet::kind_name() const {
  switch (variant_.index()) {
    case 0:
      return "whole_space";
    case 1:
      return "halfspace";
    case 2:
      return "ball";
    case 3:
      return "box";
    default:
      return "polyhedron";
  }
}

ConvexSet ConvexSet::translated(const Vec& delta) const {
  if (delta.size() != dim_) throw InvalidSet("translate: dimension mismatch");
  return std::visit(
      [&](const auto& s) -> ConvexSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return *this;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return ConvexSet(dim_, Halfspace{s.normal, s.offset + s.normal.dot(delta)});
        } else if constexpr (std::is_same_v<T, Ball>) {
          return ConvexSet(dim_, Ball{s.center + delta, s.radius});
        } else if constexpr (std::is_same_v<T, Box>) {
          return ConvexSet(dim_, Box{s.lower + delta, s.upper + delta});
        } else {
          return ConvexSet(dim_, Polyhedron{s.rows, s.rhs + s.rows * delta});
        }
      },
      variant_);
}

ProjectionResult project(const ConvexSet& set, const Vec& s, double tol) {
  if (s.size() != set.dim()) throw InvalidSet("project: dimension mismatch");
  return std::visit(
      [&](const auto& c) -> ProjectionResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return {s, Vec::Zero(s.size()), 0.0};
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          const double excess = c.normal.dot(s) - c.offset;
          if (excess <= 0.0) return {s, Vec::Zero(s.size()), 0.0};
          const double t = excess / c.normal.squaredNorm();
          Vec normal = t * c.normal;
          Vec point = s - normal;
          return {std::move(point), std::move(normal), c.offset * t};
        } else if constexpr (std::is_same_v<T, Ball>) {
          const Vec d = s - c.center;
          const double dist = d.norm();
          if (dist <= c.radius) return {s, Vec::Zero(s.size()), 0.0};
          Vec normal = (1.0 - c.radius / dist) * d;
          Vec point = s - normal;
          const double sv = ball_support(c, normal);
          return {std::move(point), std::move(normal), sv};
        } else if constexpr (std::is_same_v<T, Box>) {
          Vec point = s.cwiseMax(c.lower).cwiseMin(c.upper);
          Vec normal = s - point;
          double sv = 0.0;
          for (Eigen::Index k = 0; k < s.size(); ++k) {
            if (normal(k) != 0.0) sv += normal(k) * point(k);
          }
          return {std::move(point), std::move(normal), sv};
        } else {
          return project_polyhedron(c, s, tol);
        }
      },
      set.variant());
}

double support(const ConvexSet& set, const Vec& z, double tol) {
  if (z.size() != set.dim()) throw InvalidSet("support: dimension mismatch");
  return std::visit(
      [&](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return z.squaredNorm() == 0.0 ? 0.0 : kInf;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return halfspace_support(c, z, tol);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return ball_support(c, z);
        } else if constexpr (std::is_same_v<T, Box>) {
          return box_support(c, z);
        } else {
          return polyhedron_support(c, z, tol);
        }
      },
      set.variant());
}

double normal_residual(const ConvexSet& set, const Vec& x, const Vec& z) {
  return (project(set, x + z).point - x).norm();
}

double distance(const ConvexSet& set, const Vec& x) {
  return project(set, x).normal.norm();
}

}  // namespace distdyk
