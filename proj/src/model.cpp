// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bicut {

namespace {

bool same(const Matrix& lhs, const Matrix& rhs) {
  return lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && lhs == rhs;
}

bool same(const Vector& lhs, const Vector& rhs) {
  return lhs.size() == rhs.size() && lhs == rhs;
}

bool is_integer_value(double v) { return std::isfinite(v) && v == std::floor(v); }

void check_shape(std::vector<std::string>& out, const char* name, const Matrix& m,
                 Eigen::Index rows, Eigen::Index cols) {
  if (m.rows() != rows || m.cols() != cols) {
    out.push_back(std::string("dimension mismatch: ") + name + " is " +
                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                  ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void check_size(std::vector<std::string>& out, const char* name, const Vector& v,
                Eigen::Index size) {
  if (v.size() != size) {
    out.push_back(std::string("dimension mismatch: ") + name + " has length " +
                  std::to_string(v.size()) + ", expected " + std::to_string(size));
  }
}

}  // namespace

bool Instance::is_binary() const {
  for (int j = 0; j < n(); ++j) {
    if (lb[j] != 0.0 || ub[j] != 1.0) return false;
  }
  return true;
}

bool Instance::operator==(const Instance& o) const {
  return n1 == o.n1 && n2 == o.n2 && same(c, o.c) && same(d, o.d) && same(M, o.M) &&
         same(N, o.N) && same(h, o.h) && same(Mt, o.Mt) && same(Nt, o.Nt) &&
         same(ht, o.ht) && cones_K == o.cones_K && same(a, o.a) && same(b, o.b) &&
         f == o.f && same(V, o.V) && same(g, o.g) && same(Y_C, o.Y_C) &&
         same(Y_u, o.Y_u) && same(lb, o.lb) && same(ub, o.ub);
}

Vector Point::joined() const {
  Vector z(x.size() + y.size());
  z << x, y;
  return z;
}

Point Point::split(const Instance& inst, const Vector& z) {
  if (z.size() != inst.n()) throw std::invalid_argument("Point::split: size mismatch");
  return Point{z.head(inst.n1), z.tail(inst.n2)};
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto& out = report.violations;
  if (inst.n1 < 0 || inst.n2 < 1) {
    out.push_back("dimension mismatch: need n1 >= 0 and n2 >= 1");
    return report;
  }
  const int m1 = inst.m1();
  const int mt = inst.conic_rows();
  check_size(out, "c", inst.c, inst.n1);
  check_size(out, "d", inst.d, inst.n2);
  check_shape(out, "M", inst.M, m1, inst.n1);
  check_shape(out, "N", inst.N, m1, inst.n2);
  check_shape(out, "Mt", inst.Mt, mt, inst.n1);
  check_shape(out, "Nt", inst.Nt, mt, inst.n2);
  check_size(out, "a", inst.a, inst.n1);
  check_size(out, "b", inst.b, inst.n2);
  check_size(out, "g", inst.g, inst.n2);
  if (inst.V.cols() != inst.n2) out.push_back("dimension mismatch: V must have n2 columns");
  if (inst.V.rows() > inst.n2) out.push_back("V has more rows than columns (n3 > n2)");
  check_shape(out, "Y_C", inst.Y_C, inst.y_rows(), inst.n2);
  check_size(out, "lb", inst.lb, inst.n());
  check_size(out, "ub", inst.ub, inst.n());
  if (!out.empty()) return report;

  const long cone_total = std::accumulate(inst.cones_K.begin(), inst.cones_K.end(), 0L);
  if (cone_total != mt) out.push_back("cone dimensions do not sum to the number of conic rows");
  if (std::any_of(inst.cones_K.begin(), inst.cones_K.end(), [](int k) { return k < 1; })) {
    out.push_back("cone dimension below 1");
  }

  if (inst.a.cwiseAbs().sum() + inst.b.cwiseAbs().sum() == 0.0) {
    out.push_back("zero linking row");
  }
  bool integer_link = is_integer_value(inst.f);
  for (int j = 0; j < inst.n1; ++j) integer_link = integer_link && is_integer_value(inst.a[j]);
  for (int j = 0; j < inst.n2; ++j) integer_link = integer_link && is_integer_value(inst.b[j]);
  if (!integer_link) out.push_back("non-integer linking data (a, b, f)");

  for (int j = 0; j < inst.n(); ++j) {
    if (!std::isfinite(inst.lb[j]) || !std::isfinite(inst.ub[j])) {
      out.push_back("unbounded variable " + std::to_string(j));
    } else if (inst.lb[j] > inst.ub[j]) {
      out.push_back("empty bounds on variable " + std::to_string(j));
    } else if (!is_integer_value(inst.lb[j]) || !is_integer_value(inst.ub[j])) {
      out.push_back("non-integer bounds on variable " + std::to_string(j));
    }
  }
  return report;
}

double evaluate_q(const Instance& inst, const Vector& y) {
  if (y.size() != inst.n2 || inst.V.cols() != inst.n2 || inst.g.size() != inst.n2) {
    throw std::invalid_argument("evaluate_q: dimension mismatch");
  }
  return (inst.V * y).squaredNorm() + inst.g.dot(y);
}

double hpr_violation(const Instance& inst, const Point& p) {
  double worst = 0.0;
  const Vector z = p.joined();
  for (int j = 0; j < inst.n(); ++j) {
    worst = std::max({worst, inst.lb[j] - z[j], z[j] - inst.ub[j]});
  }
  if (inst.m1() > 0) {
    const Vector act = inst.M * p.x + inst.N * p.y - inst.h;
    worst = std::max(worst, -act.minCoeff());
  }
  worst = std::max(worst, inst.f - inst.a.dot(p.x) - inst.b.dot(p.y));
  if (inst.y_rows() > 0) {
    const Vector act = inst.Y_C * p.y - inst.Y_u;
    worst = std::max(worst, -act.minCoeff());
  }
  if (inst.conic_rows() > 0) {
    const Vector s = inst.Mt * p.x + inst.Nt * p.y - inst.ht;
    int offset = 0;
    for (int k : inst.cones_K) {
      const double tail = s.segment(offset + 1, k - 1).norm();
      worst = std::max(worst, tail - s[offset]);
      offset += k;
    }
  }
  return worst;
}

bool is_integral(const Vector& v, double tol) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v[j] - std::round(v[j])) > tol) return false;
  }
  return true;
}

FeasibilityVerdict check_bilevel_feasible(const Instance& inst, const Point& p, double phi) {
  FeasibilityVerdict verdict;
  verdict.phi = phi;
  verdict.integral = is_integral(p.x) && is_integral(p.y);
  verdict.hpr_feasible = hpr_violation(inst, p) <= kFeasibilityTolerance;
  verdict.follower_optimal = verdict.integral && verdict.hpr_feasible &&
                             evaluate_q(inst, p.y) <= phi + kFeasibilityTolerance;
  return verdict;
}

}  // namespace bicut
