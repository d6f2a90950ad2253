// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bicut {

namespace {

constexpr double kTol = 1e-7;

struct FollowerPoint {
  std::vector<double> y;
  double q = 0.0;
  double link = 0.0;
};

// Odometer over the integer points of a box.
class BoxWalk {
 public:
  BoxWalk(const Vector& lb, const Vector& ub) : lb_(lb), ub_(ub), cur_(lb.size()) {
    for (Eigen::Index j = 0; j < lb.size(); ++j) cur_[j] = std::ceil(lb[j]);
    for (Eigen::Index j = 0; j < lb.size(); ++j) {
      if (cur_[j] > std::floor(ub[j])) done_ = true;
    }
  }

  bool done() const { return done_; }
  const std::vector<double>& current() const { return cur_; }

  void advance() {
    for (std::size_t j = 0; j < cur_.size(); ++j) {
      if (cur_[j] + 1.0 <= std::floor(ub_[j])) {
        cur_[j] += 1.0;
        return;
      }
      cur_[j] = std::ceil(lb_[j]);
    }
    done_ = true;
  }

 private:
  Vector lb_;
  Vector ub_;
  std::vector<double> cur_;
  bool done_ = false;
};

double dot_row(const Matrix& m, Eigen::Index i, const std::vector<double>& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
  return s;
}

double dot(const Vector& a, const std::vector<double>& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) s += a[j] * v[j];
  return s;
}

double follower_value(const Instance& inst, const std::vector<double>& y) {
  double q = dot(inst.g, y);
  for (Eigen::Index i = 0; i < inst.V.rows(); ++i) {
    const double r = dot_row(inst.V, i, y);
    q += r * r;
  }
  return q;
}

bool leader_feasible(const Instance& inst, const std::vector<double>& x,
                     const std::vector<double>& y) {
  for (Eigen::Index i = 0; i < inst.h.size(); ++i) {
    if (dot_row(inst.M, i, x) + dot_row(inst.N, i, y) < inst.h[i] - kTol) return false;
  }
  Eigen::Index row = 0;
  for (int size : inst.cones_K) {
    const double head = dot_row(inst.Mt, row, x) + dot_row(inst.Nt, row, y) - inst.ht[row];
    double tail = 0.0;
    for (int k = 1; k < size; ++k) {
      const Eigen::Index r = row + k;
      const double v = dot_row(inst.Mt, r, x) + dot_row(inst.Nt, r, y) - inst.ht[r];
      tail += v * v;
    }
    if (head < std::sqrt(tail) - kTol) return false;
    row += size;
  }
  return true;
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) out[static_cast<Eigen::Index>(j)] = v[j];
  return out;
}

}  // namespace

std::string_view to_string(OracleStatus status) {
  return status == OracleStatus::optimal ? "optimal" : "infeasible";
}

std::uint64_t lattice_size(const Instance& inst) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (Eigen::Index j = 0; j < inst.lb.size(); ++j) {
    const double width = std::floor(inst.ub[j]) - std::ceil(inst.lb[j]) + 1.0;
    if (width <= 0.0) return 0;
    if (!std::isfinite(width) || width >= static_cast<double>(kMax) / static_cast<double>(total)) {
      return kMax;
    }
    total *= static_cast<std::uint64_t>(width);
  }
  return total;
}

OracleResult brute_force_solve(const Instance& inst, bool list_feasible) {
  const std::uint64_t size = lattice_size(inst);
  if (size > kOracleGuard) {
    throw OracleRefused("instance has " + std::to_string(size) +
                        " lattice points, above the enumeration guard of " +
                        std::to_string(kOracleGuard));
  }

  std::vector<FollowerPoint> ys;
  for (BoxWalk w(inst.lb.tail(inst.n2), inst.ub.tail(inst.n2)); !w.done(); w.advance()) {
    const auto& y = w.current();
    bool ok = true;
    for (Eigen::Index i = 0; i < inst.Y_u.size() && ok; ++i) {
      ok = dot_row(inst.Y_C, i, y) >= inst.Y_u[i] - kTol;
    }
    if (ok) ys.push_back({y, follower_value(inst, y), dot(inst.b, y)});
  }
  std::stable_sort(ys.begin(), ys.end(),
                   [](const FollowerPoint& l, const FollowerPoint& r) { return l.q < r.q; });

  OracleResult out;
  double best = std::numeric_limits<double>::infinity();
  for (BoxWalk w(inst.lb.head(inst.n1), inst.ub.head(inst.n1)); !w.done(); w.advance()) {
    const auto& x = w.current();
    const double need = inst.f - dot(inst.a, x);
    const double leader_x = dot(inst.c, x);
    std::size_t k = 0;
    while (k < ys.size() && ys[k].link < need - kTol) ++k;
    if (k == ys.size()) continue;
    const double value = ys[k].q;
    for (; k < ys.size() && ys[k].q <= value + kTol * (1.0 + std::abs(value)); ++k) {
      if (ys[k].link < need - kTol) continue;
      if (!leader_feasible(inst, x, ys[k].y)) continue;
      const double obj = leader_x + dot(inst.d, ys[k].y);
      if (list_feasible) out.bilevel_feasible.push_back({to_vector(x), to_vector(ys[k].y)});
      if (obj < best) {
        best = obj;
        out.status = OracleStatus::optimal;
        out.value = obj;
        out.point = {to_vector(x), to_vector(ys[k].y)};
      }
    }
  }
  return out;
}

}  // namespace bicut
