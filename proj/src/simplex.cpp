// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bicut {

std::string_view to_string(LPStatus status) {
  switch (status) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
    case LPStatus::stalled: return "stalled";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorInterval = 40;
constexpr int kDegenerateStreak = 30;

// Columns 0..n-1 are structural, n..n+m-1 are the row logicals s = A x,
// i.e. the constraint matrix is [A  -I] with [A -I](x, s) = 0.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LinearProgram& lp)
      : lp_(lp), n_(lp.num_cols()), m_(lp.num_rows()), total_(n_ + m_) {
    lower_.resize(total_);
    upper_.resize(total_);
    cost_ = Vector::Zero(total_);
    lower_.head(n_) = lp.col_lower;
    upper_.head(n_) = lp.col_upper;
    lower_.tail(m_) = lp.row_lower;
    upper_.tail(m_) = lp.row_upper;
    cost_.head(n_) = lp.sense == Sense::minimize ? lp.objective : Vector(-lp.objective);
    value_ = Vector::Zero(total_);
  }

  LPResult run(const std::optional<Basis>& warm) {
    if (!(warm && install(*warm))) install_slack_basis();
    const int budget = 50 * (total_ + 10);
    LPResult result;
    bool fresh = true;
    int degenerate = 0;
    bool bland = false;
    for (int iter = 0; iter < budget; ++iter) {
      if (since_refactor_ >= kRefactorInterval && !refactor()) {
        install_slack_basis();
      }
      compute_basic_values();
      const bool phase_one = primal_infeasibility() > 0.0;
      const Vector costs = phase_costs(phase_one);
      const Vector y = binv_.transpose() * basic_costs(costs);

      int entering = -1;
      double best = 0.0;
      double entering_d = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::basic) continue;
        if (lower_[j] == upper_[j]) continue;
        const double d = reduced_cost(costs, y, j);
        const bool eligible = (status_[j] == VarStatus::at_lower && d < -kDualTol) ||
                              (status_[j] == VarStatus::at_upper && d > kDualTol) ||
                              (status_[j] == VarStatus::at_zero && std::abs(d) > kDualTol);
        if (!eligible) continue;
        if (bland) {
          entering = j;
          entering_d = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          entering_d = d;
        }
      }

      if (entering < 0) {
        if (!fresh) {
          // Re-check optimality on a freshly factored basis.
          if (!refactor()) {
            result.status = LPStatus::stalled;
            return finish(result, iter);
          }
          fresh = true;
          continue;
        }
        result.status = phase_one ? LPStatus::infeasible : LPStatus::optimal;
        return finish(result, iter);
      }

      const Vector alpha = binv_ * column(entering);
      const double dir = (status_[entering] == VarStatus::at_lower ||
                          (status_[entering] == VarStatus::at_zero && entering_d < 0.0))
                             ? 1.0
                             : -1.0;

      double theta = upper_[entering] - lower_[entering];
      int leave_row = -1;
      VarStatus leave_status = VarStatus::at_lower;
      double leave_rate = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double rate = -dir * alpha[r];
        if (std::abs(rate) < kPivotTol) continue;
        const int var = head_[r];
        const double val = value_[var];
        const double lo = lower_[var];
        const double up = upper_[var];
        double limit = kInf;
        VarStatus target = VarStatus::at_lower;
        if (rate < 0.0) {
          if (val > up + tol(up)) {
            limit = (val - up) / -rate;
            target = VarStatus::at_upper;
          } else if (val < lo - tol(lo)) {
            continue;
          } else if (std::isfinite(lo)) {
            limit = std::max(0.0, val - lo) / -rate;
            target = VarStatus::at_lower;
          }
        } else {
          if (val < lo - tol(lo)) {
            limit = (lo - val) / rate;
            target = VarStatus::at_lower;
          } else if (val > up + tol(up)) {
            continue;
          } else if (std::isfinite(up)) {
            limit = std::max(0.0, up - val) / rate;
            target = VarStatus::at_upper;
          }
        }
        if (!std::isfinite(limit)) continue;
        const bool better = limit < theta - 1e-12 ||
                            (limit <= theta + 1e-12 && leave_row >= 0 &&
                             (bland ? var < head_[leave_row] : std::abs(rate) > std::abs(leave_rate)));
        if (better || (leave_row < 0 && limit <= theta)) {
          theta = limit;
          leave_row = r;
          leave_status = target;
          leave_rate = rate;
        }
      }

      if (!std::isfinite(theta)) {
        result.status = phase_one ? LPStatus::stalled : LPStatus::unbounded;
        return finish(result, iter);
      }

      if (theta < 1e-12) {
        if (++degenerate > kDegenerateStreak) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }

      fresh = false;
      if (leave_row < 0) {
        status_[entering] =
            status_[entering] == VarStatus::at_lower ? VarStatus::at_upper : VarStatus::at_lower;
        continue;
      }
      const int leaving = head_[leave_row];
      status_[leaving] = leave_status;
      status_[entering] = VarStatus::basic;
      head_[leave_row] = entering;
      pivot(alpha, leave_row);
    }
    result.status = LPStatus::stalled;
    return finish(result, budget);
  }

 private:
  static double tol(double bound) {
    return std::isfinite(bound) ? kPrimalTol * (1.0 + std::abs(bound)) : 0.0;
  }

  Vector column(int j) const {
    if (j < n_) return lp_.rows.col(j);
    Vector col = Vector::Zero(m_);
    col[j - n_] = -1.0;
    return col;
  }

  double reduced_cost(const Vector& costs, const Vector& y, int j) const {
    if (j < n_) return costs[j] - y.dot(lp_.rows.col(j));
    return costs[j] + y[j - n_];
  }

  VarStatus default_nonbasic(int j) const {
    if (std::isfinite(lower_[j])) return VarStatus::at_lower;
    if (std::isfinite(upper_[j])) return VarStatus::at_upper;
    return VarStatus::at_zero;
  }

  void install_slack_basis() {
    status_.assign(total_, VarStatus::basic);
    head_.resize(m_);
    for (int j = 0; j < n_; ++j) status_[j] = default_nonbasic(j);
    for (int i = 0; i < m_; ++i) head_[i] = n_ + i;
    binv_ = -Matrix::Identity(m_, m_);
    since_refactor_ = 0;
  }

  bool install(const Basis& basis) {
    if (static_cast<int>(basis.cols.size()) != n_ || static_cast<int>(basis.rows.size()) > m_) {
      return false;
    }
    status_.assign(total_, VarStatus::basic);
    for (int j = 0; j < n_; ++j) status_[j] = basis.cols[j];
    for (std::size_t i = 0; i < basis.rows.size(); ++i) status_[n_ + i] = basis.rows[i];
    head_.clear();
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::basic) {
        head_.push_back(j);
        continue;
      }
      // Repair statuses that point at an infinite bound.
      if ((status_[j] == VarStatus::at_lower && !std::isfinite(lower_[j])) ||
          (status_[j] == VarStatus::at_upper && !std::isfinite(upper_[j])) ||
          (status_[j] == VarStatus::at_zero &&
           (std::isfinite(lower_[j]) || std::isfinite(upper_[j])))) {
        status_[j] = default_nonbasic(j);
      }
    }
    if (static_cast<int>(head_.size()) != m_) return false;
    return refactor();
  }

  bool refactor() {
    Matrix basis(m_, m_);
    for (int r = 0; r < m_; ++r) basis.col(r) = column(head_[r]);
    Eigen::FullPivLU<Matrix> lu(basis);
    lu.setThreshold(1e-11);
    if (lu.rank() < m_) return false;
    binv_ = lu.inverse();
    // One step of iterative refinement on the inverse: X <- X + X (I - B X).
    binv_ += binv_ * (Matrix::Identity(m_, m_) - basis * binv_);
    since_refactor_ = 0;
    return true;
  }

  void pivot(const Vector& alpha, int r) {
    const double piv = alpha[r];
    binv_.row(r) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      binv_.row(i) -= alpha[i] * binv_.row(r);
    }
    ++since_refactor_;
  }

  double nonbasic_value(int j) const {
    switch (status_[j]) {
      case VarStatus::at_lower: return lower_[j];
      case VarStatus::at_upper: return upper_[j];
      default: return 0.0;
    }
  }

  void compute_basic_values() {
    Vector rhs = Vector::Zero(m_);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::basic) continue;
      const double v = nonbasic_value(j);
      value_[j] = v;
      if (v == 0.0) continue;
      if (j < n_) {
        rhs.noalias() -= v * lp_.rows.col(j);
      } else {
        rhs[j - n_] += v;
      }
    }
    const Vector xb = binv_ * rhs;
    for (int r = 0; r < m_; ++r) value_[head_[r]] = xb[r];
  }

  double primal_infeasibility() const {
    double sum = 0.0;
    for (int r = 0; r < m_; ++r) {
      const int var = head_[r];
      const double v = value_[var];
      if (v < lower_[var] - tol(lower_[var])) sum += lower_[var] - v;
      if (v > upper_[var] + tol(upper_[var])) sum += v - upper_[var];
    }
    return sum;
  }

  Vector phase_costs(bool phase_one) const {
    if (!phase_one) return cost_;
    Vector costs = Vector::Zero(total_);
    for (int r = 0; r < m_; ++r) {
      const int var = head_[r];
      const double v = value_[var];
      if (v < lower_[var] - tol(lower_[var])) costs[var] = -1.0;
      if (v > upper_[var] + tol(upper_[var])) costs[var] = 1.0;
    }
    return costs;
  }

  Vector basic_costs(const Vector& costs) const {
    Vector cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = costs[head_[r]];
    return cb;
  }

  LPResult& finish(LPResult& result, int iterations) {
    result.iterations = iterations;
    result.basis.cols.assign(status_.begin(), status_.begin() + n_);
    result.basis.rows.assign(status_.begin() + n_, status_.end());
    if (result.status != LPStatus::optimal) {
      compute_basic_values();
      result.primal = value_.head(n_);
      result.row_activity = lp_.rows * result.primal;
      return result;
    }

    // Final solve on an explicitly refined basis system.
    Matrix basis(m_, m_);
    for (int r = 0; r < m_; ++r) basis.col(r) = column(head_[r]);
    Eigen::PartialPivLU<Matrix> lu(basis);
    Vector rhs = Vector::Zero(m_);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::basic) continue;
      const double v = nonbasic_value(j);
      value_[j] = v;
      if (j < n_) {
        rhs.noalias() -= v * lp_.rows.col(j);
      } else {
        rhs[j - n_] += v;
      }
    }
    Vector xb = lu.solve(rhs);
    xb += lu.solve(rhs - basis * xb);
    for (int r = 0; r < m_; ++r) value_[head_[r]] = xb[r];

    const Vector cb = basic_costs(cost_);
    Eigen::PartialPivLU<Matrix> lut(basis.transpose());
    Vector y = lut.solve(cb);
    y += lut.solve(cb - basis.transpose() * y);

    const double sign = lp_.sense == Sense::minimize ? 1.0 : -1.0;
    result.primal = value_.head(n_);
    for (int j = 0; j < n_; ++j) {
      // Snap nonbasic columns exactly onto their bounds.
      if (status_[j] != VarStatus::basic) result.primal[j] = nonbasic_value(j);
    }
    result.row_activity = lp_.rows * result.primal;
    result.dual = sign * y;
    result.reduced_costs.resize(n_);
    double dual_obj = 0.0;
    for (int j = 0; j < total_; ++j) {
      const double d = status_[j] == VarStatus::basic ? 0.0 : reduced_cost(cost_, y, j);
      if (j < n_) result.reduced_costs[j] = sign * d;
      if (std::abs(d) <= 1e-13) continue;
      const double bound = d > 0.0 ? lower_[j] : upper_[j];
      dual_obj += std::isfinite(bound) ? d * bound : -kInf;
    }
    result.objective = lp_.objective.dot(result.primal);
    result.dual_objective = sign * dual_obj;
    return result;
  }

  const LinearProgram& lp_;
  int n_;
  int m_;
  int total_;
  Vector lower_;
  Vector upper_;
  Vector cost_;
  Vector value_;
  std::vector<VarStatus> status_;
  std::vector<int> head_;
  Matrix binv_;
  int since_refactor_ = 0;
};

void check_dimensions(const LinearProgram& lp) {
  const auto n = lp.objective.size();
  const auto m = lp.rows.rows();
  if ((m > 0 && lp.rows.cols() != n) || lp.row_lower.size() != m || lp.row_upper.size() != m ||
      lp.col_lower.size() != n || lp.col_upper.size() != n) {
    throw std::invalid_argument("solve_lp: incoherent dimensions");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(lp.col_lower[j]) || !std::isfinite(lp.col_upper[j])) {
      throw std::invalid_argument("solve_lp: column bounds must be finite");
    }
  }
}

}  // namespace

LPResult solve_lp(const LinearProgram& lp, const std::optional<Basis>& warm_basis) {
  check_dimensions(lp);
  for (Eigen::Index j = 0; j < lp.col_lower.size(); ++j) {
    if (lp.col_lower[j] > lp.col_upper[j]) {
      LPResult r;
      r.status = LPStatus::infeasible;
      r.primal = lp.col_lower;
      return r;
    }
  }
  for (Eigen::Index i = 0; i < lp.row_lower.size(); ++i) {
    if (lp.row_lower[i] > lp.row_upper[i]) {
      LPResult r;
      r.status = LPStatus::infeasible;
      r.primal = lp.col_lower;
      return r;
    }
  }
  if (lp.rows.rows() == 0) {
    // Pure box: every column sits at its better bound.
    LPResult r;
    r.status = LPStatus::optimal;
    const double sign = lp.sense == Sense::minimize ? 1.0 : -1.0;
    r.primal.resize(lp.num_cols());
    r.basis.cols.resize(lp.num_cols());
    for (int j = 0; j < lp.num_cols(); ++j) {
      const bool lower = sign * lp.objective[j] >= 0.0;
      r.primal[j] = lower ? lp.col_lower[j] : lp.col_upper[j];
      r.basis.cols[j] = lower ? VarStatus::at_lower : VarStatus::at_upper;
    }
    r.row_activity.resize(0);
    r.dual.resize(0);
    r.reduced_costs = lp.objective;
    r.objective = lp.objective.dot(r.primal);
    r.dual_objective = r.objective;
    return r;
  }
  BoundedSimplex solver(lp);
  return solver.run(warm_basis);
}

int active_set_rank(const LinearProgram& lp, const Vector& x, double tol) {
  const int n = lp.num_cols();
  std::vector<Vector> normals;
  const Vector act = lp.rows * x;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const double scale = tol * (1.0 + lp.rows.row(i).cwiseAbs().maxCoeff());
    if ((std::isfinite(lp.row_lower[i]) && std::abs(act[i] - lp.row_lower[i]) <= scale) ||
        (std::isfinite(lp.row_upper[i]) && std::abs(act[i] - lp.row_upper[i]) <= scale)) {
      normals.emplace_back(lp.rows.row(i).transpose());
    }
  }
  for (int j = 0; j < n; ++j) {
    if (std::abs(x[j] - lp.col_lower[j]) <= tol || std::abs(x[j] - lp.col_upper[j]) <= tol) {
      normals.push_back(Vector::Unit(n, j));
    }
  }
  if (normals.empty()) return 0;
  Matrix active(static_cast<Eigen::Index>(normals.size()), n);
  for (std::size_t k = 0; k < normals.size(); ++k) {
    active.row(static_cast<Eigen::Index>(k)) = normals[k].transpose() / normals[k].norm();
  }
  Eigen::FullPivLU<Matrix> lu(active);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

}  // namespace bicut
