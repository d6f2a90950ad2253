// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/follower.hpp"

#include "bicut/conic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRowTolerance = 1e-9;
constexpr double kPruneTolerance = 1e-9;

struct FollowerNode {
  Vector lb;
  Vector ub;
  double bound = -kInf;
  int id = 0;
};

struct NodeOrder {
  bool operator()(const FollowerNode& a, const FollowerNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

enum class RelaxStatus { solved, infeasible, unknown };

struct Relaxed {
  RelaxStatus status = RelaxStatus::unknown;
  double bound = -kInf;
  Vector y;
};

class FollowerSearch {
 public:
  FollowerSearch(const Instance& inst, const FollowerQuery& query, const IncumbentSink& sink)
      : inst_(inst), query_(query), sink_(sink) {
    if (query.x_star.size() != inst.n1) {
      throw std::invalid_argument("x_star has wrong dimension");
    }
    link_rhs_ = inst.f - inst.a.dot(query.x_star);
  }

  FollowerResult run() {
    const int n2 = inst_.n2;
    std::priority_queue<FollowerNode, std::vector<FollowerNode>, NodeOrder> open;
    std::optional<FollowerNode> current =
        FollowerNode{inst_.lb.tail(n2), inst_.ub.tail(n2), -kInf, 0};
    int next_id = 1;

    while (!aborted_) {
      if (!current) {
        if (open.empty()) break;
        current = open.top();
        open.pop();
      }
      FollowerNode node = std::move(*current);
      current.reset();
      if (query_.deadline && std::chrono::steady_clock::now() > *query_.deadline) {
        timed_out_ = true;
        break;
      }
      if (prune(node.bound) || !box_feasible(node)) continue;
      ++result_.nodes;

      const Relaxed r = relax(node);
      if (r.status == RelaxStatus::infeasible) continue;
      if (r.status == RelaxStatus::solved && prune(r.bound)) continue;

      // Rounding heuristics on the relaxation point.
      Vector nearest(n2), upward(n2);
      for (int j = 0; j < n2; ++j) {
        nearest[j] = std::clamp(std::round(r.y[j]), node.lb[j], node.ub[j]);
        upward[j] = std::clamp(std::ceil(r.y[j] - kIntegralityTolerance), node.lb[j], node.ub[j]);
      }
      const bool nearest_ok = offer(nearest);
      if (aborted_) break;
      offer(upward);
      if (aborted_) break;
      if (r.status == RelaxStatus::solved && prune(r.bound)) continue;

      int j = most_fractional(r.y, node);
      double split = 0.0;
      bool dive_up = false;
      if (j >= 0) {
        split = std::floor(r.y[j]);
        dive_up = r.y[j] - split >= 0.5;
      } else {
        if (r.status == RelaxStatus::solved && nearest_ok &&
            evaluate_q(inst_, nearest) <= r.bound + 1e-7 * (1.0 + std::abs(r.bound))) {
          continue;
        }
        j = first_unfixed(node);
        if (j < 0) continue;
        const double v = nearest[j];
        if (v < node.ub[j]) {
          split = v;
        } else {
          split = v - 1.0;
          dive_up = true;
        }
      }
      FollowerNode down = node;
      FollowerNode up = node;
      down.ub[j] = split;
      up.lb[j] = split + 1.0;
      const double bound = r.status == RelaxStatus::solved ? r.bound : node.bound;
      down.bound = up.bound = bound;
      down.id = next_id++;
      up.id = next_id++;
      if (dive_up) {
        open.push(std::move(down));
        current = std::move(up);
      } else {
        open.push(std::move(up));
        current = std::move(down);
      }
    }

    if (aborted_) {
      result_.status = FollowerStatus::aborted;
    } else if (timed_out_) {
      result_.status = FollowerStatus::time_limit;
    } else if (std::isfinite(result_.phi)) {
      result_.status = FollowerStatus::optimal;
    } else if (cutoff_hit_) {
      result_.status = FollowerStatus::no_better_than_cutoff;
    } else {
      result_.status = FollowerStatus::infeasible;
    }
    return result_;
  }

 private:
  double threshold() const { return std::min(result_.phi, query_.cutoff); }

  bool prune(double bound) {
    if (bound >= threshold() - kPruneTolerance) {
      if (std::isfinite(query_.cutoff) && query_.cutoff <= result_.phi) cutoff_hit_ = true;
      return true;
    }
    return false;
  }

  bool rows_feasible(const Vector& y) const {
    if (inst_.b.dot(y) < link_rhs_ - kRowTolerance) return false;
    for (int i = 0; i < inst_.y_rows(); ++i) {
      if (inst_.Y_C.row(i).dot(y) < inst_.Y_u[i] - kRowTolerance) return false;
    }
    return true;
  }

  // Necessary condition: every row can still be satisfied inside the box.
  bool box_feasible(const FollowerNode& node) const {
    auto reachable = [&](const auto& coef, double rhs) {
      double best = 0.0;
      for (int j = 0; j < inst_.n2; ++j) best += std::max(coef[j] * node.lb[j], coef[j] * node.ub[j]);
      return best >= rhs - kRowTolerance;
    };
    if (!reachable(inst_.b, link_rhs_)) return false;
    for (int i = 0; i < inst_.y_rows(); ++i) {
      if (!reachable(inst_.Y_C.row(i), inst_.Y_u[i])) return false;
    }
    return true;
  }

  // Records y if it is feasible and improves; returns feasibility.
  bool offer(const Vector& y) {
    if (!rows_feasible(y)) return false;
    const double q = evaluate_q(inst_, y);
    if (q >= query_.cutoff) {
      cutoff_hit_ = true;
      return true;
    }
    if (q < result_.phi) {
      result_.phi = q;
      result_.best_y = y;
      ++result_.incumbents;
      if (sink_ && !sink_(y, q)) aborted_ = true;
    }
    return true;
  }

  int most_fractional(const Vector& y, const FollowerNode& node) const {
    int best = -1;
    double best_dist = kIntegralityTolerance;
    for (int j = 0; j < inst_.n2; ++j) {
      if (node.lb[j] == node.ub[j]) continue;
      const double frac = y[j] - std::floor(y[j]);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist > best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    return best;
  }

  int first_unfixed(const FollowerNode& node) const {
    for (int j = 0; j < inst_.n2; ++j) {
      if (node.lb[j] < node.ub[j]) return j;
    }
    return -1;
  }

  // min t + g'y  s.t.  ((1 + t)/2, V y, (t - 1)/2) in Q, linear rows, box;
  // variables fixed by the box are substituted out.
  Relaxed relax(const FollowerNode& node) const {
    const int n2 = inst_.n2;
    std::vector<int> free_vars;
    Vector fixed = Vector::Zero(n2);
    for (int j = 0; j < n2; ++j) {
      if (node.lb[j] < node.ub[j]) {
        free_vars.push_back(j);
      } else {
        fixed[j] = node.lb[j];
      }
    }
    Relaxed out;
    if (free_vars.empty()) {
      out.y = fixed;
      if (!rows_feasible(fixed)) {
        out.status = RelaxStatus::infeasible;
      } else {
        out.status = RelaxStatus::solved;
        out.bound = evaluate_q(inst_, fixed);
      }
      return out;
    }

    const int nf = static_cast<int>(free_vars.size());
    const int nv = nf + 1;
    const int n3 = inst_.n3();
    const int linear = 1 + inst_.y_rows() + 2 * nf;
    const int m = linear + n3 + 2;
    ConeProgram cp;
    cp.c = Vector::Zero(nv);
    cp.A.resize(0, nv);
    cp.b.resize(0);
    cp.G = Matrix::Zero(m, nv);
    cp.h = Vector::Zero(m);
    cp.cones.nonneg = linear;
    cp.cones.lorentz = {n3 + 2};
    for (int k = 0; k < nf; ++k) cp.c[k] = inst_.g[free_vars[k]];
    cp.c[nf] = 1.0;

    int r = 0;
    auto linear_row = [&](const auto& coef, double rhs) {
      double shifted = rhs;
      for (int j = 0; j < n2; ++j) shifted -= coef[j] * fixed[j];
      for (int k = 0; k < nf; ++k) cp.G(r, k) = -coef[free_vars[k]];
      cp.h[r] = -shifted;
      ++r;
    };
    linear_row(inst_.b, link_rhs_);
    for (int i = 0; i < inst_.y_rows(); ++i) linear_row(inst_.Y_C.row(i), inst_.Y_u[i]);
    for (int k = 0; k < nf; ++k) {
      cp.G(r, k) = -1.0;
      cp.h[r++] = -node.lb[free_vars[k]];
      cp.G(r, k) = 1.0;
      cp.h[r++] = node.ub[free_vars[k]];
    }
    const Vector v0 = inst_.V * fixed;
    cp.G(r, nf) = -0.5;
    cp.h[r++] = 0.5;
    for (int i = 0; i < n3; ++i) {
      for (int k = 0; k < nf; ++k) cp.G(r, k) = -inst_.V(i, free_vars[k]);
      cp.h[r++] = v0[i];
    }
    cp.G(r, nf) = -0.5;
    cp.h[r] = -0.5;

    const double constant = inst_.g.dot(fixed);
    const ConicResult res = solve_conic(cp);
    out.y = fixed;
    if (res.x.size() == nv) {
      for (int k = 0; k < nf; ++k) out.y[free_vars[k]] = res.x[k];
    }
    if (res.status == ConicStatus::optimal) {
      out.status = RelaxStatus::solved;
      out.bound = std::min(res.objective, res.dual_objective) + constant;
    } else if (res.status == ConicStatus::infeasible) {
      out.status = RelaxStatus::infeasible;
    }
    if (!out.y.allFinite()) out.y = node.lb;
    return out;
  }

  const Instance& inst_;
  const FollowerQuery& query_;
  const IncumbentSink& sink_;
  double link_rhs_ = 0.0;
  FollowerResult result_;
  bool cutoff_hit_ = false;
  bool aborted_ = false;
  bool timed_out_ = false;
};

}  // namespace

std::string_view to_string(FollowerStatus status) {
  switch (status) {
    case FollowerStatus::optimal: return "optimal";
    case FollowerStatus::no_better_than_cutoff: return "no_better_than_cutoff";
    case FollowerStatus::infeasible: return "infeasible";
    case FollowerStatus::aborted: return "aborted";
    case FollowerStatus::time_limit: return "time_limit";
  }
  return "unknown";
}

FollowerResult solve_follower(const Instance& inst, const FollowerQuery& query,
                              const IncumbentSink& sink) {
  return FollowerSearch(inst, query, sink).run();
}

double phi(const Instance& inst, const Vector& x_star) {
  FollowerQuery query;
  query.x_star = x_star;
  const auto result = solve_follower(inst, query);
  return result.status == FollowerStatus::optimal ? result.phi : kInf;
}

}  // namespace bicut
