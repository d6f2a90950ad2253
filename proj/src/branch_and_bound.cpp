// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace bicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct OpenOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

LinearProgram node_lp(const PolyhedralRelaxation& relax, const Node& node) {
  const int n = relax.n();
  const std::size_t m = relax.rows.size() + relax.cuts.size() + relax.outer_rows.size() +
                        node.local_cuts.size();
  LinearProgram lp;
  lp.objective = relax.objective;
  lp.rows.resize(static_cast<Eigen::Index>(m), n);
  lp.row_lower.resize(static_cast<Eigen::Index>(m));
  lp.row_upper = Vector::Constant(static_cast<Eigen::Index>(m), kInf);
  Eigen::Index r = 0;
  auto append = [&](const std::vector<LinearRow>& rows) {
    for (const auto& row : rows) {
      lp.rows.row(r) = row.coef.transpose();
      lp.row_lower[r] = row.rhs;
      ++r;
    }
  };
  append(relax.rows);
  append(relax.cuts);
  append(relax.outer_rows);
  append(node.local_cuts);
  lp.col_lower = node.lb;
  lp.col_upper = node.ub;
  return lp;
}

std::optional<Basis> map_warm_start(const PolyhedralRelaxation& relax, const Node& node) {
  if (!node.warm) return std::nullopt;
  const WarmStart& ws = *node.warm;
  const std::size_t sizes[4] = {relax.rows.size(), relax.cuts.size(), relax.outer_rows.size(),
                                node.local_cuts.size()};
  const std::size_t old_sizes[4] = {ws.base_rows, ws.cut_rows, ws.outer_rows, ws.local_rows};
  Basis basis;
  basis.cols = ws.basis.cols;
  std::size_t offset = 0;
  for (int g = 0; g < 4; ++g) {
    if (old_sizes[g] > sizes[g]) return std::nullopt;
    for (std::size_t i = 0; i < sizes[g]; ++i) {
      basis.rows.push_back(i < old_sizes[g] ? ws.basis.rows[offset + i] : VarStatus::basic);
    }
    offset += old_sizes[g];
  }
  return basis;
}

Vector snap_integers(const Vector& z, const std::vector<bool>& integer, const Node& node) {
  Vector out = z;
  for (int j = 0; j < z.size(); ++j) {
    if (integer[j]) out[j] = std::clamp(std::round(z[j]), node.lb[j], node.ub[j]);
  }
  return out;
}

}  // namespace

int select_branching_variable(const Vector& z, const std::vector<bool>& integer) {
  int best = -1;
  double best_dist = kIntegralityTolerance;
  for (int j = 0; j < z.size(); ++j) {
    if (!integer[j]) continue;
    const double frac = z[j] - std::floor(z[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist) {
      best = j;
      best_dist = dist;
    }
  }
  return best;
}

std::pair<Node, Node> branch(const Node& node, const Vector& z, const std::vector<bool>& integer) {
  const int j = select_branching_variable(z, integer);
  if (j < 0) throw std::logic_error("branch() called on an integral point");
  Node down = node;
  Node up = node;
  down.ub[j] = std::floor(z[j]);
  up.lb[j] = std::ceil(z[j]);
  down.depth = up.depth = node.depth + 1;
  return {std::move(down), std::move(up)};
}

SolveReport solve_bb(PolyhedralRelaxation& relax, const Callbacks& callbacks,
                     const BBLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  SolveReport report;
  std::optional<double> incumbent;
  Vector incumbent_z;
  bool root_snapshot = false;
  bool timed_out = false;
  int next_id = 1;

  std::priority_queue<Node, std::vector<Node>, OpenOrder> open;
  std::optional<Node> current = Node{0, 0, relax.lb, relax.ub, {}, -kInf, nullptr};
  double stopped_bound = kInf;

  auto prunable = [&](double bound) {
    return incumbent && bound >= *incumbent - limits.prune_tolerance;
  };

  auto add_cuts = [&](const std::vector<Cut>& cuts, const Vector& z, Node& node, bool fractional) {
    int added = 0;
    for (Cut cut : cuts) {
      LinearRow row = cut.as_row();
      if (!(row.violation(z) > limits.eps)) continue;
      cut.from_fractional = fractional;
      if (cut.scope == CutScope::global) {
        cut.node_id = -1;
        relax.cuts.push_back(std::move(row));
      } else {
        cut.node_id = node.id;
        node.local_cuts.push_back(std::move(row));
      }
      report.cuts.push_back(std::move(cut));
      ++added;
    }
    return added;
  };

  while (true) {
    if (!current) {
      if (open.empty()) break;
      current = open.top();
      open.pop();
    }
    Node node = std::move(*current);
    current.reset();
    if (prunable(node.bound)) continue;
    if (elapsed() > limits.time_limit) {
      stopped_bound = node.bound;
      timed_out = true;
      break;
    }
    ++report.nodes;

    enum class Outcome { fathomed, branch_fractional, branch_first_unfixed, stopped };
    Outcome outcome = Outcome::fathomed;
    Vector z;
    double value = -kInf;
    int rounds = 0;
    std::vector<double> fractional_values;
    while (true) {
      const LinearProgram lp = node_lp(relax, node);
      const LPResult res = solve_lp(lp, map_warm_start(relax, node));
      if (res.status == LPStatus::infeasible) break;
      if (res.status != LPStatus::optimal) {
        throw std::runtime_error("node LP ended with status " + std::string(to_string(res.status)));
      }
      auto ws = std::make_shared<WarmStart>();
      ws->basis = res.basis;
      ws->base_rows = relax.rows.size();
      ws->cut_rows = relax.cuts.size();
      ws->outer_rows = relax.outer_rows.size();
      ws->local_rows = node.local_cuts.size();
      node.warm = std::move(ws);
      value = std::max(res.objective, node.bound);
      z = res.primal;
      if (prunable(value)) break;

      if (!relax.conic.empty()) {
        auto oa = outer_approximate(relax.conic, z);
        if (!oa.empty()) {
          for (auto& row : oa) relax.outer_rows.push_back(std::move(row));
          continue;
        }
      }

      if (elapsed() > limits.time_limit) {
        outcome = Outcome::stopped;
        break;
      }

      if (select_branching_variable(z, relax.integer) < 0) {
        const Vector zr = snap_integers(z, relax.integer, node);
        const IntegerVerdict verdict =
            callbacks.on_integer ? callbacks.on_integer(zr, node) : IntegerVerdict::accepted();
        if (verdict.accept) {
          const double v = relax.objective.dot(zr);
          if (!incumbent || v < *incumbent) {
            incumbent = v;
            incumbent_z = zr;
          }
          break;
        }
        const int added = add_cuts(verdict.cuts, zr, node, false);
        if (added == 0 || ++rounds >= limits.max_cut_rounds) {
          z = zr;
          outcome = Outcome::branch_first_unfixed;
          break;
        }
        continue;
      }

      const int tracked = static_cast<int>(fractional_values.size());
      const bool tailing =
          tracked >= limits.tailing_rounds &&
          value - fractional_values[tracked - limits.tailing_rounds] <
              limits.tailing_gain * std::max(1.0, std::abs(value));
      fractional_values.push_back(value);
      if (callbacks.on_fractional && rounds < limits.max_cut_rounds && !tailing) {
        const int added = add_cuts(callbacks.on_fractional(z, node), z, node, true);
        if (added > 0) {
          ++rounds;
          continue;
        }
      }
      outcome = Outcome::branch_fractional;
      break;
    }

    if (outcome == Outcome::stopped) {
      stopped_bound = value;
      timed_out = true;
      break;
    }
    if (outcome == Outcome::fathomed) continue;

    if (!root_snapshot) {
      root_snapshot = true;
      report.root_z_star = incumbent;
      report.root_lower_bound = value;
    }
    node.bound = value;

    Node down, up;
    bool dive_up = false;
    if (outcome == Outcome::branch_fractional) {
      std::tie(down, up) = branch(node, z, relax.integer);
      const int j = select_branching_variable(z, relax.integer);
      dive_up = z[j] - std::floor(z[j]) >= 0.5;
    } else {
      int j = -1;
      for (int k = 0; k < relax.n(); ++k) {
        if (relax.integer[k] && node.lb[k] < node.ub[k]) {
          j = k;
          break;
        }
      }
      if (j < 0) continue;
      const double v = z[j];
      down = node;
      up = node;
      if (v < node.ub[j]) {
        down.ub[j] = v;
        up.lb[j] = v + 1.0;
        dive_up = true;
      } else {
        down.ub[j] = v - 1.0;
        up.lb[j] = v;
      }
      down.depth = up.depth = node.depth + 1;
    }
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

  if (timed_out) {
    double lb = stopped_bound;
    if (current) lb = std::min(lb, current->bound);
    while (!open.empty()) {
      lb = std::min(lb, open.top().bound);
      open.pop();
    }
    if (incumbent) lb = std::min(lb, *incumbent);
    report.status = SolveStatus::time_limit;
    report.lower_bound = lb;
  } else if (incumbent) {
    report.status = SolveStatus::optimal;
    report.lower_bound = *incumbent;
  } else {
    report.status = SolveStatus::infeasible;
    report.lower_bound = kInf;
  }
  if (incumbent) {
    report.z_star = *incumbent;
    report.incumbent = Point{incumbent_z.head(relax.n1), incumbent_z.tail(relax.n2)};
  }
  if (!root_snapshot) {
    report.root_z_star = incumbent;
    report.root_lower_bound = report.lower_bound;
  }
  const Gaps gaps = compute_gaps(incumbent, report.lower_bound, report.root_z_star,
                                 report.root_lower_bound);
  report.gap = gaps.gap;
  report.rgap = gaps.rgap;
  report.t = elapsed();
  return report;
}

}  // namespace bicut
