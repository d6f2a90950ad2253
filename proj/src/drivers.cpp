// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/drivers.hpp"

#include "bicut/branch_and_bound.hpp"
#include "bicut/relaxation.hpp"

#include <chrono>
#include <cmath>

namespace bicut {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kDuplicateTolerance = 1e-7;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vector normalized(const LinearRow& row) {
  Vector v(row.coef.size() + 1);
  v << row.coef, row.rhs;
  const double norm = v.norm();
  return norm > 0.0 ? Vector(v / norm) : v;
}

bool is_duplicate(const LinearRow& row, const std::vector<LinearRow>& pool) {
  const Vector v = normalized(row);
  for (const auto& other : pool) {
    if ((normalized(other) - v).lpNorm<Eigen::Infinity>() <= kDuplicateTolerance) return true;
  }
  return false;
}

void count_cuts(SolveReport& report) {
  report.n_icut = 0;
  report.n_fcut = 0;
  for (const auto& cut : report.cuts) {
    (cut.from_fractional ? report.n_fcut : report.n_icut) += 1;
  }
}

void finish_gaps(SolveReport& report) {
  std::optional<double> z;
  if (report.incumbent) z = report.z_star;
  const Gaps gaps = compute_gaps(z, report.lower_bound, report.root_z_star, report.root_lower_bound);
  report.gap = gaps.gap;
  report.rgap = gaps.rgap;
}

// Separation with timers, audit bookkeeping and the Theorem-1 check.
class Separator {
 public:
  Separator(const Instance& inst, const SolverSettings& settings, SolveReport& report,
            Clock::time_point deadline)
      : inst_(inst), settings_(settings), report_(report), deadline_(deadline) {}

  struct Outcome {
    std::optional<Cut> cut;
    /// The point is bilevel feasible.
    bool feasible = false;
    /// The follower was cut short by the deadline.
    bool unknown = false;
    /// Bilevel infeasible without a cut (non-strict mode only).
    bool miss = false;
  };

  Outcome integer_point(const Point& p, const PolyhedralRelaxation& relax, const Vector& lb,
                        const Vector& ub, std::span<const LinearRow> local_cuts, bool root) {
    const SeparationContext ctx = context(relax, lb, ub, local_cuts, root);
    SeparationResult r = run(p, settings_.strategy, ctx);
    Outcome out;
    if (r.cut) {
      if (settings_.audit && r.candidate) ++report_.audit_points;
      out.cut = std::move(r.cut);
      return out;
    }
    switch (r.follower_status) {
      case FollowerStatus::no_better_than_cutoff:
        out.feasible = true;
        return out;
      case FollowerStatus::infeasible:
        throw SolverInvariantError(
            "follower infeasible at an integer point of the high-point relaxation");
      case FollowerStatus::time_limit:
        out.unknown = true;
        return out;
      case FollowerStatus::optimal:
      case FollowerStatus::aborted:
        break;
    }
    if (!r.candidate) {
      out.unknown = true;
      return out;
    }
    if (settings_.audit) {
      ++report_.audit_points;
      if (settings_.strategy != Strategy::O) {
        SeparationResult retry = run(p, Strategy::O, ctx);
        if (retry.cut) {
          out.cut = std::move(retry.cut);
          return out;
        }
        r.diagnostic = retry.diagnostic;
      }
    }
    if (settings_.strict) {
      throw SolverInvariantError("no cut at an integer bilevel-infeasible point: " + r.diagnostic);
    }
    if (settings_.audit) ++report_.audit_misses;
    out.miss = true;
    return out;
  }

  std::optional<Cut> fractional_point(const Point& p, const PolyhedralRelaxation& relax,
                                      const Vector& lb, const Vector& ub,
                                      std::span<const LinearRow> local_cuts, bool root) {
    return run(p, settings_.strategy, context(relax, lb, ub, local_cuts, root)).cut;
  }

 private:
  SeparationContext context(const PolyhedralRelaxation& relax, const Vector& lb, const Vector& ub,
                            std::span<const LinearRow> local_cuts, bool root) const {
    return SeparationContext{inst_, relax, lb, ub, local_cuts, root, settings_.eps, deadline_};
  }

  SeparationResult run(const Point& p, Strategy strategy, const SeparationContext& ctx) {
    SeparationResult r = separate(p, strategy, ctx);
    report_.t_follower += r.t_follower;
    report_.t_socp += r.t_socp;
    return r;
  }

  const Instance& inst_;
  const SolverSettings& settings_;
  SolveReport& report_;
  Clock::time_point deadline_;
};

Clock::time_point deadline_after(Clock::time_point start, double seconds) {
  if (!std::isfinite(seconds) || seconds > 1e9) return Clock::time_point::max();
  return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

void validate(const Instance& inst) {
  const auto report = validate_instance(inst);
  if (!report.ok()) throw std::invalid_argument("invalid instance: " + report.violations.front());
}

// Row excluding the binary point z only.
LinearRow no_good(const Vector& z) {
  LinearRow row;
  row.coef = Vector(z.size());
  row.rhs = 1.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (z[j] > 0.5) {
      row.coef[j] = -1.0;
      row.rhs -= 1.0;
    } else {
      row.coef[j] = 1.0;
    }
  }
  return row;
}

}  // namespace

std::string SolverSettings::name() const {
  const char* s = strategy == Strategy::O ? "O" : "G";
  if (method == Method::cutting_plane) return std::string("CP-") + s;
  return std::string(separate_fractional ? "IF-" : "I-") + s;
}

SolverSettings parse_setting(std::string_view name) {
  SolverSettings s;
  const auto dash = name.find('-');
  if (dash == std::string_view::npos) {
    throw std::invalid_argument("unknown setting '" + std::string(name) + "'");
  }
  const auto head = name.substr(0, dash);
  const auto tail = name.substr(dash + 1);
  if (tail == "O") {
    s.strategy = Strategy::O;
  } else if (tail == "G") {
    s.strategy = Strategy::G;
  } else {
    throw std::invalid_argument("unknown setting '" + std::string(name) + "'");
  }
  if (head == "I") {
    s.method = Method::branch_and_cut;
  } else if (head == "IF") {
    s.method = Method::branch_and_cut;
    s.separate_fractional = true;
  } else if (head == "CP") {
    s.method = Method::cutting_plane;
  } else {
    throw std::invalid_argument("unknown setting '" + std::string(name) + "'");
  }
  return s;
}

SolveReport solve_branch_and_cut(const Instance& inst, const SolverSettings& settings) {
  validate(inst);
  const auto start = Clock::now();
  PolyhedralRelaxation relax = build_hpr(inst);
  SolveReport stats;
  Separator separator(inst, settings, stats, deadline_after(start, settings.time_limit));

  auto scoped = [&](Cut cut, const Node& node) {
    cut.scope = node.is_root() ? CutScope::global : CutScope::local;
    return cut;
  };
  auto fresh = [&](const Cut& cut, const Node& node) {
    const LinearRow row = cut.as_row();
    return !is_duplicate(row, relax.cuts) && !is_duplicate(row, node.local_cuts);
  };

  Callbacks callbacks;
  callbacks.on_integer = [&](const Vector& z, const Node& node) {
    const Point p = Point::split(inst, z);
    auto out = separator.integer_point(p, relax, node.lb, node.ub, node.local_cuts, node.is_root());
    if (out.feasible) return IntegerVerdict::accepted();
    if (out.cut && fresh(*out.cut, node)) return IntegerVerdict::rejected({scoped(*out.cut, node)});
    return IntegerVerdict::rejected();
  };
  if (settings.separate_fractional) {
    callbacks.on_fractional = [&](const Vector& z, const Node& node) -> std::vector<Cut> {
      const Point p = Point::split(inst, z);
      auto cut = separator.fractional_point(p, relax, node.lb, node.ub, node.local_cuts,
                                            node.is_root());
      if (!cut || !fresh(*cut, node)) return {};
      return {scoped(*cut, node)};
    };
  }

  BBLimits limits;
  limits.time_limit = settings.time_limit;
  limits.eps = settings.eps;
  SolveReport report = solve_bb(relax, callbacks, limits);
  report.setting = settings.name();
  report.t_follower = stats.t_follower;
  report.t_socp = stats.t_socp;
  report.audit_points = stats.audit_points;
  report.audit_misses = stats.audit_misses;
  count_cuts(report);
  report.t = seconds_since(start);
  return report;
}

SolveReport solve_cutting_plane(const Instance& inst, const SolverSettings& settings) {
  validate(inst);
  if (!inst.is_binary()) {
    throw std::invalid_argument("the cutting-plane method requires an all-binary instance");
  }
  const auto start = Clock::now();
  const auto deadline = deadline_after(start, settings.time_limit);
  PolyhedralRelaxation relax = build_hpr(inst);
  SolveReport report;
  report.setting = settings.name();
  Separator separator(inst, settings, report, deadline);

  auto stop = [&](SolveStatus status) {
    report.status = status;
    if (status == SolveStatus::infeasible) report.lower_bound = INFINITY;
    count_cuts(report);
    finish_gaps(report);
    report.t = seconds_since(start);
    return report;
  };

  while (true) {
    const double remaining = settings.time_limit - seconds_since(start);
    if (remaining <= 0.0) return stop(SolveStatus::time_limit);
    ++report.cp_iterations;

    PolyhedralRelaxation r = relax;
    BBLimits limits;
    limits.time_limit = remaining;
    limits.eps = settings.eps;
    const SolveReport sub = solve_bb(r, {}, limits);
    relax.outer_rows = std::move(r.outer_rows);
    report.nodes += sub.nodes;
    if (sub.status == SolveStatus::infeasible) return stop(SolveStatus::infeasible);
    if (sub.status == SolveStatus::time_limit) {
      report.lower_bound = std::max(report.lower_bound, sub.lower_bound);
      return stop(SolveStatus::time_limit);
    }
    report.relaxation_values.push_back(sub.z_star);
    report.lower_bound = std::max(report.lower_bound, sub.z_star);
    const bool first = report.cp_iterations == 1;

    const Point& p = *sub.incumbent;
    auto out = separator.integer_point(p, relax, relax.lb, relax.ub, {}, true);
    if (out.feasible) {
      report.incumbent = p;
      report.z_star = sub.z_star;
      report.lower_bound = sub.z_star;
      if (first) {
        report.root_z_star = sub.z_star;
        report.root_lower_bound = sub.z_star;
      }
      return stop(SolveStatus::optimal);
    }
    if (first) report.root_lower_bound = sub.z_star;
    if (out.unknown) return stop(SolveStatus::time_limit);
    if (out.cut && !is_duplicate(out.cut->as_row(), relax.cuts)) {
      Cut cut = std::move(*out.cut);
      cut.scope = CutScope::global;
      cut.node_id = -1;
      cut.from_fractional = false;
      relax.cuts.push_back(cut.as_row());
      report.cuts.push_back(std::move(cut));
    } else {
      relax.cuts.push_back(no_good(p.joined()));
    }
  }
}

SolveReport solve(const Instance& inst, const SolverSettings& settings) {
  return settings.method == Method::cutting_plane ? solve_cutting_plane(inst, settings)
                                                  : solve_branch_and_cut(inst, settings);
}

}  // namespace bicut
