// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/verify.hpp"

#include "bicut/follower.hpp"

#include <cmath>
#include <sstream>

namespace bicut {

namespace {

void append(std::ostringstream& out, const Vector& v) {
  out << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << "]";
}

std::string describe_point(const Point& p) {
  std::ostringstream out;
  out << "x=";
  append(out, p.x);
  out << " y=";
  append(out, p.y);
  return out.str();
}

double leader_value(const Instance& inst, const Point& p) {
  return inst.c.dot(p.x) + inst.d.dot(p.y);
}

}  // namespace

std::string describe_cut(const Cut& cut) {
  std::ostringstream out;
  out.precision(10);
  out << (cut.scope == CutScope::global ? "global" : "local") << " cut alpha=";
  append(out, cut.alpha);
  out << " beta=";
  append(out, cut.beta);
  out << " tau=" << cut.tau;
  if (cut.scope == CutScope::local) out << " node=" << cut.node_id;
  return out.str();
}

VerifyOutcome verify_report(const Instance& inst, const SolveReport& report,
                            const VerifyTolerances& tol) {
  VerifyOutcome out;
  auto fail = [&](const std::string& msg) { out.failures.push_back(msg); };

  for (const auto& cut : report.cuts) {
    if (!(cut.violation_at_source > tol.cut_violation)) {
      std::ostringstream msg;
      msg << "cut violation at source " << cut.violation_at_source << " not above "
          << tol.cut_violation << ": " << describe_cut(cut);
      fail(msg.str());
    }
  }

  if (report.incumbent) {
    const Point& p = *report.incumbent;
    if (hpr_violation(inst, p) > 1e-6) fail("incumbent violates the HPR: " + describe_point(p));
    if (!is_integral(p.joined())) fail("incumbent is not integral: " + describe_point(p));
    const double phi_x = phi(inst, p.x);
    if (!(evaluate_q(inst, p.y) <= phi_x + 1e-6 * (1.0 + std::abs(phi_x)))) {
      fail("incumbent is not bilevel feasible: " + describe_point(p));
    }
    if (std::abs(leader_value(inst, p) - report.z_star) > tol.value) {
      fail("z* does not match the incumbent objective");
    }
  } else if (report.status == SolveStatus::optimal) {
    fail("status optimal without an incumbent");
  }
  if (report.has_incumbent() && report.lower_bound > report.z_star + tol.value) {
    fail("lower bound exceeds z*");
  }

  if (lattice_size(inst) > kOracleGuard) {
    out.notice = "oracle skipped: lattice exceeds the enumeration guard";
    return out;
  }
  out.oracle = brute_force_solve(inst, true);
  const OracleResult& o = *out.oracle;

  if (report.status == SolveStatus::time_limit) {
    out.notice = "solver stopped at the time limit; optimal value not compared";
  } else if (o.status == OracleStatus::infeasible) {
    if (report.status != SolveStatus::infeasible) fail("oracle reports infeasible, solver does not");
  } else if (report.status != SolveStatus::optimal) {
    fail("solver reports " + std::string(to_string(report.status)) + ", oracle optimal");
  } else if (std::abs(report.z_star - o.value) > tol.value) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "value " << report.z_star << " differs from oracle " << o.value;
    fail(msg.str());
  }

  for (const auto& cut : report.cuts) {
    if (cut.scope != CutScope::global) continue;
    for (const auto& p : o.bilevel_feasible) {
      const double v = cut.violation(p.x, p.y);
      if (v > tol.cut_validity) {
        std::ostringstream msg;
        msg << "cut cuts off bilevel-feasible " << describe_point(p) << " by " << v << ": "
            << describe_cut(cut);
        fail(msg.str());
        break;
      }
    }
  }
  return out;
}

}  // namespace bicut
