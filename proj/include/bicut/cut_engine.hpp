// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/conic.hpp"
#include "bicut/follower.hpp"
#include "bicut/model.hpp"
#include "bicut/relaxation.hpp"
#include "bicut/report.hpp"

#include <optional>
#include <span>
#include <string>

namespace bicut {

inline constexpr double kDefaultCutViolation = 1e-6;

/// D1: a'x <= f - b'y_hat - 1   or   D2: q(y) <= q(y_hat), the latter as
/// D_tilde y - c_tilde in Q.
struct Disjunction {
  Vector d1_a;
  double d1_rhs = 0.0;
  Matrix D_tilde;
  Vector c_tilde;
  double q_hat = 0.0;
  Vector y_hat;
};

/// Throws std::invalid_argument if y_hat is not integral or has the wrong size.
Disjunction build_disjunction(const Instance& inst, const Vector& y_hat);

/// Everything needed to write the cut-generating program at one point.
struct CGLPDescription {
  BarSystem bar;
  /// Conic rows of the relaxation split into their x and y parts.
  Matrix Mt;
  Matrix Nt;
  Vector ht;
  std::vector<int> cones;
  Disjunction disjunction;
  Vector x_star;
  Vector y_star;
  /// Box of the node; its bound rows are part of `bar`.
  Vector lb;
  Vector ub;
  /// True when the box and rows are those of the root.
  bool root = true;
  double eps = kDefaultCutViolation;
};

CGLPDescription describe(const PolyhedralRelaxation& relax, const Vector& lb, const Vector& ub,
                         std::span<const LinearRow> local_cuts, bool root,
                         const Disjunction& disjunction, const Point& point,
                         double eps = kDefaultCutViolation);

/// Variables (alpha, beta, tau, pi1, pi2, pt1, pt2, sigma, rho); maximize
/// tau - alpha'x* - beta'y* under the multiplier equalities, the two tau
/// inequalities, the sign / cone constraints of the multipliers and
/// |(pi1, pi2, pt1, pt2, sigma, rho)|_2 <= 1.
ConeProgram assemble_cgsocp(const CGLPDescription& desc);

/// Cut from a solution of assemble_cgsocp(desc).  The multipliers are
/// projected onto their cones and tau is recomputed so the cut is valid for
/// both disjunctive terms over the node box.  None if the solver did not
/// reach optimality or the violation is not above desc.eps.
std::optional<Cut> extract_cut(const ConicResult& result, const CGLPDescription& desc,
                               std::string* diagnostic = nullptr);

/// Multiplier vector (pi1, pi2, pt1, pt2, sigma, rho) of a solution.
Vector cgsocp_multipliers(const ConicResult& result, const CGLPDescription& desc);

enum class Strategy { O, G };

struct SeparationContext {
  const Instance& inst;
  const PolyhedralRelaxation& relax;
  Vector lb;
  Vector ub;
  std::span<const LinearRow> local_cuts;
  bool root = true;
  double eps = kDefaultCutViolation;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SeparationResult {
  std::optional<Cut> cut;
  FollowerStatus follower_status = FollowerStatus::infeasible;
  /// Some follower solution with q(y_hat) < q(y*) was found.
  bool candidate = false;
  int socp_solves = 0;
  double t_follower = 0.0;
  double t_socp = 0.0;
  std::string diagnostic;
};

/// Strategy O: follower to optimality with cutoff q(y*), one CG-SOCP with the
/// optimal y_hat.  Strategy G: one CG-SOCP per streamed follower incumbent,
/// stopping at the first significantly violated cut.
SeparationResult separate(const Point& point, Strategy strategy, const SeparationContext& ctx);

}  // namespace bicut
