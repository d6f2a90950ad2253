// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"
#include "bicut/relaxation.hpp"

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bicut {

enum class CutScope { global, local };

/// alpha'x + beta'y >= tau.
struct Cut {
  Vector alpha;
  Vector beta;
  double tau = 0.0;
  CutScope scope = CutScope::global;
  /// Node that produced a local cut; -1 for global cuts.
  int node_id = -1;
  double violation_at_source = 0.0;
  /// True if separated at a fractional point.
  bool from_fractional = false;

  LinearRow as_row() const;
  double violation(const Vector& x, const Vector& y) const {
    return tau - alpha.dot(x) - beta.dot(y);
  }
};

enum class SolveStatus { optimal, infeasible, time_limit };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::infeasible;
  std::string setting;
  std::optional<Point> incumbent;
  double z_star = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();

  double t = 0.0;
  double gap = 100.0;
  double rgap = 100.0;
  long long nodes = 0;
  int n_icut = 0;
  int n_fcut = 0;
  double t_follower = 0.0;
  double t_socp = 0.0;
  int cp_iterations = 0;

  /// Incumbent value and lower bound when the root is first branched on.
  std::optional<double> root_z_star;
  double root_lower_bound = -std::numeric_limits<double>::infinity();

  /// Every cut added to a relaxation, in order.
  std::vector<Cut> cuts;
  /// Cutting plane only: optimum of the relaxation at each iteration.
  std::vector<double> relaxation_values;
  /// Audit counters: integer bilevel-infeasible points examined and how many
  /// of them produced no cut.
  int audit_points = 0;
  int audit_misses = 0;

  bool has_incumbent() const { return incumbent.has_value(); }
};

struct Gaps {
  double gap;
  double rgap;
};

/// Gap = 100 (z* - LB) / |z*|,  RGap = 100 (z*_R - LB_r) / |z*|, both clamped
/// to [0, 100].  100 when the needed incumbent is missing; for z* = 0 the
/// gap is 0 if the bound matches and 100 otherwise.
Gaps compute_gaps(std::optional<double> z_star, double lower_bound,
                  std::optional<double> root_z_star, double root_lower_bound);

/// JSON object with the Table-style columns t, Gap, RGap, Nodes, nICut,
/// nFCut, tF, tS, status, followed by the solution and cut details.
std::string to_json(const SolveReport& report, int indent = 2);

}  // namespace bicut
