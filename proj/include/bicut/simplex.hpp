// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"
#include "bicut/relaxation.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bicut {

enum class Sense { minimize, maximize };

/// row_lower <= rows * x <= row_upper,  col_lower <= x <= col_upper.
/// Row bounds may be infinite; column bounds must be finite.
struct LinearProgram {
  Sense sense = Sense::minimize;
  Vector objective;
  Matrix rows;
  Vector row_lower;
  Vector row_upper;
  Vector col_lower;
  Vector col_upper;

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.rows()); }
};

enum class LPStatus { optimal, infeasible, unbounded, stalled };

std::string_view to_string(LPStatus status);

enum class VarStatus : std::uint8_t { basic, at_lower, at_upper, at_zero };

/// Status of every structural column and every row (logical) variable.
/// A valid basis has exactly num_rows basic entries.
struct Basis {
  std::vector<VarStatus> cols;
  std::vector<VarStatus> rows;
};

struct LPResult {
  LPStatus status = LPStatus::stalled;
  Vector primal;
  Vector row_activity;
  /// Row duals and column reduced costs in the sense of the original
  /// objective: objective = dual' * rows + reduced_costs.
  Vector dual;
  Vector reduced_costs;
  double objective = 0.0;
  double dual_objective = 0.0;
  Basis basis;
  int iterations = 0;
};

/// Bounded primal revised simplex with a composite phase 1.  Dantzig pricing,
/// switching to Bland's rule after a streak of degenerate pivots.  A warm
/// basis may cover fewer rows than `lp` (rows appended later enter basic).
LPResult solve_lp(const LinearProgram& lp, const std::optional<Basis>& warm_basis = std::nullopt);

/// Rank of the normals of all constraints (rows and column bounds) active at
/// `x` within `tol`.  Equals num_cols() exactly when x is a vertex.
int active_set_rank(const LinearProgram& lp, const Vector& x, double tol = 1e-7);

/// Supporting hyperplanes of the Lorentz blocks of `conic` that `z` violates
/// by more than `tol`: t >= (u/|u|)'u at the point's u.  At the apex
/// (|u| = 0) the coordinate bound t >= 0 is returned instead.
std::vector<LinearRow> outer_approximate(const ConicRows& conic, const Vector& z,
                                         double tol = kFeasibilityTolerance);

}  // namespace bicut
