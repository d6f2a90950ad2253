// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"

#include <span>
#include <vector>

namespace bicut {

/// coef' z >= rhs over the stacked variables z = (x, y).
struct LinearRow {
  Vector coef;
  double rhs = 0.0;

  double activity(const Vector& z) const { return coef.dot(z); }
  /// Positive amount by which `z` violates the row.
  double violation(const Vector& z) const { return rhs - coef.dot(z); }
};

/// coef z - rhs in K, K a product of Lorentz cones {(t, u) : t >= |u|}.
struct ConicRows {
  Matrix coef;
  Vector rhs;
  std::vector<int> cones;

  int rows() const { return static_cast<int>(rhs.size()); }
  bool empty() const { return cones.empty(); }
};

/// The polyhedral (plus conic) set P over z = (x, y): base rows of the HPR,
/// the globally valid cut pool, variable bounds and conic rows.
struct PolyhedralRelaxation {
  int n1 = 0;
  int n2 = 0;
  Vector objective;

  /// M x + N y >= h rows, then the linking row, then the Y-rows.
  std::vector<LinearRow> rows;
  /// Globally valid disjunctive cuts.
  std::vector<LinearRow> cuts;
  /// Globally valid outer-approximation rows of the conic constraints.  They
  /// are implied by `conic` and therefore not part of the bar-system.
  std::vector<LinearRow> outer_rows;

  Vector lb;
  Vector ub;
  std::vector<bool> integer;
  ConicRows conic;

  int n() const { return n1 + n2; }
  /// Linear rows of the bar-system at the root: base rows, cuts and the 2n
  /// bound rows.
  int linear_row_count() const {
    return static_cast<int>(rows.size() + cuts.size()) + 2 * n();
  }
};

/// Stacked inequality system  Mbar x + Nbar y >= hbar.
struct BarSystem {
  Matrix Mbar;
  Matrix Nbar;
  Vector hbar;

  int rows() const { return static_cast<int>(hbar.size()); }
};

/// Relaxation of the value-function reformulation without q(y) <= Phi(x):
/// the continuous high-point relaxation with all variables integer-marked.
PolyhedralRelaxation build_hpr(const Instance& inst);

/// Bar-system of P restricted to the box [lb, ub]: base rows, global cuts,
/// `local_cuts`, and one row per finite bound (z_j >= lb_j, -z_j >= -ub_j).
BarSystem bar_system(const PolyhedralRelaxation& relax, const Vector& lb, const Vector& ub,
                     std::span<const LinearRow> local_cuts = {});

}  // namespace bicut
