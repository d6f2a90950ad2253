// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace bicut {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tolerance for linear / conic constraint and value-function checks.
inline constexpr double kFeasibilityTolerance = 1e-7;
/// A coordinate is integral if it lies within this distance of an integer.
inline constexpr double kIntegralityTolerance = 1e-6;

/// Data of an integer bilevel program with a single linking row:
///
///   min  c'x + d'y
///   s.t. M x + N y >= h
///        Mt x + Nt y - ht in K          (K = product of Lorentz cones)
///        y in argmin { |V y|^2 + g'y : a'x + b'y >= f, C y >= u, y integer }
///        lb <= (x, y) <= ub, (x, y) integer
///
/// The follower Hessian V'V is never formed.  Matrices with zero rows still
/// carry their column count (n1 or n2).
struct Instance {
  int n1 = 0;
  int n2 = 0;

  Vector c;
  Vector d;

  Matrix M;
  Matrix N;
  Vector h;

  Matrix Mt;
  Matrix Nt;
  Vector ht;
  std::vector<int> cones_K;

  Vector a;
  Vector b;
  double f = 0.0;

  Matrix V;
  Vector g;

  Matrix Y_C;
  Vector Y_u;

  /// Bounds on (x, y), leader variables first.
  Vector lb;
  Vector ub;

  int n() const { return n1 + n2; }
  int m1() const { return static_cast<int>(h.size()); }
  int conic_rows() const { return static_cast<int>(ht.size()); }
  int n3() const { return static_cast<int>(V.rows()); }
  int y_rows() const { return static_cast<int>(Y_u.size()); }

  /// True if every variable has bounds [0, 1].
  bool is_binary() const;

  bool operator==(const Instance& other) const;
};

/// A leader/follower pair.
struct Point {
  Vector x;
  Vector y;

  /// (x, y) stacked into one vector of length n1 + n2.
  Vector joined() const;
  static Point split(const Instance& inst, const Vector& z);
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

struct FeasibilityVerdict {
  bool hpr_feasible = false;
  bool integral = false;
  bool follower_optimal = false;
  std::optional<double> phi;
};

/// Structural admissibility: coherent dimensions, nonzero linking row,
/// integer linking data, finite bounds, cone sizes partitioning the conic rows.
ValidationReport validate_instance(const Instance& inst);

/// Follower objective |V y|^2 + g'y.  Throws std::invalid_argument on a size
/// mismatch.
double evaluate_q(const Instance& inst, const Vector& y);

/// Largest violation of the HPR constraints (linear, conic, linking, Y-rows,
/// bounds) at `p`; zero if the point is feasible for the continuous HPR.
double hpr_violation(const Instance& inst, const Point& p);

bool is_integral(const Vector& v, double tol = kIntegralityTolerance);

/// Classifies `p` given the follower value `phi` = Phi(p.x).
FeasibilityVerdict check_bilevel_feasible(const Instance& inst, const Point& p,
                                          double phi);

}  // namespace bicut
