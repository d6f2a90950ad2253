// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"
#include "bicut/simplex.hpp"

#include <string_view>
#include <vector>

namespace bicut {

/// K = R^nonneg_+ x Q^{lorentz[0]} x Q^{lorentz[1]} x ...
/// with Q^k = {(t, u) in R x R^{k-1} : t >= |u|}.
struct ConeDims {
  int nonneg = 0;
  std::vector<int> lorentz;

  int total() const;
  /// Barrier degree: one per orthant coordinate and per Lorentz block.
  int degree() const { return nonneg + static_cast<int>(lorentz.size()); }
};

/// minimize (or maximize) c'x  s.t.  A x = b,  h - G x in K.
///
/// x itself is free; orthant and Lorentz variables are expressed through
/// rows of G (see from_standard_form).
struct ConeProgram {
  Sense sense = Sense::minimize;
  Vector c;
  Matrix A;
  Vector b;
  Matrix G;
  Vector h;
  ConeDims cones;

  int num_vars() const { return static_cast<int>(c.size()); }

  /// Variables partitioned as (free, nonneg, lorentz blocks in order) with
  /// equality rows A x = b.
  static ConeProgram from_standard_form(Vector c, Matrix A, Vector b, int free_vars,
                                        int nonneg_vars, std::vector<int> lorentz_blocks,
                                        Sense sense = Sense::minimize);
};

enum class ConicStatus { optimal, infeasible, unbounded, max_iter };

std::string_view to_string(ConicStatus status);

/// Solution of the minimization form.  The dual of
///   min c'x  s.t.  A x = b,  h - G x = s in K
/// is  max -b'y - h'z  s.t.  A'y + G'z + c = 0,  z in K.
/// For Sense::maximize, (y, z) are the duals of min -c'x.
///
/// On `infeasible`, (y, z) is a ray with A'y + G'z ~ 0, b'y + h'z = -1.
/// On `unbounded`, (x, s) is a ray with A x ~ 0, G x + s ~ 0, c'x = -1
/// (in the minimization form).
struct ConicResult {
  ConicStatus status = ConicStatus::max_iter;
  Vector x;
  Vector s;
  Vector y;
  Vector z;
  /// Objective values in the caller's sense.
  double objective = 0.0;
  double dual_objective = 0.0;
  /// Scaled residuals: |(Ax-b, Gx+s-h)| / (1 + |(b, h)|),
  /// |A'y + G'z + c| / (1 + |c|), and max(s'z, |p - d|) / (1 + |p| + |d|).
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

struct ConicOptions {
  int max_iterations = 100;
  /// Target accuracy for residuals and gap.
  double tolerance = 1e-9;
  /// Accuracy accepted as optimal when progress stalls before `tolerance`.
  double fallback_tolerance = 1e-8;
};

/// Homogeneous self-dual interior-point method with Nesterov-Todd scaling and
/// Mehrotra predictor-corrector steps.  Dense linear algebra.
ConicResult solve_conic(const ConeProgram& cp, const ConicOptions& options = {});

/// Euclidean projection onto the Lorentz cone {(t, u) : t >= |u|}.
Vector lorentz_project(const Vector& v);

}  // namespace bicut
