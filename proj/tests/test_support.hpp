// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"

#include <random>

namespace bicut::testing {

/// Two binary variables:  min -x - y  with follower  min y^2 : 2x + 3y >= 2.
/// Bilevel-feasible set {(0,1), (1,0)}; the HPR optimum (1,1) is not.
inline Instance worked_example() {
  Instance inst;
  inst.n1 = 1;
  inst.n2 = 1;
  inst.c = Vector::Constant(1, -1.0);
  inst.d = Vector::Constant(1, -1.0);
  inst.M.resize(0, 1);
  inst.N.resize(0, 1);
  inst.h.resize(0);
  inst.Mt.resize(0, 1);
  inst.Nt.resize(0, 1);
  inst.ht.resize(0);
  inst.a = Vector::Constant(1, 2.0);
  inst.b = Vector::Constant(1, 3.0);
  inst.f = 2.0;
  inst.V = Matrix::Identity(1, 1);
  inst.g = Vector::Zero(1);
  inst.Y_C.resize(0, 1);
  inst.Y_u.resize(0);
  inst.lb = Vector::Zero(2);
  inst.ub = Vector::Ones(2);
  return inst;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace bicut::testing
