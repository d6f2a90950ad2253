// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/relaxation.hpp"

#include <cmath>

namespace bicut {

PolyhedralRelaxation build_hpr(const Instance& inst) {
  PolyhedralRelaxation relax;
  relax.n1 = inst.n1;
  relax.n2 = inst.n2;
  const int n = inst.n();

  relax.objective.resize(n);
  relax.objective << inst.c, inst.d;

  for (int i = 0; i < inst.m1(); ++i) {
    LinearRow row{Vector(n), inst.h[i]};
    row.coef << inst.M.row(i).transpose(), inst.N.row(i).transpose();
    relax.rows.push_back(std::move(row));
  }
  LinearRow linking{Vector(n), inst.f};
  linking.coef << inst.a, inst.b;
  relax.rows.push_back(std::move(linking));
  for (int i = 0; i < inst.y_rows(); ++i) {
    LinearRow row{Vector::Zero(n), inst.Y_u[i]};
    row.coef.tail(inst.n2) = inst.Y_C.row(i).transpose();
    relax.rows.push_back(std::move(row));
  }

  relax.lb = inst.lb;
  relax.ub = inst.ub;
  relax.integer.assign(n, true);

  if (inst.conic_rows() > 0) {
    relax.conic.coef.resize(inst.conic_rows(), n);
    relax.conic.coef << inst.Mt, inst.Nt;
    relax.conic.rhs = inst.ht;
    relax.conic.cones = inst.cones_K;
  } else {
    relax.conic.coef.resize(0, n);
    relax.conic.rhs.resize(0);
  }
  return relax;
}

BarSystem bar_system(const PolyhedralRelaxation& relax, const Vector& lb, const Vector& ub,
                     std::span<const LinearRow> local_cuts) {
  const int n = relax.n();
  int bound_rows = 0;
  for (int j = 0; j < n; ++j) {
    bound_rows += std::isfinite(lb[j]) ? 1 : 0;
    bound_rows += std::isfinite(ub[j]) ? 1 : 0;
  }
  const auto m = static_cast<Eigen::Index>(relax.rows.size() + relax.cuts.size() +
                                           local_cuts.size()) +
                 bound_rows;
  Matrix full = Matrix::Zero(m, n);
  Vector hbar(m);
  Eigen::Index r = 0;
  auto append = [&](const LinearRow& row) {
    full.row(r) = row.coef.transpose();
    hbar[r] = row.rhs;
    ++r;
  };
  for (const auto& row : relax.rows) append(row);
  for (const auto& row : relax.cuts) append(row);
  for (const auto& row : local_cuts) append(row);
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lb[j])) {
      full(r, j) = 1.0;
      hbar[r++] = lb[j];
    }
    if (std::isfinite(ub[j])) {
      full(r, j) = -1.0;
      hbar[r++] = -ub[j];
    }
  }
  return BarSystem{full.leftCols(relax.n1), full.rightCols(relax.n2), hbar};
}

}  // namespace bicut
