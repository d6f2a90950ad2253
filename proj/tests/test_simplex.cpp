// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/simplex.hpp"
#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <functional>
#include <limits>

using namespace bicut;
using bicut::testing::vec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram box_lp(int n, double lo, double hi) {
  LinearProgram lp;
  lp.objective = Vector::Zero(n);
  lp.rows.resize(0, n);
  lp.row_lower.resize(0);
  lp.row_upper.resize(0);
  lp.col_lower = Vector::Constant(n, lo);
  lp.col_upper = Vector::Constant(n, hi);
  return lp;
}

void add_row(LinearProgram& lp, const Vector& coef, double lo, double hi) {
  const auto m = lp.rows.rows();
  lp.rows.conservativeResize(m + 1, Eigen::NoChange);
  lp.rows.row(m) = coef.transpose();
  lp.row_lower.conservativeResize(m + 1);
  lp.row_upper.conservativeResize(m + 1);
  lp.row_lower[m] = lo;
  lp.row_upper[m] = hi;
}

// Oracle: enumerate every choice of n active constraints among rows and
// bounds, solve the square system and keep the best feasible one.
std::optional<double> enumerate_vertices(const LinearProgram& lp) {
  const int n = lp.num_cols();
  std::vector<std::pair<Vector, double>> planes;
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (std::isfinite(lp.row_lower[i])) planes.emplace_back(lp.rows.row(i).transpose(), lp.row_lower[i]);
    if (std::isfinite(lp.row_upper[i])) planes.emplace_back(lp.rows.row(i).transpose(), lp.row_upper[i]);
  }
  for (int j = 0; j < n; ++j) {
    planes.emplace_back(Vector::Unit(n, j), lp.col_lower[j]);
    planes.emplace_back(Vector::Unit(n, j), lp.col_upper[j]);
  }
  const int p = static_cast<int>(planes.size());
  std::optional<double> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Matrix a(n, n);
      Vector b(n);
      for (int k = 0; k < n; ++k) {
        a.row(k) = planes[pick[k]].first.transpose();
        b[k] = planes[pick[k]].second;
      }
      Eigen::FullPivLU<Matrix> lu(a);
      if (lu.rank() < n) return;
      const Vector x = lu.solve(b);
      for (int j = 0; j < n; ++j) {
        if (x[j] < lp.col_lower[j] - 1e-9 || x[j] > lp.col_upper[j] + 1e-9) return;
      }
      const Vector act = lp.rows * x;
      for (int i = 0; i < lp.num_rows(); ++i) {
        if (act[i] < lp.row_lower[i] - 1e-9 || act[i] > lp.row_upper[i] + 1e-9) return;
      }
      const double obj = lp.objective.dot(x) * (lp.sense == Sense::minimize ? 1.0 : -1.0);
      if (!best || obj < *best) best = obj;
      return;
    }
    for (int k = start; k < p; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  if (best && lp.sense == Sense::maximize) best = -*best;
  return best;
}

LinearProgram random_lp(std::mt19937_64& rng, int n, int m) {
  auto lp = box_lp(n, 0.0, 0.0);
  lp.col_lower = testing::random_vector(rng, n, -3, 0);
  lp.col_upper = lp.col_lower + testing::random_vector(rng, n, 0.5, 4);
  lp.objective = testing::random_vector(rng, n, -2, 2);
  // Rows built around an interior point so the LP is feasible.
  const Vector x0 = lp.col_lower + 0.5 * (lp.col_upper - lp.col_lower);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int i = 0; i < m; ++i) {
    const Vector coef = testing::random_vector(rng, n, -2, 2);
    const double act = coef.dot(x0);
    const Vector slack = testing::random_vector(rng, 2, 0.0, 1.5);
    switch (kind(rng)) {
      case 0: add_row(lp, coef, act - slack[0], kInf); break;
      case 1: add_row(lp, coef, -kInf, act + slack[0]); break;
      case 2: add_row(lp, coef, act - slack[0], act + slack[1]); break;
      default: add_row(lp, coef, act, act); break;
    }
  }
  return lp;
}

}  // namespace

TEST_CASE("min x s.t. x >= 2, 0 <= x <= 10") {
  auto lp = box_lp(1, 0.0, 10.0);
  lp.objective = vec({1});
  add_row(lp, vec({1}), 2.0, kInf);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::optimal);
  CHECK(r.primal[0] == doctest::Approx(2.0));
  CHECK(r.objective == doctest::Approx(2.0));
}

TEST_CASE("max x s.t. x <= 0, x >= 1 is infeasible") {
  auto lp = box_lp(1, -10.0, 10.0);
  lp.sense = Sense::maximize;
  lp.objective = vec({1});
  add_row(lp, vec({1}), -kInf, 0.0);
  add_row(lp, vec({1}), 1.0, kInf);
  CHECK(solve_lp(lp).status == LPStatus::infeasible);
}

TEST_CASE("min -x-y s.t. x+y <= 1 on the unit box ends at a vertex") {
  auto lp = box_lp(2, 0.0, 1.0);
  lp.objective = vec({-1, -1});
  add_row(lp, vec({1, 1}), -kInf, 1.0);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::optimal);
  CHECK(r.objective == doctest::Approx(-1.0));
  const bool vertex = (std::abs(r.primal[0] - 1) < 1e-12 && std::abs(r.primal[1]) < 1e-12) ||
                      (std::abs(r.primal[1] - 1) < 1e-12 && std::abs(r.primal[0]) < 1e-12);
  CHECK(vertex);
  CHECK(active_set_rank(lp, r.primal) == 2);
}

TEST_CASE("box-only program") {
  auto lp = box_lp(3, -1.0, 2.0);
  lp.objective = vec({1, -1, 0});
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::optimal);
  CHECK(r.objective == doctest::Approx(-3.0));
}

TEST_CASE("incoherent dimensions and infinite column bounds are rejected") {
  auto lp = box_lp(2, 0.0, 1.0);
  lp.objective = vec({1});
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
  lp = box_lp(1, 0.0, kInf);
  lp.objective = vec({1});
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
}

TEST_CASE("random LPs match vertex enumeration and certify vertices") {
  std::mt19937_64 rng(11);
  int solved = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 3;
    const int m = 1 + trial % 5;
    auto lp = random_lp(rng, n, m);
    if (trial % 2) lp.sense = Sense::maximize;
    const auto oracle = enumerate_vertices(lp);
    const auto r = solve_lp(lp);
    REQUIRE(oracle.has_value());
    REQUIRE(r.status == LPStatus::optimal);
    CHECK(r.objective == doctest::Approx(*oracle).epsilon(1e-9));
    CHECK(std::abs(r.objective - r.dual_objective) <= 1e-9 * (1 + std::abs(r.objective)));
    CHECK(active_set_rank(lp, r.primal) == n);
    ++solved;
  }
  CHECK(solved == 150);
}

TEST_CASE("infeasibility is detected on random contradictory systems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto lp = random_lp(rng, 3, 3);
    const Vector coef = testing::random_vector(rng, 3, -1, 1);
    // coef'x >= big and coef'x <= big - 1 cannot both hold.
    const double big = coef.cwiseAbs().sum() * 10;
    add_row(lp, coef, big, kInf);
    add_row(lp, coef, -kInf, big - 1);
    CHECK(solve_lp(lp).status == LPStatus::infeasible);
  }
}

TEST_CASE("warm start from an optimal basis after appending a row") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto lp = random_lp(rng, 4, 4);
    const auto first = solve_lp(lp);
    REQUIRE(first.status == LPStatus::optimal);
    const auto again = solve_lp(lp, first.basis);
    REQUIRE(again.status == LPStatus::optimal);
    CHECK(again.iterations == 0);
    CHECK(again.objective == doctest::Approx(first.objective).epsilon(1e-10));

    // Cut off the optimum and re-solve warm and cold.
    const Vector coef = lp.objective;
    add_row(lp, coef, -kInf, first.objective - 0.1);
    const auto warm = solve_lp(lp, first.basis);
    const auto cold = solve_lp(lp);
    REQUIRE(warm.status == cold.status);
    if (cold.status == LPStatus::optimal) {
      CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-9));
    }
  }
}

TEST_CASE("outer_approximate") {
  ConicRows cone2{Matrix::Identity(2, 2), Vector::Zero(2), {2}};
  auto cuts = outer_approximate(cone2, vec({0, 1}));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].coef == vec({1, -1}));
  CHECK(cuts[0].rhs == 0.0);
  CHECK(cuts[0].violation(vec({0, 1})) > 0.0);

  CHECK(outer_approximate(cone2, vec({2, 1})).empty());

  ConicRows cone3{Matrix::Identity(3, 3), Vector::Zero(3), {3}};
  cuts = outer_approximate(cone3, vec({0, 3, 4}));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].coef[0] == doctest::Approx(1.0));
  CHECK(cuts[0].coef[1] == doctest::Approx(-0.6));
  CHECK(cuts[0].coef[2] == doctest::Approx(-0.8));

  // Apex: t < 0 with u = 0 gives the coordinate bound t >= 0.
  cuts = outer_approximate(cone3, vec({-1, 0, 0}));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].coef == vec({1, 0, 0}));
  CHECK(cuts[0].rhs == 0.0);
}

TEST_CASE("outer_approximate never excludes cone points") {
  std::mt19937_64 rng(9);
  ConicRows cone{Matrix::Identity(4, 4), Vector::Zero(4), {4}};
  for (int trial = 0; trial < 200; ++trial) {
    Vector bad = testing::random_vector(rng, 4, -3, 3);
    bad[0] = bad.tail(3).norm() - 0.5;
    const auto cuts = outer_approximate(cone, bad);
    REQUIRE(cuts.size() == 1);
    for (int s = 0; s < 50; ++s) {
      Vector inside = testing::random_vector(rng, 4, -3, 3);
      inside[0] = inside.tail(3).norm() + std::abs(inside[0]);
      CHECK(cuts[0].violation(inside) <= 1e-12);
    }
  }
}
