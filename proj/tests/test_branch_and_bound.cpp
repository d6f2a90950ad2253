// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/branch_and_bound.hpp"
#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <functional>
#include <limits>

using namespace bicut;
using bicut::testing::vec;
using bicut::testing::worked_example;

namespace {

PolyhedralRelaxation box_relaxation(int n1, int n2, double lo, double hi) {
  PolyhedralRelaxation relax;
  relax.n1 = n1;
  relax.n2 = n2;
  relax.objective = Vector::Zero(n1 + n2);
  relax.lb = Vector::Constant(n1 + n2, lo);
  relax.ub = Vector::Constant(n1 + n2, hi);
  relax.integer.assign(n1 + n2, true);
  relax.conic.coef.resize(0, n1 + n2);
  relax.conic.rhs.resize(0);
  return relax;
}

// Oracle: best objective over integer points of the box satisfying all rows
// and conic rows.
std::optional<double> enumerate(const PolyhedralRelaxation& relax) {
  const int n = relax.n();
  std::optional<double> best;
  Vector z = relax.lb;
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      for (const auto& row : relax.rows) {
        if (row.violation(z) > 1e-9) return;
      }
      if (!relax.conic.empty()) {
        const Vector v = relax.conic.coef * z - relax.conic.rhs;
        int off = 0;
        for (int q : relax.conic.cones) {
          if (v[off] < v.segment(off + 1, q - 1).norm() - 1e-9) return;
          off += q;
        }
      }
      const double obj = relax.objective.dot(z);
      if (!best || obj < *best) best = obj;
      return;
    }
    for (double v = relax.lb[j]; v <= relax.ub[j]; v += 1.0) {
      z[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

Cut no_good(const Vector& p, int n1) {
  // sum_{p_j = 1} (1 - z_j) + sum_{p_j = 0} z_j >= 1.
  const int n = static_cast<int>(p.size());
  Vector coef(n);
  double rhs = 1.0;
  for (int j = 0; j < n; ++j) {
    coef[j] = p[j] > 0.5 ? -1.0 : 1.0;
    if (p[j] > 0.5) rhs -= 1.0;
  }
  Cut cut;
  cut.alpha = coef.head(n1);
  cut.beta = coef.tail(n - n1);
  cut.tau = rhs;
  return cut;
}

}  // namespace

TEST_CASE("binary LP min -x-y s.t. x+y <= 1") {
  auto relax = box_relaxation(1, 1, 0, 1);
  relax.objective = vec({-1, -1});
  relax.rows.push_back({vec({-1, -1}), -1.0});
  const auto r = solve_bb(relax);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.z_star == doctest::Approx(-1.0));
  CHECK(r.gap == 0.0);
}

TEST_CASE("rejecting every integer point but (0,0) with no-good cuts") {
  for (CutScope scope : {CutScope::global, CutScope::local}) {
    auto relax = box_relaxation(1, 1, 0, 1);
    relax.objective = vec({-1, -1});
    Callbacks cb;
    int calls = 0;
    cb.on_integer = [&](const Vector& z, const Node&) {
      ++calls;
      if (z.isZero()) return IntegerVerdict::accepted();
      Cut cut = no_good(z, 1);
      cut.scope = scope;
      return IntegerVerdict::rejected({cut});
    };
    const auto r = solve_bb(relax, cb);
    REQUIRE(r.status == SolveStatus::optimal);
    CHECK(r.z_star == 0.0);
    CHECK(r.incumbent->x == vec({0}));
    CHECK(r.incumbent->y == vec({0}));
    CHECK(r.cuts.size() == 3);
  }
}

TEST_CASE("HPR of the worked example without callbacks ends at (1,1)") {
  auto relax = build_hpr(worked_example());
  const auto r = solve_bb(relax);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.z_star == doctest::Approx(-2.0));
  CHECK(r.incumbent->x == vec({1}));
  CHECK(r.incumbent->y == vec({1}));
  CHECK(r.nodes == 1);
}

TEST_CASE("reject without cuts branches on the first unfixed variable") {
  auto relax = box_relaxation(1, 1, 0, 1);
  relax.objective = vec({-1, -1});
  Callbacks cb;
  cb.on_integer = [](const Vector& z, const Node&) {
    return z.sum() > 1.5 ? IntegerVerdict::rejected() : IntegerVerdict::accepted();
  };
  const auto r = solve_bb(relax, cb);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.z_star == doctest::Approx(-1.0));
}

TEST_CASE("infeasible integer program") {
  auto relax = box_relaxation(1, 1, 0, 1);
  relax.rows.push_back({vec({2, 2}), 1.0});
  relax.rows.push_back({vec({-2, -2}), -1.5});
  const auto r = solve_bb(relax);
  CHECK(r.status == SolveStatus::infeasible);
  CHECK_FALSE(r.has_incumbent());
  CHECK(r.gap == 100.0);
}

TEST_CASE("solve_bb equals enumeration on random integer programs") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 4;
    const double hi = trial % 3 == 0 ? 2.0 : 1.0;
    auto relax = box_relaxation(n / 2, n - n / 2, 0, hi);
    for (int j = 0; j < n; ++j) relax.objective[j] = coef(rng);
    for (int i = 0; i < 3; ++i) {
      Vector a(n);
      for (int j = 0; j < n; ++j) a[j] = coef(rng);
      relax.rows.push_back({a, coef(rng) * 0.7});
    }
    if (trial % 4 == 1) {
      // (3 - z_0 + 0.5, z_1 - 0.5, z_0 - 1) in Q3.
      relax.conic.coef = Matrix::Zero(3, n);
      relax.conic.coef(0, 0) = -1;
      relax.conic.coef(1, 1) = 1;
      relax.conic.coef(2, 0) = 1;
      relax.conic.rhs = vec({-1.7, 0.5, 1.0});
      relax.conic.cones = {3};
    }
    const auto expected = enumerate(relax);
    const auto r = solve_bb(relax);
    INFO("trial " << trial);
    if (!expected) {
      CHECK(r.status == SolveStatus::infeasible);
      continue;
    }
    REQUIRE(r.status == SolveStatus::optimal);
    CHECK(r.z_star == doctest::Approx(*expected).epsilon(1e-9));
    if (hi == 1.0) CHECK(r.nodes <= 2 * (1LL << n) + 1);
  }
}

TEST_CASE("fractional callbacks add cuts without changing the optimum") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3;
    auto relax = box_relaxation(1, 2, 0, 1);
    for (int j = 0; j < n; ++j) relax.objective[j] = coef(rng);
    Vector a(n);
    for (int j = 0; j < n; ++j) a[j] = coef(rng);
    relax.rows.push_back({a, 0.5});
    const auto expected = enumerate(relax);
    Callbacks cb;
    // Chvatal-style rounding of the first row when it is tight: valid for
    // integer points, violated by some fractional ones.
    cb.on_fractional = [&](const Vector& z, const Node&) {
      std::vector<Cut> cuts;
      Vector r = a;
      for (int j = 0; j < n; ++j) r[j] = std::ceil(a[j]);
      const double rhs = std::ceil(0.5);
      if (a.minCoeff() >= 0 && r.dot(z) < rhs - 1e-3) {
        Cut c;
        c.alpha = r.head(1);
        c.beta = r.tail(2);
        c.tau = rhs;
        cuts.push_back(c);
      }
      return cuts;
    };
    const auto r = solve_bb(relax, cb);
    if (!expected) {
      CHECK(r.status == SolveStatus::infeasible);
      continue;
    }
    CHECK(r.z_star == doctest::Approx(*expected));
  }
}

TEST_CASE("branching rule") {
  Node node{0, 0, Vector::Zero(3), Vector::Ones(3), {}, 0.0, nullptr};
  const std::vector<bool> integer(3, true);

  auto [down, up] = branch(node, vec({0.5, 0, 1}), integer);
  CHECK(down.ub[0] == 0.0);
  CHECK(up.lb[0] == 1.0);
  CHECK(down.depth == 1);

  CHECK(select_branching_variable(vec({0.4, 0.5, 0}), integer) == 1);
  CHECK(select_branching_variable(vec({0.5, 0.5, 0}), integer) == 0);
  CHECK(select_branching_variable(vec({0.0, 1.0, 0}), integer) == -1);
  CHECK_THROWS_AS(branch(node, vec({0, 1, 1}), integer), std::logic_error);
}

TEST_CASE("a zero time limit reports time_limit with a bound") {
  auto relax = box_relaxation(2, 2, 0, 1);
  relax.objective = vec({-1, -2, -3, -4});
  BBLimits limits;
  limits.time_limit = 0.0;
  const auto r = solve_bb(relax, {}, limits);
  CHECK(r.status == SolveStatus::time_limit);
  CHECK(r.gap == 100.0);
}
