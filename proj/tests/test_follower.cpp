// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/follower.hpp"
#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <functional>
#include <limits>

using namespace bicut;
using bicut::testing::vec;
using bicut::testing::worked_example;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Enumerates the follower lattice; q evaluated from the explicit Hessian.
double enumerate_phi(const Instance& inst, const Vector& x) {
  const int n2 = inst.n2;
  const Matrix R = inst.V.transpose() * inst.V;
  double best = kInf;
  Vector y = inst.lb.tail(n2);
  std::function<void(int)> rec = [&](int j) {
    if (j == n2) {
      if (inst.a.dot(x) + inst.b.dot(y) < inst.f - 1e-9) return;
      for (int i = 0; i < inst.y_rows(); ++i) {
        if (inst.Y_C.row(i).dot(y) < inst.Y_u[i] - 1e-9) return;
      }
      best = std::min(best, y.dot(R * y) + inst.g.dot(y));
      return;
    }
    for (double v = inst.lb[inst.n1 + j]; v <= inst.ub[inst.n1 + j]; v += 1.0) {
      y[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

Instance random_follower(std::mt19937_64& rng, int n1, int n2) {
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> pos(0, 4);
  Instance inst = worked_example();
  inst.n1 = n1;
  inst.n2 = n2;
  inst.c = Vector::Zero(n1);
  inst.d = Vector::Zero(n2);
  inst.M.resize(0, n1);
  inst.N.resize(0, n2);
  inst.Mt.resize(0, n1);
  inst.Nt.resize(0, n2);
  inst.a = Vector(n1);
  for (int j = 0; j < n1; ++j) inst.a[j] = pos(rng);
  inst.b = Vector(n2);
  for (int j = 0; j < n2; ++j) inst.b[j] = small(rng);
  inst.f = pos(rng);
  const int n3 = 1 + n2 % 3;
  inst.V = Matrix(n3, n2);
  for (int i = 0; i < n3; ++i)
    for (int j = 0; j < n2; ++j) inst.V(i, j) = small(rng);
  inst.g = Vector(n2);
  for (int j = 0; j < n2; ++j) inst.g[j] = small(rng);
  inst.Y_C = Matrix(1, n2);
  for (int j = 0; j < n2; ++j) inst.Y_C(0, j) = small(rng);
  inst.Y_u = vec({-2});
  inst.lb = Vector::Zero(n1 + n2);
  inst.ub = Vector::Ones(n1 + n2);
  for (int j = 0; j < n2; ++j) inst.ub[n1 + j] = 1 + j % 2;
  return inst;
}

}  // namespace

TEST_CASE("phi on the worked example") {
  const auto inst = worked_example();
  CHECK(phi(inst, vec({1})) == 0.0);
  CHECK(phi(inst, vec({0})) == 1.0);
  CHECK(phi(inst, vec({0.5})) == 1.0);
}

TEST_CASE("cutoff semantics on the worked example") {
  const auto inst = worked_example();
  FollowerQuery q;
  q.x_star = vec({1});
  q.cutoff = 1.0;
  auto r = solve_follower(inst, q);
  REQUIRE(r.status == FollowerStatus::optimal);
  CHECK(r.phi == 0.0);
  CHECK(r.best_y == vec({0}));

  q.cutoff = 0.0;
  r = solve_follower(inst, q);
  CHECK(r.status == FollowerStatus::no_better_than_cutoff);

  q.x_star = vec({0});
  q.cutoff = kInf;
  auto infeasible = inst;
  infeasible.f = 10;
  CHECK(solve_follower(infeasible, q).status == FollowerStatus::infeasible);
  CHECK(phi(infeasible, vec({0})) == kInf);
}

TEST_CASE("wrong x_star dimension is rejected") {
  CHECK_THROWS_AS(phi(worked_example(), vec({1, 1})), std::invalid_argument);
}

TEST_CASE("phi matches enumeration on random followers") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n2 = 1 + trial % 6;
    const auto inst = random_follower(rng, 2, n2);
    const Vector x = trial % 3 ? vec({1, 0}) : vec({0.5, 0.25});
    INFO("trial " << trial);
    CHECK(phi(inst, x) == enumerate_phi(inst, x));
  }
}

TEST_CASE("the incumbent stream is feasible, below the cutoff and strictly improving") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_follower(rng, 2, 2 + trial % 5);
    FollowerQuery q;
    q.x_star = vec({1, 1});
    q.mode = FollowerMode::stream;
    q.cutoff = 6.0;
    std::vector<double> seen;
    const auto r = solve_follower(inst, q, [&](const Vector& y, double value) {
      CHECK(value < q.cutoff);
      CHECK(value == evaluate_q(inst, y));
      CHECK(inst.a.dot(q.x_star) + inst.b.dot(y) >= inst.f);
      seen.push_back(value);
      return true;
    });
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] < seen[i - 1]);
    const double expected = enumerate_phi(inst, q.x_star);
    if (expected < q.cutoff) {
      REQUIRE(r.status == FollowerStatus::optimal);
      CHECK(r.phi == expected);
      CHECK(seen.back() == expected);
    } else {
      CHECK(seen.empty());
      CHECK(r.status != FollowerStatus::optimal);
    }
  }
}

TEST_CASE("the sink can abort the search") {
  std::mt19937_64 rng(5);
  const auto inst = random_follower(rng, 2, 5);
  FollowerQuery q;
  q.x_star = vec({1, 1});
  q.mode = FollowerMode::stream;
  int calls = 0;
  const auto r = solve_follower(inst, q, [&](const Vector&, double) {
    ++calls;
    return false;
  });
  if (calls > 0) {
    CHECK(calls == 1);
    CHECK(r.status == FollowerStatus::aborted);
  }
}
