// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/generator.hpp"
#include "bicut/instance_io.hpp"
#include "bicut/oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <filesystem>

using namespace bicut;
using bicut::testing::vec;
using bicut::testing::worked_example;

namespace {

bool contains(const std::vector<Point>& points, const Vector& x, const Vector& y) {
  for (const auto& p : points) {
    if (p.x == x && p.y == y) return true;
  }
  return false;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("SplitMix64 reference stream") {
  // First outputs of the reference SplitMix64 seeded with 0.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
  SplitMix64 dice(7);
  for (int i = 0; i < 1000; ++i) {
    const auto v = dice.uniform_int(3, 5);
    CHECK(v >= 3);
    CHECK(v <= 5);
  }
}

TEST_CASE("generate: construction rules") {
  const auto inst = generate({4, 0, 11});
  CHECK(inst.n1 == 2);
  CHECK(inst.n2 == 2);
  CHECK(inst.m1() == 0);
  CHECK(inst.f == std::floor((inst.a.sum() + inst.b.sum()) / 4));
  CHECK(inst.is_binary());
  CHECK(inst.g.isZero());
  CHECK(inst.conic_rows() == 0);
  CHECK(inst.y_rows() == 0);
  CHECK(validate_instance(inst).ok());

  const auto one = generate({4, 1, 11});
  REQUIRE(one.m1() == 1);
  CHECK(one.h[0] == std::floor((one.M.sum() + one.N.sum()) / 4));

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = generate({2 + 2 * static_cast<int>(seed % 10), static_cast<int>(seed % 2), seed});
    CHECK(validate_instance(g).ok());
    CHECK(g.b.sum() >= g.f);
    CHECK(g.c.minCoeff() >= 0);
    CHECK(g.c.maxCoeff() <= 99);
    CHECK(g.V.minCoeff() >= 0);
    CHECK(g.V.maxCoeff() <= 9);
  }
}

TEST_CASE("generate: deterministic in the seed") {
  CHECK(generate({12, 1, 5}) == generate({12, 1, 5}));
  CHECK(instance_to_json(generate({12, 1, 5})) == instance_to_json(generate({12, 1, 5})));
  CHECK_FALSE(generate({12, 1, 5}) == generate({12, 1, 6}));
}

TEST_CASE("generate: odd or tiny n rejected") {
  CHECK_THROWS_AS(generate({7, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate({4, -1, 1}), std::invalid_argument);
}

TEST_CASE("generated instances: all-ones follower response is always feasible") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = generate({8, 0, seed});
    const auto res = brute_force_solve(inst, true);
    CHECK(res.status == OracleStatus::optimal);
    CHECK(inst.b.sum() >= inst.f);
  }
}

TEST_CASE("brute force on the worked example") {
  auto inst = worked_example();
  auto res = brute_force_solve(inst, true);
  REQUIRE(res.status == OracleStatus::optimal);
  CHECK(res.value == -1.0);
  CHECK(res.bilevel_feasible.size() == 2);
  CHECK(contains(res.bilevel_feasible, vec({0}), vec({1})));
  CHECK(contains(res.bilevel_feasible, vec({1}), vec({0})));

  inst.c = vec({1});
  inst.d = vec({1});
  res = brute_force_solve(inst);
  REQUIRE(res.status == OracleStatus::optimal);
  CHECK(res.value == 1.0);
  CHECK(res.bilevel_feasible.empty());

  // x <= -1 excludes every leader decision.
  inst.M = Matrix::Constant(1, 1, -1.0);
  inst.N = Matrix::Zero(1, 1);
  inst.h = vec({1});
  CHECK(brute_force_solve(inst).status == OracleStatus::infeasible);
}

TEST_CASE("brute force agrees with check_bilevel_feasible") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate({6, static_cast<int>(seed % 2), seed});
    const auto res = brute_force_solve(inst, true);
    for (int mask = 0; mask < 64; ++mask) {
      Vector z(6);
      for (int j = 0; j < 6; ++j) z[j] = (mask >> j) & 1;
      const Point p = Point::split(inst, z);
      double phi = INFINITY;
      for (int ym = 0; ym < 8; ++ym) {
        Vector y(3);
        for (int j = 0; j < 3; ++j) y[j] = (ym >> j) & 1;
        if (inst.a.dot(p.x) + inst.b.dot(y) >= inst.f) phi = std::min(phi, evaluate_q(inst, y));
      }
      const auto verdict = check_bilevel_feasible(inst, p, phi);
      CHECK(verdict.follower_optimal == contains(res.bilevel_feasible, p.x, p.y));
    }
  }
}

TEST_CASE("oracle guard") {
  CHECK(lattice_size(generate({24, 0, 1})) == (std::uint64_t{1} << 24));
  CHECK_NOTHROW(lattice_size(generate({50, 0, 1})));
  CHECK_THROWS_AS(brute_force_solve(generate({26, 0, 1})), OracleRefused);
}

TEST_CASE("instance files round-trip") {
  const auto dir = std::filesystem::temp_directory_path() / "bicut_io_test";
  std::filesystem::create_directories(dir);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate({10, static_cast<int>(seed % 2), seed});
    const auto path = dir / ("inst" + std::to_string(seed) + ".json");
    write_instance(inst, path);
    CHECK(read_instance(path) == inst);
  }
  auto inst = worked_example();
  inst.c = vec({0.1});
  inst.g = vec({1.0 / 3.0});
  CHECK(instance_from_json(instance_to_json(inst)) == inst);

  inst.Mt = Matrix::Zero(3, 1);
  inst.Nt = Matrix::Identity(3, 1);
  inst.ht = vec({-2, 0.5, 0});
  inst.cones_K = {3};
  CHECK(instance_from_json(instance_to_json(inst)) == inst);
  std::filesystem::remove_all(dir);
}

TEST_CASE("instance document errors") {
  const std::string good = instance_to_json(worked_example());
  CHECK_NOTHROW(instance_from_json(good));

  auto message = [](const std::string& text) {
    try {
      instance_from_json(text);
    } catch (const InstanceFormatError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const auto missing_v = message(replace(good, "\"V\"", "\"W\""));
  CHECK(missing_v.find("\"V\"") != std::string::npos);
  CHECK(missing_v.find("missing") != std::string::npos);
  const auto extra = message(replace(good, "\"V\"", "\"W\": 0, \"V\""));
  CHECK(extra.find("\"W\": unknown field") != std::string::npos);

  const auto frac_a = message(replace(good, "\"a\": [\n    2\n  ]", "\"a\": [2.5]"));
  CHECK(frac_a.find("\"a[0]\"") != std::string::npos);
  CHECK(frac_a.find("integer") != std::string::npos);

  const auto broken = message(good.substr(0, good.size() / 2));
  CHECK(broken.find("parse error") != std::string::npos);
  CHECK(broken.find("line") != std::string::npos);

  CHECK(message(replace(good, "\"f\": 2", "\"f\": 2.0")).empty());
  CHECK_FALSE(message(replace(good, "\"n2\": 1", "\"n2\": 2")).empty());
  CHECK_THROWS_AS(read_instance("/nonexistent/instance.json"), InstanceFormatError);
}
