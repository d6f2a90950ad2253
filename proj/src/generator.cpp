// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace bicut {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(std::floor(u * span));
}

namespace {

void fill(SplitMix64& rng, Vector& v, int lo, int hi) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = static_cast<double>(rng.uniform_int(lo, hi));
}

void fill(SplitMix64& rng, Matrix& m, int lo, int hi) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = static_cast<double>(rng.uniform_int(lo, hi));
}

}  // namespace

Instance generate(const GeneratorConfig& cfg) {
  if (cfg.n < 2 || cfg.n % 2 != 0) {
    throw std::invalid_argument("n must be even and at least 2, got " + std::to_string(cfg.n));
  }
  if (cfg.m1 < 0) throw std::invalid_argument("m1 must be nonnegative");
  const int half = cfg.n / 2;
  SplitMix64 rng(cfg.seed);

  Instance inst;
  inst.n1 = half;
  inst.n2 = half;
  inst.c.resize(half);
  inst.d.resize(half);
  inst.M.resize(cfg.m1, half);
  inst.N.resize(cfg.m1, half);
  inst.a.resize(half);
  inst.b.resize(half);
  inst.V.resize(half, half);
  while (true) {
    fill(rng, inst.c, 0, 99);
    fill(rng, inst.d, 0, 99);
    fill(rng, inst.M, 0, 99);
    fill(rng, inst.N, 0, 99);
    fill(rng, inst.a, 0, 99);
    fill(rng, inst.b, 0, 99);
    fill(rng, inst.V, 0, 9);
    inst.f = std::floor((inst.a.sum() + inst.b.sum()) / 4.0);
    const bool zero_row = inst.a.isZero() && inst.b.isZero();
    if (!zero_row && inst.b.sum() >= inst.f) break;
  }
  inst.h.resize(cfg.m1);
  for (int i = 0; i < cfg.m1; ++i) {
    inst.h[i] = std::floor((inst.M.row(i).sum() + inst.N.row(i).sum()) / 4.0);
  }
  inst.Mt.resize(0, half);
  inst.Nt.resize(0, half);
  inst.ht.resize(0);
  inst.g = Vector::Zero(half);
  inst.Y_C.resize(0, half);
  inst.Y_u.resize(0);
  inst.lb = Vector::Zero(cfg.n);
  inst.ub = Vector::Ones(cfg.n);
  return inst;
}

}  // namespace bicut
