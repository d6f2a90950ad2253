// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"

#include <cstdint>

namespace bicut {

/// SplitMix64 in counter mode: the i-th output (i = 1, 2, ...) is
/// mix(seed + i * 0x9E3779B97F4A7C15).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next();
  /// Uniform integer in [lo, hi]: lo + floor(u * (hi - lo + 1)) with u the
  /// top 53 bits of next() scaled to [0, 1).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

struct GeneratorConfig {
  int n = 20;
  int m1 = 0;
  std::uint64_t seed = 0;
};

/// Quadratic bilevel covering instance: n1 = n2 = n/2, all variables binary,
/// c, d, M, N, a, b uniform integers in [0, 99], V uniform integers in [0, 9],
/// g = 0, h and f the floored quarter row sums, no conic rows, no Y-rows.
/// Draws that violate sum(b) >= f or give a zero linking row are redrawn
/// from the same stream.  Throws std::invalid_argument for odd n, n < 2 or
/// m1 < 0.
Instance generate(const GeneratorConfig& cfg);

}  // namespace bicut
