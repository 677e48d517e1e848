/*
 * Copyright 2026 The hpcguard Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "hpcguard/rng.hpp"

using hpcguard::Rng;
using hpcguard::fnv1a64;
using hpcguard::mix_seed;

TEST_CASE("fnv1a64 matches the published test vectors") {
  // Offset basis (empty input) and chained multiply/xor per byte.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  // Frozen values computed with an independent implementation of the
  // FNV-1a reference algorithm.
  CHECK(fnv1a64("addi") == 0xc9e2c083d21739a7ULL);
  CHECK(fnv1a64("c.jr") == 0x2d9a1b924e8ba578ULL);
  CHECK(fnv1a64("addi c.jr") == 0x1f107a471fc7dc38ULL);
  CHECK(fnv1a64("lui") == 0x12a989191dfba269ULL);
  CHECK(fnv1a64("push") == 0x6c80030e2762459dULL);
}

TEST_CASE("mix_seed derives distinct stable sub-seeds") {
  CHECK(mix_seed(42, "split") == mix_seed(42, "split"));
  CHECK(mix_seed(42, "split") != mix_seed(42, "synth"));
  CHECK(mix_seed(42, "split") != mix_seed(43, "split"));
}

TEST_CASE("generator streams are reproducible and seed-sensitive") {
  Rng a(7), b(7), c(8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_diff = any_diff || (va != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform stays in [0, 1) and covers the range") {
  Rng rng(1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform_int respects its bound without bias") {
  Rng rng(2);
  CHECK(rng.uniform_int(1) == 0);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const std::uint64_t v = rng.uniform_int(5);
    REQUIRE(v < 5);
    ++hist[static_cast<std::size_t>(v)];
  }
  for (const int h : hist) {
    CHECK(h > 9300);  // expected 10000 each
    CHECK(h < 10700);
  }
}

TEST_CASE("normal has the right first two moments") {
  Rng rng(3);
  double sum = 0.0, sum2 = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("gamma matches its mean and variance") {
  Rng rng(4);
  const double shape = 2.5;
  double sum = 0.0, sum2 = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gamma(shape);
    CHECK(g >= 0.0);
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(shape).epsilon(0.03));
  CHECK(var == doctest::Approx(shape).epsilon(0.08));  // var = shape here
}

TEST_CASE("poisson matches its mean on both sampling paths") {
  Rng rng(5);
  for (const double mean : {3.0, 120.0}) {  // Knuth path and PTRS path
    double sum = 0.0, sum2 = 0.0;
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mean));
      sum += k;
      sum2 += k * k;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(m == doctest::Approx(mean).epsilon(0.03));
    CHECK(var == doctest::Approx(mean).epsilon(0.08));
  }
}

TEST_CASE("negative binomial is over-dispersed by design") {
  Rng rng(6);
  const double mean = 50.0, disp = 0.3;
  double sum = 0.0, sum2 = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.negative_binomial(mean, disp));
    sum += k;
    sum2 += k * k;
  }
  const double m = sum / n;
  const double var = sum2 / n - m * m;
  CHECK(m == doctest::Approx(mean).epsilon(0.03));
  // Target variance: mean + disp * mean^2 = 50 + 750 = 800.
  CHECK(var == doctest::Approx(mean + disp * mean * mean).epsilon(0.1));

  // Zero dispersion degrades to plain Poisson (variance == mean).
  sum = sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.negative_binomial(mean, 0.0));
    sum += k;
    sum2 += k * k;
  }
  const double m0 = sum / n;
  const double var0 = sum2 / n - m0 * m0;
  CHECK(var0 == doctest::Approx(mean).epsilon(0.1));
}

TEST_CASE("binomial stays within [0, n] and matches n*p") {
  Rng rng(7);
  for (const std::uint64_t trials : {10ULL, 1000ULL}) {  // exact and approx
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t k = rng.binomial(trials, 0.3);
      REQUIRE(k <= trials);
      sum += static_cast<double>(k);
    }
    const double expected = 0.3 * static_cast<double>(trials);
    CHECK(sum / n == doctest::Approx(expected).epsilon(0.03));
  }
  CHECK(rng.binomial(100, 0.0) == 0);
  CHECK(rng.binomial(100, 1.0) == 100);
}

TEST_CASE("categorical draws proportionally to the weights") {
  Rng rng(8);
  const std::vector<double> degenerate{0.0, 1.0, 0.0};
  for (int i = 0; i < 100; ++i) {
    CHECK(rng.categorical(degenerate) == 1);
  }
  const std::vector<double> weights{1.0, 3.0};
  int ones = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    ones += rng.categorical(weights) == 1 ? 1 : 0;
  }
  CHECK(static_cast<double>(ones) / n == doctest::Approx(0.75).epsilon(0.03));
}
