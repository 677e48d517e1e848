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
#ifndef HPCGUARD_RNG_HPP_
#define HPCGUARD_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace hpcguard {

// 64-bit FNV-1a. Used for n-gram feature hashing and sub-seed derivation.
std::uint64_t fnv1a64(std::string_view data);

// Derives an independent sub-seed for a named stream, e.g. one per run.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view key);

// xoshiro256++ with explicit sampling algorithms. All distributions are
// implemented here rather than via <random> so that a given seed produces
// the same stream on every compiler and platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in [0, bound) without modulo bias; bound must be > 0.
  std::uint64_t uniform_int(std::uint64_t bound);

  // Standard normal via the Marsaglia polar method (second value cached).
  double normal();

  // Marsaglia-Tsang gamma with unit scale; shape must be > 0.
  double gamma(double shape);

  // Exact Poisson: Knuth multiplication below mean 30, Hormann PTRS above.
  std::uint64_t poisson(double mean);

  // Negative binomial as a gamma-Poisson mixture with
  // variance = mean + dispersion * mean^2. dispersion <= 0 degrades to
  // plain Poisson.
  std::uint64_t negative_binomial(double mean, double dispersion);

  // Binomial draw; exact Bernoulli summation for n <= 64, clamped normal
  // approximation above (adequate for trace synthesis).
  std::uint64_t binomial(std::uint64_t n, double p);

  // Index draw proportional to non-negative weights (need not be normalized).
  std::size_t categorical(std::span<const double> weights);

 private:
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace hpcguard

#endif  // HPCGUARD_RNG_HPP_
