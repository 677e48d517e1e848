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
#include "hpcguard/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : data) {
    h ^= static_cast<std::uint64_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view key) {
  std::uint64_t x = seed ^ fnv1a64(key);
  return splitmix64(x);
}

Rng::Rng(std::uint64_t seed) {
  // splitmix64 expansion as recommended for seeding xoshiro: avoids the
  // all-zero state and decorrelates nearby seeds.
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw InvalidHyperparam("uniform_int bound must be > 0");
  // Rejection sampling over the largest multiple of bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * factor;
  has_cached_normal_ = true;
  return u * factor;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidHyperparam("gamma shape must be > 0");
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^{1/a}.
    const double g = gamma(shape + 1.0);
    const double u = uniform();
    // uniform() can return exactly 0; retry to avoid log(0)/pow(0,..) issues.
    if (u <= 0.0) return gamma(shape);
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

std::uint64_t Rng::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw InvalidHyperparam("poisson mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // Knuth: multiply uniforms until the product drops below exp(-mean).
    const double limit = std::exp(-mean);
    double prod = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      prod *= uniform();
    } while (prod > limit);
    return k - 1;
  }
  // Hormann's PTRS transformed-rejection sampler.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (kf < 0.0) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (us < 0.013 && v > us) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs =
        -mean + kf * std::log(mean) - std::lgamma(kf + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
  }
}

std::uint64_t Rng::negative_binomial(double mean, double dispersion) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw InvalidHyperparam("negative_binomial mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (dispersion <= 0.0) return poisson(mean);
  // Gamma-Poisson mixture: lambda ~ Gamma(1/dispersion, mean*dispersion).
  const double shape = 1.0 / dispersion;
  const double scale = mean * dispersion;
  const double lambda = gamma(shape) * scale;
  return poisson(lambda);
}

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
  if (p < 0.0 || p > 1.0 || !std::isfinite(p)) {
    throw InvalidHyperparam("binomial p must be in [0, 1]");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (n <= 64) {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (uniform() < p) ++k;
    }
    return k;
  }
  // Normal approximation, clamped to the valid support. Counter synthesis
  // only reaches this branch for large n where the approximation is tight.
  const double nd = static_cast<double>(n);
  const double mu = nd * p;
  const double sigma = std::sqrt(nd * p * (1.0 - p));
  const double draw = std::floor(mu + sigma * normal() + 0.5);
  if (draw < 0.0) return 0;
  if (draw > nd) return n;
  return static_cast<std::uint64_t>(draw);
}

std::size_t Rng::categorical(std::span<const double> weights) {
  if (weights.empty()) throw InvalidHyperparam("categorical needs weights");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw InvalidHyperparam("categorical weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) throw InvalidHyperparam("categorical weights sum to 0");
  const double target = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  return weights.size() - 1;
}

}  // namespace hpcguard
