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
#include "hpcguard/stats.hpp"

#include <cmath>
#include <limits>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NoConvergence("incomplete gamma series", kMaxIterations);
}

double gamma_q_continued_fraction(double a, double x) {
  // Modified Lentz evaluation of the Q(a, x) continued fraction.
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NoConvergence("incomplete gamma continued fraction", kMaxIterations);
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw InvalidHyperparam("incomplete gamma needs a > 0");
  if (x < 0.0) throw InvalidHyperparam("incomplete gamma needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double chi2_cdf(double x, std::size_t dof) {
  if (dof == 0) throw InvalidHyperparam("chi2 needs dof >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(static_cast<double>(dof) / 2.0, x / 2.0);
}

double chi2_quantile(double p, std::size_t dof) {
  if (dof == 0) throw InvalidHyperparam("chi2 needs dof >= 1");
  if (!(p > 0.0) || !(p < 1.0)) {
    throw InvalidHyperparam("chi2 quantile needs p in (0, 1)");
  }
  // Bracket the quantile, then bisect the monotone CDF.
  double lo = 0.0;
  double hi = static_cast<double>(dof);
  while (chi2_cdf(hi, dof) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = chi2_cdf(mid, dof);
    if (std::fabs(cdf - p) <= 1e-10) {
      // Polish: shrink the bracket a little further for a stable answer.
      if (cdf < p) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-12 * (1.0 + hi)) return 0.5 * (lo + hi);
      continue;
    }
    if (cdf < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double harmonic_number(std::size_t m) {
  double h = 0.0;
  for (std::size_t i = 1; i <= m; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

double average_path_length(std::size_t m) {
  if (m < 2) return 0.0;
  const double md = static_cast<double>(m);
  return 2.0 * harmonic_number(m - 1) - 2.0 * (md - 1.0) / md;
}

}  // namespace hpcguard
