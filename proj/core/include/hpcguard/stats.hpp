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
#ifndef HPCGUARD_STATS_HPP_
#define HPCGUARD_STATS_HPP_

#include <cstddef>

namespace hpcguard {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
// computed with the series expansion for x < a + 1 and the Lentz
// continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Chi-square CDF with `dof` degrees of freedom.
double chi2_cdf(double x, std::size_t dof);

// Chi-square quantile by bisection on the CDF to |P - p| <= 1e-10.
double chi2_quantile(double p, std::size_t dof);

// Exact harmonic number H_m = sum_{i=1..m} 1/i (H_0 = 0).
double harmonic_number(std::size_t m);

// Average unsuccessful-search path length of a binary search tree with m
// points: c(m) = 2 H(m-1) - 2 (m-1) / m, with c(0) = c(1) = 0. This is the
// isolation-forest normalization constant; c(2) = 1 exactly.
double average_path_length(std::size_t m);

}  // namespace hpcguard

#endif  // HPCGUARD_STATS_HPP_
