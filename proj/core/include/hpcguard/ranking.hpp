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
#ifndef HPCGUARD_RANKING_HPP_
#define HPCGUARD_RANKING_HPP_

#include <cstddef>
#include <vector>

#include "hpcguard/matrix.hpp"

namespace hpcguard {

// Supervised per-feature relevance scores. Both require a labeled matrix
// with at least two classes, each with >= 2 rows (SingleClass /
// MissingLabels otherwise).

// F_j = sum_c n_c (mu_cj - mu_j)^2 / (sum_c n_c sigma2_cj + 1e-12), with
// population class variances.
std::vector<double> fisher_scores(const FeatureMatrix& x);

// IG_j = H(labels) - sum_b p(b) H(labels | feature j falls in bin b), with
// `bins` equal-width bins over the feature's observed range and base-2 logs.
// A constant feature scores 0.
std::vector<double> information_gain(const FeatureMatrix& x,
                                     std::size_t bins = 10);

}  // namespace hpcguard

#endif  // HPCGUARD_RANKING_HPP_
