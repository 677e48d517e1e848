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
#ifndef HPCGUARD_ELLIPTIC_HPP_
#define HPCGUARD_ELLIPTIC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hpcguard/matrix.hpp"

namespace hpcguard {

struct EllipticParams {
  double contamination = 0.1;
  std::size_t n_restarts = 10;
  std::uint64_t seed = 0;
};

// Robust Gaussian envelope via a simplified minimum-covariance-determinant
// search: each restart seeds (mu, Sigma) from a random (d+1)-point subset and
// iterates C-steps — refit on the h = floor((n+d+1)/2) points with the
// smallest squared Mahalanobis distance — until the determinant stops
// changing. The lowest-determinant solution wins. The winning covariance is
// rescaled so the empirical (1 - contamination) quantile of the full-sample
// squared distances matches chi2_quantile(1 - contamination, d): the usual
// consistency correction on clean Gaussian data, and a tail-exact
// calibration (training false-alarm rate == contamination) otherwise.
//
// Scores are squared Mahalanobis distances; anomaly iff score > threshold,
// where threshold = chi2 quantile at (1 - contamination) with d degrees of
// freedom.
struct EllipticFit {
  std::vector<double> mean;            // d
  std::vector<double> covariance;      // d x d, consistency-corrected
  std::vector<double> chol;            // lower Cholesky factor of covariance
  double threshold = 0.0;              // tau
  double contamination = 0.1;
  std::uint64_t seed = 0;
  std::size_t dim = 0;

  // Final-iteration log-determinant trace per successful restart, in C-step
  // order (non-increasing within each restart by construction).
  std::vector<std::vector<double>> restart_logdets;

  double score(std::span<const double> q) const;  // squared Mahalanobis
};

// Throws TooFewPoints for n < 2(d+1), InvalidHyperparam for contamination
// outside (0, 0.5] or zero restarts, SingularCovariance when every restart
// fails even after the ridge fallback. Deterministic given (data, params).
EllipticFit elliptic_fit(const FeatureMatrix& x,
                         const EllipticParams& params = {});

}  // namespace hpcguard

#endif  // HPCGUARD_ELLIPTIC_HPP_
