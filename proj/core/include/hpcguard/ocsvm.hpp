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
#ifndef HPCGUARD_OCSVM_HPP_
#define HPCGUARD_OCSVM_HPP_

#include <span>
#include <vector>

#include "hpcguard/kernel.hpp"
#include "hpcguard/matrix.hpp"

namespace hpcguard {

struct OcSvmParams {
  double nu = 0.1;  // upper bound on the training outlier fraction
  KernelSpec kernel{};
  bool auto_gamma = true;
  double tol = 1e-3;
  std::size_t max_iter = 200000;
};

// One-class SVM: minimize (1/2) a^T K a subject to 0 <= a_i <= 1/(nu n),
// sum a = 1, solved by deterministic SMO-style pairwise transfers between
// the most-violating pair (ties by ascending row index).
struct OcSvmFit {
  std::vector<double> support_vectors;  // flat n_sv x dim
  std::vector<double> dual_coefs;       // alpha_i > 0
  double rho = 0.0;
  double nu = 0.1;
  KernelSpec kernel{};
  double tol = 1e-3;
  std::size_t dim = 0;

  std::size_t n_support() const { return dual_coefs.size(); }
  // f(x) = sum_i alpha_i k(sv_i, x) - rho; negative => anomaly.
  double decision_value(std::span<const double> x) const;
};

// Throws InvalidHyperparam (nu outside (0, 1]), EmptyMatrix (n < 2),
// NoConvergence.
OcSvmFit ocsvm_train(const FeatureMatrix& x, const OcSvmParams& params = {});

}  // namespace hpcguard

#endif  // HPCGUARD_OCSVM_HPP_
