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
#ifndef HPCGUARD_SVM_HPP_
#define HPCGUARD_SVM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "hpcguard/kernel.hpp"
#include "hpcguard/matrix.hpp"

namespace hpcguard {

struct SvmParams {
  double c = 1.0;
  KernelSpec kernel{};   // see auto_gamma
  bool auto_gamma = true;  // RBF: gamma = 1/(d * mean feature variance)
  double tol = 1e-3;       // KKT tolerance
  std::size_t max_passes = 10000;  // examine sweeps before NoConvergence
};

// Two-class soft-margin SVM trained with sequential minimal optimization
// (deterministic working-set selection: second index maximizes |E_i - E_j|,
// ties and fallback scans resolved by ascending row index). Malign is the
// +1 class. After the solver reports convergence the error cache is
// recomputed from scratch and optimization resumes if any fresh KKT
// violation remains, so the published invariants hold on exact values.
struct SvmFit {
  std::vector<double> support_vectors;  // flat n_sv x dim
  std::vector<double> dual_coefs;       // alpha_i * y_i, nonzero
  double bias = 0.0;
  KernelSpec kernel{};
  double c = 1.0;
  double tol = 1e-3;
  std::size_t dim = 0;

  std::size_t n_support() const { return dual_coefs.size(); }
  // f(x) = sum_i dual_coefs[i] * k(sv_i, x) + bias; sign(+) = Malign.
  double decision_value(std::span<const double> x) const;
};

// Throws MissingLabels, SingleClass, NoConvergence, InvalidHyperparam.
SvmFit svm_train(const FeatureMatrix& x, const SvmParams& params = {});

}  // namespace hpcguard

#endif  // HPCGUARD_SVM_HPP_
