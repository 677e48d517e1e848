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
#ifndef HPCGUARD_PCA_HPP_
#define HPCGUARD_PCA_HPP_

#include <cstddef>
#include <vector>

#include "hpcguard/matrix.hpp"

namespace hpcguard {

// Principal component analysis over the population (1/n) covariance,
// eigendecomposed with cyclic Jacobi rotations (deterministic, all pairs).
class PcaModel {
 public:
  // Keeps the smallest k whose explained-variance prefix reaches
  // variance_target (in (0, 1]) of the total. Throws EmptyMatrix for n < 2,
  // InvalidHyperparam for a target outside (0, 1], NoConvergence if Jacobi
  // fails to reduce the off-diagonal norm below 1e-10 in 100 sweeps.
  static PcaModel fit(const FeatureMatrix& x, double variance_target = 1.0);

  // Projects rows: (x - mean) * components^T. Output columns are "pc0"...
  FeatureMatrix transform(const FeatureMatrix& x) const;

  // Lifts projected rows back: y * components + mean.
  FeatureMatrix inverse_transform(const FeatureMatrix& y) const;

  std::size_t n_components() const { return explained_variance_.size(); }
  std::size_t input_dim() const { return mean_.size(); }
  // Row-major k x d; rows are orthonormal. Sign convention: the entry of
  // largest magnitude in each component is positive.
  const std::vector<double>& components() const { return components_; }
  const std::vector<double>& explained_variance() const {
    return explained_variance_;
  }
  double total_variance() const { return total_variance_; }
  const std::vector<double>& mean() const { return mean_; }

 private:
  std::vector<double> components_;
  std::vector<double> explained_variance_;
  std::vector<double> mean_;
  double total_variance_ = 0.0;
};

}  // namespace hpcguard

#endif  // HPCGUARD_PCA_HPP_
