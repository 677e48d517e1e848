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
#include "hpcguard/kernel.hpp"

#include <cmath>

#include "hpcguard/error.hpp"

namespace hpcguard {

double KernelSpec::operator()(std::span<const double> x,
                              std::span<const double> y) const {
  if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
  if (kind == KernelKind::kLinear) {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return dot;
  }
  double dist2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double delta = x[i] - y[i];
    dist2 += delta * delta;
  }
  return std::exp(-gamma * dist2);
}

double default_rbf_gamma(const FeatureMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n == 0 || d == 0) return 1.0;

  double total_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x.at(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = x.at(i, j) - mean;
      var += delta * delta;
    }
    total_var += var / static_cast<double>(n);
  }
  const double mean_var = total_var / static_cast<double>(d);
  if (!(mean_var > 0.0) || !std::isfinite(mean_var)) return 1.0;
  return 1.0 / (static_cast<double>(d) * mean_var);
}

}  // namespace hpcguard
