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
#ifndef HPCGUARD_KERNEL_HPP_
#define HPCGUARD_KERNEL_HPP_

#include <span>

#include "hpcguard/matrix.hpp"

namespace hpcguard {

enum class KernelKind { kLinear, kRbf };

struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  double gamma = 1.0;  // RBF only; must be > 0

  // k(x, y): dot product or exp(-gamma * ||x - y||^2).
  double operator()(std::span<const double> x, std::span<const double> y) const;
};

// Default RBF bandwidth: gamma = 1 / (d * mean per-feature population
// variance), falling back to 1 when the data is degenerate.
double default_rbf_gamma(const FeatureMatrix& x);

}  // namespace hpcguard

#endif  // HPCGUARD_KERNEL_HPP_
