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
#include "hpcguard/ocsvm.hpp"

#include <cmath>
#include <limits>

#include "hpcguard/error.hpp"

namespace hpcguard {

double OcSvmFit::decision_value(std::span<const double> x) const {
  if (x.size() != dim) throw DimensionMismatch(dim, x.size());
  double f = -rho;
  for (std::size_t i = 0; i < n_support(); ++i) {
    f += dual_coefs[i] *
         kernel(std::span<const double>{support_vectors.data() + i * dim, dim},
                x);
  }
  return f;
}

OcSvmFit ocsvm_train(const FeatureMatrix& x, const OcSvmParams& params) {
  const std::size_t n = x.rows();
  if (n < 2) throw EmptyMatrix("one-class svm needs n >= 2 rows");
  if (!(params.nu > 0.0) || !(params.nu <= 1.0)) {
    throw InvalidHyperparam("nu must lie in (0, 1]");
  }
  if (!(params.tol > 0.0)) throw InvalidHyperparam("tol must be > 0");

  KernelSpec kernel = params.kernel;
  if (kernel.kind == KernelKind::kRbf && params.auto_gamma) {
    kernel.gamma = default_rbf_gamma(x);
  }
  if (kernel.kind == KernelKind::kRbf && !(kernel.gamma > 0.0)) {
    throw InvalidHyperparam("rbf gamma must be > 0");
  }

  const double ub = 1.0 / (params.nu * static_cast<double>(n));

  // libsvm-style initialization: the first floor(nu*n) points sit at the
  // upper bound, the next takes the remainder; sum alpha = 1 exactly.
  std::vector<double> alpha(n, 0.0);
  const double nu_n = params.nu * static_cast<double>(n);
  const auto full = static_cast<std::size_t>(std::floor(nu_n));
  for (std::size_t i = 0; i < full && i < n; ++i) alpha[i] = ub;
  if (full < n) {
    alpha[full] = (nu_n - std::floor(nu_n)) * ub;
  }

  auto kern = [&](std::size_t i, std::size_t j) {
    return kernel(x.row(i), x.row(j));
  };

  // Gradient G_i = (K alpha)_i.
  std::vector<double> grad(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (alpha[j] <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) grad[i] += alpha[j] * kern(i, j);
  }

  std::size_t iter = 0;
  for (;; ++iter) {
    if (iter > params.max_iter) throw NoConvergence("one-class smo", iter);

    // Most-violating pair: mass flows from the highest-gradient point that
    // can shrink to the lowest-gradient point that can grow.
    std::size_t up = n, down = n;
    double min_up = std::numeric_limits<double>::infinity();
    double max_down = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] < ub && grad[i] < min_up) {
        min_up = grad[i];
        up = i;
      }
      if (alpha[i] > 0.0 && grad[i] > max_down) {
        max_down = grad[i];
        down = i;
      }
    }
    if (up == n || down == n || max_down - min_up <= params.tol) break;

    const double eta = kern(up, up) + kern(down, down) - 2.0 * kern(up, down);
    double t = (eta > 1e-300) ? (max_down - min_up) / eta
                              : std::numeric_limits<double>::infinity();
    t = std::min(t, alpha[down]);
    t = std::min(t, ub - alpha[up]);
    // Selection guarantees alpha[down] > 0 and alpha[up] < ub, so t > 0;
    // a zero step means fp breakdown, not convergence.
    if (!(t > 0.0)) throw NoConvergence("one-class smo (zero step)", iter);

    alpha[down] -= t;
    alpha[up] += t;
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] += t * (kern(up, i) - kern(down, i));
    }
  }

  // rho: mean gradient over free support vectors; with none, the midpoint
  // of the optimality bracket.
  double rho;
  {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] > 0.0 && alpha[i] < ub) {
        sum += grad[i];
        ++count;
      }
    }
    if (count > 0) {
      rho = sum / static_cast<double>(count);
    } else {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 0.0) lo = std::max(lo, grad[i]);   // at upper bound
        if (alpha[i] < ub) hi = std::min(hi, grad[i]);    // at zero
      }
      rho = 0.5 * (lo + hi);
    }
  }

  OcSvmFit fit;
  fit.nu = params.nu;
  fit.kernel = kernel;
  fit.tol = params.tol;
  fit.dim = x.cols();
  fit.rho = rho;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > 0.0) {
      const auto row = x.row(i);
      fit.support_vectors.insert(fit.support_vectors.end(), row.begin(),
                                 row.end());
      fit.dual_coefs.push_back(alpha[i]);
    }
  }
  return fit;
}

}  // namespace hpcguard
