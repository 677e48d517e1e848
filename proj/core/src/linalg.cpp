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
#include "hpcguard/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpcguard/error.hpp"

namespace hpcguard {

std::vector<double> cholesky_factor(const std::vector<double>& a,
                                    std::size_t n) {
  if (a.size() != n * n) throw DimensionMismatch(n * n, a.size());
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (!(sum > 0.0)) {
          throw SingularCovariance(
              "matrix is not positive definite (pivot " +
              std::to_string(i) + ")");
        }
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  return l;
}

std::vector<double> cholesky_solve(const std::vector<double>& l,
                                   std::size_t n,
                                   const std::vector<double>& b) {
  if (b.size() != n) throw DimensionMismatch(n, b.size());
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l[i * n + k] * y[k];
    y[i] = sum / l[i * n + i];
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double sum = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) sum -= l[k * n + ii] * x[k];
    x[ii] = sum / l[ii * n + ii];
  }
  return x;
}

double cholesky_logdet(const std::vector<double>& l, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::log(l[i * n + i]);
  return 2.0 * acc;
}

namespace {

double offdiag_frobenius(const std::vector<double>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += a[i * n + j] * a[i * n + j];
    }
  }
  return std::sqrt(sum);
}

}  // namespace

EigenResult jacobi_eigen_symmetric(const std::vector<double>& a,
                                   std::size_t n,
                                   double tol,
                                   std::size_t max_sweeps) {
  if (a.size() != n * n) throw DimensionMismatch(n * n, a.size());
  std::vector<double> m = a;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  if (n > 1) {
    bool converged = false;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      if (offdiag_frobenius(m, n) < tol) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = m[p * n + q];
          if (apq == 0.0) continue;
          const double app = m[p * n + p];
          const double aqq = m[q * n + q];
          // Stable rotation angle computation (Golub & Van Loan).
          const double theta = (aqq - app) / (2.0 * apq);
          const double t = (theta >= 0.0)
              ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
              : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          for (std::size_t k = 0; k < n; ++k) {
            const double mkp = m[k * n + p];
            const double mkq = m[k * n + q];
            m[k * n + p] = c * mkp - s * mkq;
            m[k * n + q] = s * mkp + c * mkq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double mpk = m[p * n + k];
            const double mqk = m[q * n + k];
            m[p * n + k] = c * mpk - s * mqk;
            m[q * n + k] = s * mpk + c * mqk;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p];
            const double vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
    if (!converged && offdiag_frobenius(m, n) >= tol) {
      throw NoConvergence("jacobi eigendecomposition", max_sweeps);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return m[x * n + x] > m[y * n + y];
                   });

  EigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    result.eigenvalues[j] = m[src * n + src];
    for (std::size_t i = 0; i < n; ++i) {
      result.eigenvectors[i * n + j] = v[i * n + src];
    }
  }
  return result;
}

std::vector<double> matvec(const std::vector<double>& a,
                           std::size_t rows,
                           std::size_t cols,
                           const std::vector<double>& x) {
  if (a.size() != rows * cols) throw DimensionMismatch(rows * cols, a.size());
  if (x.size() != cols) throw DimensionMismatch(cols, x.size());
  std::vector<double> y(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += a[i * cols + j] * x[j];
    y[i] = sum;
  }
  return y;
}

}  // namespace hpcguard
