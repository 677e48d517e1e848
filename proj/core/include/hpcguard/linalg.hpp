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
#ifndef HPCGUARD_LINALG_HPP_
#define HPCGUARD_LINALG_HPP_

#include <cstddef>
#include <vector>

namespace hpcguard {

// Dense row-major square/rectangular helpers shared by the statistical
// models. Matrices are flat vectors with explicit dimensions; all code
// paths are deterministic.

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix
// (row-major, n x n). Throws SingularCovariance if a pivot is not positive.
std::vector<double> cholesky_factor(const std::vector<double>& a,
                                    std::size_t n);

// Solves L * L^T * x = b given the lower factor from cholesky_factor.
std::vector<double> cholesky_solve(const std::vector<double>& l,
                                   std::size_t n,
                                   const std::vector<double>& b);

// log(det(A)) via the Cholesky factor: 2 * sum(log(L_ii)).
double cholesky_logdet(const std::vector<double>& l, std::size_t n);

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenvalues are
// returned descending with matching eigenvector columns
// (eigvecs[i * n + j] = component i of eigenvector j). Sweeps until the
// off-diagonal Frobenius norm drops below `tol`; throws NoConvergence after
// `max_sweeps` full sweeps.
struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;
};
EigenResult jacobi_eigen_symmetric(const std::vector<double>& a,
                                   std::size_t n,
                                   double tol = 1e-10,
                                   std::size_t max_sweeps = 100);

// y = A x for a row-major (rows x cols) matrix.
std::vector<double> matvec(const std::vector<double>& a,
                           std::size_t rows,
                           std::size_t cols,
                           const std::vector<double>& x);

}  // namespace hpcguard

#endif  // HPCGUARD_LINALG_HPP_
