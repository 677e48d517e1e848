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

#include <cmath>
#include <cstddef>
#include <vector>

#include <doctest.h>

#include "hpcguard/error.hpp"
#include "hpcguard/kernel.hpp"
#include "hpcguard/linalg.hpp"
#include "hpcguard/stats.hpp"

#include "test_util.hpp"

using namespace hpcguard;
using testutil::make_mat;

TEST_CASE("cholesky factorization, solve, and logdet on a known matrix") {
  // A = [[4, 2], [2, 3]] => L = [[2, 0], [1, sqrt(2)]], det(A) = 8.
  const std::vector<double> a{4.0, 2.0, 2.0, 3.0};
  const std::vector<double> l = cholesky_factor(a, 2);
  CHECK(l[0] == doctest::Approx(2.0));
  CHECK(l[1] == doctest::Approx(0.0));
  CHECK(l[2] == doctest::Approx(1.0));
  CHECK(l[3] == doctest::Approx(std::sqrt(2.0)));

  CHECK(cholesky_logdet(l, 2) == doctest::Approx(std::log(8.0)));

  // Solve A x = b for b = (8, 7): x = (1.25, 1.5).
  const std::vector<double> x = cholesky_solve(l, 2, {8.0, 7.0});
  CHECK(x[0] == doctest::Approx(1.25));
  CHECK(x[1] == doctest::Approx(1.5));

  // Indefinite input has no real factor.
  CHECK_THROWS_AS(cholesky_factor({1.0, 2.0, 2.0, 1.0}, 2),
                  SingularCovariance);
}

TEST_CASE("jacobi eigendecomposition recovers spectrum and orthonormality") {
  // Symmetric 3x3 with a known dominant direction.
  const std::vector<double> a{4.0, 1.0, 0.5,  //
                              1.0, 3.0, 0.25,  //
                              0.5, 0.25, 2.0};
  const EigenResult r = jacobi_eigen_symmetric(a, 3);
  REQUIRE(r.eigenvalues.size() == 3);

  // Descending order and trace preservation.
  CHECK(r.eigenvalues[0] >= r.eigenvalues[1]);
  CHECK(r.eigenvalues[1] >= r.eigenvalues[2]);
  CHECK(r.eigenvalues[0] + r.eigenvalues[1] + r.eigenvalues[2] ==
        doctest::Approx(9.0).epsilon(1e-10));

  for (std::size_t j = 0; j < 3; ++j) {
    // A v = lambda v.
    std::vector<double> v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = r.eigenvectors[i * 3 + j];
    const std::vector<double> av = matvec(a, 3, 3, v);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(av[i] == doctest::Approx(r.eigenvalues[j] * v[i]).epsilon(1e-8));
    }
    // Columns are orthonormal.
    for (std::size_t k = 0; k < 3; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        dot += r.eigenvectors[i * 3 + j] * r.eigenvectors[i * 3 + k];
      }
      CHECK(dot == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("matvec multiplies row-major rectangles") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};  // 2x3
  const std::vector<double> y = matvec(a, 2, 3, {1.0, 0.0, -1.0});
  CHECK(y == std::vector<double>{-2.0, -2.0});
}

TEST_CASE("regularized incomplete gamma matches closed forms") {
  // P(1/2, x) = erf(sqrt(x)); P(1, x) = 1 - exp(-x).
  CHECK(regularized_gamma_p(0.5, 1.0) ==
        doctest::Approx(std::erf(1.0)).epsilon(1e-10));
  CHECK(regularized_gamma_p(1.0, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(regularized_gamma_p(2.5, 0.0) == 0.0);
}

TEST_CASE("chi-square quantiles match reference values") {
  // Frozen reference values (15 significant digits) from an independent
  // statistics package.
  struct Case {
    std::size_t d;
    double p50, p90, p95;
  };
  const Case cases[] = {
      {1, 0.454936423119572, 2.705543454095404, 3.841458820694124},
      {2, 1.386294361119891, 4.605170185988092, 5.991464547107979},
      {3, 2.365973884375338, 6.251388631170325, 7.814727903251179},
      {5, 4.351460191095526, 9.236356899781123, 11.070497693516351},
      {9, 8.342832692252955, 14.683656573259837, 16.918977604620448},
  };
  for (const Case& c : cases) {
    CHECK(chi2_quantile(0.5, c.d) == doctest::Approx(c.p50).epsilon(1e-8));
    CHECK(chi2_quantile(0.9, c.d) == doctest::Approx(c.p90).epsilon(1e-8));
    CHECK(chi2_quantile(0.95, c.d) == doctest::Approx(c.p95).epsilon(1e-8));
    // CDF and quantile are mutual inverses.
    CHECK(chi2_cdf(c.p90, c.d) == doctest::Approx(0.9).epsilon(1e-9));
  }
}

TEST_CASE("harmonic numbers and the isolation normalizer") {
  CHECK(harmonic_number(0) == 0.0);
  CHECK(harmonic_number(1) == 1.0);
  CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));

  CHECK(average_path_length(0) == 0.0);
  CHECK(average_path_length(1) == 0.0);
  CHECK(average_path_length(2) == 1.0);  // exact by definition
  CHECK(average_path_length(101) ==
        doctest::Approx(8.394557015477261).epsilon(1e-12));
  CHECK(average_path_length(256) ==
        doctest::Approx(10.248689925634562).epsilon(1e-12));
}

TEST_CASE("kernels evaluate their closed forms") {
  const std::vector<double> x{0.0, 0.0};
  const std::vector<double> y{3.0, 4.0};

  KernelSpec linear{KernelKind::kLinear, 1.0};
  CHECK(linear(x, y) == 0.0);
  CHECK(linear(y, y) == 25.0);

  KernelSpec rbf{KernelKind::kRbf, 0.1};
  CHECK(rbf(x, y) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  CHECK(rbf(y, y) == 1.0);
}

TEST_CASE("default rbf bandwidth averages per-feature population variance") {
  const double s3 = std::sqrt(3.0);
  const FeatureMatrix m =
      make_mat({{-1.0, -s3}, {1.0, s3}, {-1.0, -s3}, {1.0, s3}});
  // Column variances are 1 and 3; mean 2; d = 2 => gamma = 1/4.
  CHECK(default_rbf_gamma(m) == doctest::Approx(0.25).epsilon(1e-12));

  // Degenerate data falls back to gamma = 1.
  const FeatureMatrix flat = make_mat({{2.0, 2.0}, {2.0, 2.0}});
  CHECK(default_rbf_gamma(flat) == 1.0);
}
