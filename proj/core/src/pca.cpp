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
#include "hpcguard/pca.hpp"

#include <cmath>
#include <string>

#include "hpcguard/error.hpp"
#include "hpcguard/linalg.hpp"

namespace hpcguard {

PcaModel PcaModel::fit(const FeatureMatrix& x, double variance_target) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < 2) throw EmptyMatrix("pca needs n >= 2 rows");
  if (!(variance_target > 0.0) || !(variance_target <= 1.0)) {
    throw InvalidHyperparam("variance_target must lie in (0, 1]");
  }

  PcaModel model;
  model.mean_.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) model.mean_[j] += x.at(i, j);
  }
  for (double& m : model.mean_) m /= static_cast<double>(n);

  // Population covariance.
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double da = x.at(i, a) - model.mean_[a];
      for (std::size_t b = a; b < d; ++b) {
        cov[a * d + b] += da * (x.at(i, b) - model.mean_[b]);
      }
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      cov[a * d + b] /= static_cast<double>(n);
      cov[b * d + a] = cov[a * d + b];
    }
  }

  const EigenResult eig = jacobi_eigen_symmetric(cov, d);

  double total = 0.0;
  for (double v : eig.eigenvalues) total += std::max(v, 0.0);
  model.total_variance_ = total;

  std::size_t k = d;
  if (total > 0.0) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      acc += std::max(eig.eigenvalues[j], 0.0);
      if (acc / total >= variance_target - 1e-12) {
        k = j + 1;
        break;
      }
    }
  }

  model.components_.assign(k * d, 0.0);
  model.explained_variance_.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    model.explained_variance_[j] = std::max(eig.eigenvalues[j], 0.0);
    // Deterministic sign: largest-magnitude entry made positive.
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double mag = std::fabs(eig.eigenvectors[i * d + j]);
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    const double sign = eig.eigenvectors[arg * d + j] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      model.components_[j * d + i] = sign * eig.eigenvectors[i * d + j];
    }
  }
  return model;
}

FeatureMatrix PcaModel::transform(const FeatureMatrix& x) const {
  const std::size_t d = input_dim();
  const std::size_t k = n_components();
  if (x.cols() != d) throw DimensionMismatch(d, x.cols());

  std::vector<double> data;
  data.reserve(x.rows() * k);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        dot += (x.at(i, j) - mean_[j]) * components_[c * d + j];
      }
      data.push_back(dot);
    }
  }
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t c = 0; c < k; ++c) names.push_back("pc" + std::to_string(c));
  return FeatureMatrix::make(std::move(data), std::move(names), x.row_ids(),
                             x.labels());
}

FeatureMatrix PcaModel::inverse_transform(const FeatureMatrix& y) const {
  const std::size_t d = input_dim();
  const std::size_t k = n_components();
  if (y.cols() != k) throw DimensionMismatch(k, y.cols());

  std::vector<double> data;
  data.reserve(y.rows() * d);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double v = mean_[j];
      for (std::size_t c = 0; c < k; ++c) {
        v += y.at(i, c) * components_[c * d + j];
      }
      data.push_back(v);
    }
  }
  std::vector<std::string> names;
  names.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    names.push_back("x" + std::to_string(j));
  }
  return FeatureMatrix::make(std::move(data), std::move(names), y.row_ids(),
                             y.labels());
}

}  // namespace hpcguard
