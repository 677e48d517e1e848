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
#include "hpcguard/ranking.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

// Classes are the two Label values; rows per class, SingleClass if < 2
// classes have rows, MissingLabels if any row is unlabeled.
std::array<std::vector<std::size_t>, 2> class_partition(
    const FeatureMatrix& x) {
  if (!x.has_labels()) throw MissingLabels("ranking needs labeled rows");
  std::array<std::vector<std::size_t>, 2> parts;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto& label = x.labels()[i];
    if (!label.has_value()) {
      throw MissingLabels("row " + std::to_string(i) + " is unlabeled");
    }
    parts[static_cast<std::size_t>(*label)].push_back(i);
  }
  if (parts[0].size() < 2 || parts[1].size() < 2) {
    throw SingleClass("ranking needs >= 2 rows in each of two classes");
  }
  return parts;
}

double entropy_bits(double n0, double n1) {
  const double n = n0 + n1;
  if (n <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : {n0, n1}) {
    if (c > 0.0) {
      const double p = c / n;
      h -= p * std::log2(p);
    }
  }
  return h;
}

}  // namespace

std::vector<double> fisher_scores(const FeatureMatrix& x) {
  const auto parts = class_partition(x);
  const std::size_t d = x.cols();
  const double n = static_cast<double>(x.rows());

  std::vector<double> scores(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double mu = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mu += x.at(i, j);
    mu /= n;

    double between = 0.0;
    double within = 0.0;
    for (const auto& rows : parts) {
      const double nc = static_cast<double>(rows.size());
      double mu_c = 0.0;
      for (std::size_t i : rows) mu_c += x.at(i, j);
      mu_c /= nc;
      double var_c = 0.0;
      for (std::size_t i : rows) {
        const double delta = x.at(i, j) - mu_c;
        var_c += delta * delta;
      }
      var_c /= nc;  // population variance
      between += nc * (mu_c - mu) * (mu_c - mu);
      within += nc * var_c;
    }
    scores[j] = between / (within + 1e-12);
  }
  return scores;
}

std::vector<double> information_gain(const FeatureMatrix& x,
                                     std::size_t bins) {
  if (bins == 0) throw InvalidHyperparam("information gain needs bins >= 1");
  const auto parts = class_partition(x);
  const std::size_t d = x.cols();
  const std::size_t n = x.rows();

  const double h_label = entropy_bits(static_cast<double>(parts[0].size()),
                                      static_cast<double>(parts[1].size()));

  std::vector<double> gains(d, 0.0);
  std::vector<double> bin_counts(bins * 2);
  for (std::size_t j = 0; j < d; ++j) {
    double lo = x.at(0, j);
    double hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, x.at(i, j));
      hi = std::max(hi, x.at(i, j));
    }
    if (hi <= lo) {
      gains[j] = 0.0;  // constant feature carries no information
      continue;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    std::fill(bin_counts.begin(), bin_counts.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto b = static_cast<std::size_t>((x.at(i, j) - lo) / width);
      b = std::min(b, bins - 1);  // right edge lands in the last bin
      const auto c = static_cast<std::size_t>(*x.labels()[i]);
      bin_counts[b * 2 + c] += 1.0;
    }
    double conditional = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      const double n0 = bin_counts[b * 2];
      const double n1 = bin_counts[b * 2 + 1];
      conditional += (n0 + n1) / static_cast<double>(n) * entropy_bits(n0, n1);
    }
    gains[j] = h_label - conditional;
    if (gains[j] < 0.0 && gains[j] > -1e-12) gains[j] = 0.0;
  }
  return gains;
}

}  // namespace hpcguard
