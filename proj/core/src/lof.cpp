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
#include "hpcguard/lof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hpcguard/error.hpp"

namespace hpcguard {
namespace {

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// First k fit points by (distance, row index), optionally excluding one row.
// Neighborhoods always have exactly k members, even under distance ties.
std::vector<std::pair<double, std::size_t>> k_nearest(
    std::span<const double> q, const std::vector<double>& points,
    std::size_t n, std::size_t dim, std::size_t k, std::size_t exclude) {
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == exclude) continue;
    const std::span<const double> pj(points.data() + j * dim, dim);
    cand.emplace_back(sq_distance(q, pj), j);
  }
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k),
                    cand.end());
  cand.resize(k);
  for (auto& c : cand) c.first = std::sqrt(c.first);
  return cand;
}

// lrd = k / sum of reachability distances; +inf when all reaches are zero
// (point duplicated at least k+1 times).
double local_reachability_density(
    const std::vector<std::pair<double, std::size_t>>& neighbors,
    const std::vector<double>& k_distances) {
  double sum_reach = 0.0;
  for (const auto& [dist, j] : neighbors) {
    sum_reach += std::max(k_distances[j], dist);
  }
  if (sum_reach <= 0.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(neighbors.size()) / sum_reach;
}

double lof_ratio(double mean_neighbor_lrd, double own_lrd) {
  const bool own_inf = std::isinf(own_lrd);
  const bool nbr_inf = std::isinf(mean_neighbor_lrd);
  if (own_inf && nbr_inf) return 1.0;  // duplicate cluster: uniform density
  if (own_inf) return 0.0;
  return mean_neighbor_lrd / own_lrd;
}

}  // namespace

LofFit lof_fit(const FeatureMatrix& x, const LofParams& params) {
  if (params.k == 0) throw InvalidHyperparam("lof k must be positive");
  if (!(params.threshold > 0.0) || !std::isfinite(params.threshold)) {
    throw InvalidHyperparam("lof threshold must be positive and finite");
  }
  const std::size_t n = x.rows();
  if (n <= params.k) {
    throw TooFewPoints("lof requires more points than neighbors (n=" +
                       std::to_string(n) + ", k=" + std::to_string(params.k) +
                       ")");
  }

  LofFit fit;
  fit.k = params.k;
  fit.threshold = params.threshold;
  fit.dim = x.cols();
  fit.points.assign(x.data().begin(), x.data().end());

  // Pass 1: neighborhoods and k-distances (self excluded).
  std::vector<std::vector<std::pair<double, std::size_t>>> neighborhoods(n);
  fit.k_distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    neighborhoods[i] =
        k_nearest(x.row(i), fit.points, n, fit.dim, params.k, i);
    fit.k_distances[i] = neighborhoods[i].back().first;
  }

  // Pass 2: local reachability densities.
  fit.lrds.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.lrds[i] = local_reachability_density(neighborhoods[i], fit.k_distances);
  }

  // Pass 3: LOF of each training point.
  fit.train_scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum_lrd = 0.0;
    for (const auto& [dist, j] : neighborhoods[i]) sum_lrd += fit.lrds[j];
    const double mean_lrd = sum_lrd / static_cast<double>(params.k);
    fit.train_scores[i] = lof_ratio(mean_lrd, fit.lrds[i]);
  }
  return fit;
}

double LofFit::score(std::span<const double> q) const {
  if (q.size() != dim) throw DimensionMismatch(dim, q.size());
  const std::size_t n = n_points();
  const auto neighbors =
      k_nearest(q, points, n, dim, k, n /* exclude nothing */);
  const double lrd_q = local_reachability_density(neighbors, k_distances);
  double sum_lrd = 0.0;
  for (const auto& [dist, j] : neighbors) sum_lrd += lrds[j];
  const double mean_lrd = sum_lrd / static_cast<double>(k);
  return lof_ratio(mean_lrd, lrd_q);
}

}  // namespace hpcguard
