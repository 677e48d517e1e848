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
#ifndef HPCGUARD_LOF_HPP_
#define HPCGUARD_LOF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hpcguard/matrix.hpp"

namespace hpcguard {

struct LofParams {
  std::size_t k = 20;
  double threshold = 1.5;  // anomaly iff LOF > threshold
};

// Local outlier factor with exact k-neighborhoods: the k nearest fit points
// under (distance, row index) lexicographic order, so |N(p)| == k even under
// distance ties. Euclidean distances.
//
//   k-distance(p)   = distance to p's k-th neighbor
//   reach(p, o)     = max(k-distance(o), d(p, o))
//   lrd(p)          = k / sum_{o in N(p)} reach(p, o)
//   LOF(p)          = mean_{o in N(p)} lrd(o) / lrd(p)
//
// Fit points exclude themselves from their own neighborhoods; query points
// are scored against the full fit set.
struct LofFit {
  std::vector<double> points;  // flat n x dim
  std::vector<double> k_distances;
  std::vector<double> lrds;
  std::vector<double> train_scores;
  std::size_t k = 20;
  double threshold = 1.5;
  std::size_t dim = 0;

  std::size_t n_points() const { return k_distances.size(); }
  double score(std::span<const double> q) const;
};

// Throws TooFewPoints unless n > k, InvalidHyperparam for k == 0.
LofFit lof_fit(const FeatureMatrix& x, const LofParams& params = {});

}  // namespace hpcguard

#endif  // HPCGUARD_LOF_HPP_
