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
#ifndef HPCGUARD_IFOREST_HPP_
#define HPCGUARD_IFOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hpcguard/matrix.hpp"

namespace hpcguard {

struct IforestParams {
  std::size_t n_trees = 100;
  std::size_t subsample = 256;     // psi; capped at n
  double contamination = 0.1;      // threshold = (1-contamination)-quantile
                                   // of training scores
  std::uint64_t seed = 0;
};

// One tree node. Internal nodes split on `feature` at `split` (left: value <
// split); external nodes have feature = -1 and carry the average-path-length
// adjustment c(size) for the subsample slice that terminated there.
struct IforestNode {
  std::int32_t feature = -1;
  double split = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double leaf_term = 0.0;
};

struct IforestTree {
  std::vector<IforestNode> nodes;  // root at index 0

  // Path length h(x) = depth of the external node reached + its leaf term.
  double path_length(std::span<const double> q) const;
};

// Isolation forest: anomaly score s(x) = 2^(-E[h(x)] / c(psi)), always in
// (0,1); larger = more anomalous. Anomaly iff s > threshold.
struct IforestFit {
  std::vector<IforestTree> trees;
  std::vector<double> train_scores;
  double normalizer = 1.0;  // c(psi_effective)
  double threshold = 0.5;
  std::size_t subsample = 256;
  double contamination = 0.1;
  std::uint64_t seed = 0;
  std::size_t dim = 0;

  double score(std::span<const double> q) const;
};

// Throws EmptyMatrix for n < 2, InvalidHyperparam for degenerate params.
// Deterministic given (data, params).
IforestFit iforest_fit(const FeatureMatrix& x, const IforestParams& params = {});

}  // namespace hpcguard

#endif  // HPCGUARD_IFOREST_HPP_
