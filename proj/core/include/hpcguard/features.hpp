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
#ifndef HPCGUARD_FEATURES_HPP_
#define HPCGUARD_FEATURES_HPP_

#include <vector>

#include "hpcguard/matrix.hpp"
#include "hpcguard/trace.hpp"

namespace hpcguard {

// Per-sample instance view (supervised path): one row per HpcSample with
// 5 columns — the 4 raw event counts plus
// branch_miss_ratio = misses / max(instructions, 1).
// Row ids are "<app_id>/<run_id>#<sample index>". Requires non-empty runs.
FeatureMatrix sample_features(const TraceSet& ts);

// Per-run instance view (unsupervised path): one row per run with 9 columns
// — per-event totals (4), per-event per-millisecond means (4, totals divided
// by max(last timestamp, 1)), and the miss ratio over totals.
// Row ids are "<app_id>/<run_id>". Requires non-empty runs.
FeatureMatrix run_features(const TraceSet& ts);

// Column-wise z-scoring with population (1/n) standard deviation. Columns
// with stdev < 1e-12 are passed through centered with divisor 1.
class Standardizer {
 public:
  // Throws EmptyMatrix for n < 2.
  static Standardizer fit(const FeatureMatrix& x);

  FeatureMatrix transform(const FeatureMatrix& x) const;

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& stdevs() const { return stdevs_; }

 private:
  std::vector<double> means_;
  std::vector<double> stdevs_;
};

}  // namespace hpcguard

#endif  // HPCGUARD_FEATURES_HPP_
