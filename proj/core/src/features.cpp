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
#include "hpcguard/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

constexpr std::size_t kBi = static_cast<std::size_t>(
    EventKind::kBranchInstructions);
constexpr std::size_t kBm = static_cast<std::size_t>(EventKind::kBranchMisses);

std::vector<std::string> event_columns(const char* suffix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < kNumEvents; ++i) {
    names.push_back(std::string(event_name(static_cast<EventKind>(i))) +
                    suffix);
  }
  return names;
}

void require_runs_non_empty(const TraceSet& ts) {
  for (const Run& run : ts.runs) {
    if (run.samples.empty()) {
      throw EmptyMatrix("run " + run.run_id + " has no samples");
    }
  }
}

}  // namespace

FeatureMatrix sample_features(const TraceSet& ts) {
  require_runs_non_empty(ts);

  std::vector<std::string> names = event_columns("");
  names.push_back("branch_miss_ratio");
  const std::size_t d = names.size();

  std::size_t n = 0;
  for (const Run& run : ts.runs) n += run.samples.size();

  std::vector<double> data;
  data.reserve(n * d);
  std::vector<std::string> row_ids;
  row_ids.reserve(n);
  std::vector<std::optional<Label>> labels;
  labels.reserve(n);

  for (const Run& run : ts.runs) {
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
      const HpcSample& s = run.samples[i];
      for (std::size_t e = 0; e < kNumEvents; ++e) {
        data.push_back(static_cast<double>(s.counts[e]));
      }
      data.push_back(static_cast<double>(s.counts[kBm]) /
                     std::max<double>(static_cast<double>(s.counts[kBi]), 1.0));
      row_ids.push_back(run.app_id + "/" + run.run_id + "#" +
                        std::to_string(i));
      labels.push_back(run.label);
    }
  }
  return FeatureMatrix::make(std::move(data), std::move(names),
                             std::move(row_ids), std::move(labels));
}

FeatureMatrix run_features(const TraceSet& ts) {
  require_runs_non_empty(ts);

  std::vector<std::string> names = event_columns("_total");
  const auto mean_names = event_columns("_per_ms");
  names.insert(names.end(), mean_names.begin(), mean_names.end());
  names.push_back("branch_miss_ratio");

  std::vector<double> data;
  data.reserve(ts.runs.size() * names.size());
  std::vector<std::string> row_ids;
  std::vector<std::optional<Label>> labels;

  for (const Run& run : ts.runs) {
    std::array<double, kNumEvents> totals{};
    for (const HpcSample& s : run.samples) {
      for (std::size_t e = 0; e < kNumEvents; ++e) {
        totals[e] += static_cast<double>(s.counts[e]);
      }
    }
    const double duration_ms =
        std::max(run.samples.back().timestamp_ms, 1.0);
    for (double t : totals) data.push_back(t);
    for (double t : totals) data.push_back(t / duration_ms);
    data.push_back(totals[kBm] / std::max(totals[kBi], 1.0));
    row_ids.push_back(run.app_id + "/" + run.run_id);
    labels.push_back(run.label);
  }
  return FeatureMatrix::make(std::move(data), std::move(names),
                             std::move(row_ids), std::move(labels));
}

Standardizer Standardizer::fit(const FeatureMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < 2) throw EmptyMatrix("standardizer needs n >= 2 rows");

  Standardizer s;
  s.means_.assign(d, 0.0);
  s.stdevs_.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) s.means_[j] += x.at(i, j);
  }
  for (double& m : s.means_) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double delta = x.at(i, j) - s.means_[j];
      s.stdevs_[j] += delta * delta;
    }
  }
  for (double& v : s.stdevs_) {
    v = std::sqrt(v / static_cast<double>(n));
    if (v < 1e-12) v = 1.0;  // degenerate column: center only
  }
  return s;
}

FeatureMatrix Standardizer::transform(const FeatureMatrix& x) const {
  const std::size_t d = means_.size();
  if (x.cols() != d) throw DimensionMismatch(d, x.cols());
  std::vector<double> data;
  data.reserve(x.rows() * d);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      data.push_back((x.at(i, j) - means_[j]) / stdevs_[j]);
    }
  }
  return FeatureMatrix::make(std::move(data), x.feature_names(), x.row_ids(),
                             x.labels());
}

}  // namespace hpcguard
