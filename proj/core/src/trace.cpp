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
#include "hpcguard/trace.hpp"

#include <unordered_set>
#include <utility>

#include "hpcguard/error.hpp"

namespace hpcguard {

std::string_view event_name(EventKind kind) {
  switch (kind) {
    case EventKind::kBranchInstructions:
      return "branch-instructions";
    case EventKind::kBranchMisses:
      return "branch-misses";
    case EventKind::kLlcLoadMisses:
      return "llc-load-misses";
    case EventKind::kL1dLoadMisses:
      return "l1d-load-misses";
  }
  return "?";
}

std::optional<EventKind> event_from_name(std::string_view name) {
  // perf spells some of these with capitals; accept both the perf spelling
  // and the canonical lowercase form.
  if (name == "branch-instructions" || name == "branches") {
    return EventKind::kBranchInstructions;
  }
  if (name == "branch-misses") {
    return EventKind::kBranchMisses;
  }
  if (name == "LLC-load-misses" || name == "llc-load-misses") {
    return EventKind::kLlcLoadMisses;
  }
  if (name == "L1-dcache-load-misses" || name == "l1d-load-misses") {
    return EventKind::kL1dLoadMisses;
  }
  return std::nullopt;
}

std::string_view label_name(Label label) {
  return label == Label::kBenign ? "benign" : "malign";
}

std::optional<Label> label_from_name(std::string_view name) {
  if (name == "benign") return Label::kBenign;
  if (name == "malign") return Label::kMalign;
  return std::nullopt;
}

HpcSample::HpcSample(double timestamp_ms, const Counts& counts,
                     std::optional<Label> label, std::string app_id)
    : timestamp_ms(timestamp_ms),
      counts(counts),
      label(label),
      app_id(std::move(app_id)) {
  if (!(timestamp_ms >= 0.0)) {
    throw InvalidSample("timestamp must be non-negative, got " +
                        std::to_string(timestamp_ms));
  }
  const auto bi = counts[static_cast<std::size_t>(EventKind::kBranchInstructions)];
  const auto bm = counts[static_cast<std::size_t>(EventKind::kBranchMisses)];
  if (bm > bi) {
    throw InvalidSample("branch-misses (" + std::to_string(bm) +
                        ") exceed branch-instructions (" + std::to_string(bi) +
                        ")");
  }
}

TraceSet TraceSet::make(std::vector<Run> runs, TraceSource source,
                        std::optional<std::uint64_t> seed) {
  std::unordered_set<std::string> seen_ids;
  for (const auto& run : runs) {
    if (!seen_ids.insert(run.run_id).second) {
      throw InvalidSample("duplicate run_id '" + run.run_id + "'");
    }
    double prev = -1.0;
    for (const auto& sample : run.samples) {
      if (sample.timestamp_ms <= prev) {
        throw InvalidSample("timestamps not strictly increasing in run '" +
                            run.run_id + "'");
      }
      prev = sample.timestamp_ms;
      if (sample.label != run.label) {
        throw InvalidSample("sample label differs from run label in run '" +
                            run.run_id + "'");
      }
    }
  }
  TraceSet ts;
  ts.runs = std::move(runs);
  ts.source = source;
  ts.seed = source == TraceSource::kSynthetic ? seed : std::nullopt;
  return ts;
}

std::size_t TraceSet::total_samples() const {
  std::size_t n = 0;
  for (const auto& run : runs) n += run.samples.size();
  return n;
}

}  // namespace hpcguard
