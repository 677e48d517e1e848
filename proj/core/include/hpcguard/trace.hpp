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
#ifndef HPCGUARD_TRACE_HPP_
#define HPCGUARD_TRACE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpcguard {

// The four monitored counter events. The enumerator order is the canonical
// index order used everywhere a 4-vector maps to events; never reorder.
enum class EventKind : std::uint8_t {
  kBranchInstructions = 0,
  kBranchMisses = 1,
  kLlcLoadMisses = 2,
  kL1dLoadMisses = 3,
};

inline constexpr std::size_t kNumEvents = 4;

// Canonical event name for serialization and CSV headers.
std::string_view event_name(EventKind kind);

// Resolves a perf event name (including aliases such as "branches" or
// "L1-dcache-load-misses") to its EventKind. Returns nullopt for events
// outside the monitored set.
std::optional<EventKind> event_from_name(std::string_view name);

enum class Label : std::uint8_t {
  kBenign = 0,
  kMalign = 1,
};

std::string_view label_name(Label label);
std::optional<Label> label_from_name(std::string_view name);

using Counts = std::array<std::uint64_t, kNumEvents>;

// One timestamped observation of the four monitored event counts. Counts are
// per-interval deltas, not cumulative totals.
struct HpcSample {
  double timestamp_ms = 0.0;
  Counts counts{};
  std::optional<Label> label;
  std::string app_id;

  // Throws InvalidSample unless timestamp_ms >= 0 and
  // branch-misses <= branch-instructions.
  HpcSample(double timestamp_ms, const Counts& counts,
            std::optional<Label> label, std::string app_id);

  bool operator==(const HpcSample&) const = default;
};

// One application execution: an ordered sample stream with a shared label.
struct Run {
  std::string run_id;
  std::string app_id;
  std::optional<Label> label;
  std::vector<HpcSample> samples;

  bool operator==(const Run&) const = default;
};

enum class TraceSource : std::uint8_t {
  kIngested = 0,
  kSynthetic = 1,
};

// Ordered collection of runs with provenance. Construct through make() so the
// invariants (strictly increasing timestamps per run, label agreement, unique
// run ids) hold for every instance.
struct TraceSet {
  std::vector<Run> runs;
  TraceSource source = TraceSource::kIngested;
  std::optional<std::uint64_t> seed;  // set iff source == kSynthetic

  static TraceSet make(std::vector<Run> runs, TraceSource source,
                       std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t total_samples() const;

  bool operator==(const TraceSet&) const = default;
};

}  // namespace hpcguard

#endif  // HPCGUARD_TRACE_HPP_
