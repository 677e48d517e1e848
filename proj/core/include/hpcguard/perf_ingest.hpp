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
#ifndef HPCGUARD_PERF_INGEST_HPP_
#define HPCGUARD_PERF_INGEST_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "hpcguard/trace.hpp"

namespace hpcguard {

// Parses `perf stat -x, -I <ms>` interval output into a single-run TraceSet.
//
// Line grammar: `timestamp,count,unit,event[,...]` with the timestamp in
// seconds. Lines starting with '#' and blank lines are skipped. The four
// monitored events must all be present at every timestamp; counts are
// per-interval deltas. `<not counted>` / `<not supported>` in the count
// column raise MissingEventAtTimestamp.
//
// Errors: IoError, MalformedLine, UnknownEvent, NonMonotonicTimestamp,
// MissingEventAtTimestamp, InvalidSample (counter invariant violated).
TraceSet ingest_perf_csv(const std::string& path,
                         const std::string& app_id,
                         std::optional<Label> label);

// Same grammar, parsing an in-memory buffer (used by tests and by the file
// overload).
TraceSet ingest_perf_csv_text(std::string_view text,
                              const std::string& app_id,
                              std::optional<Label> label);

}  // namespace hpcguard

#endif  // HPCGUARD_PERF_INGEST_HPP_
