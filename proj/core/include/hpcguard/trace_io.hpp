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
#ifndef HPCGUARD_TRACE_IO_HPP_
#define HPCGUARD_TRACE_IO_HPP_

#include <optional>
#include <string>

#include "hpcguard/trace.hpp"

namespace hpcguard {

// TraceSet JSONL format.
//
// First line: header record {"version", "source", "seed"?, "provenance"?}.
// Remaining lines: one record per sample,
//   {"run_id", "app_id", "label", "t_ms", "counts": [4]}
// with label "benign" / "malign" / null. Samples of a run are consecutive.
//
// `provenance`, when given, must be a serialized JSON object (the CLI embeds
// its effective config there); it is carried in the header only and does not
// participate in TraceSet equality.
//
// read(write(ts)) == ts field-for-field.
void write_traceset(const TraceSet& ts,
                    const std::string& path,
                    const std::optional<std::string>& provenance = {});

std::string traceset_to_jsonl(const TraceSet& ts,
                              const std::optional<std::string>& provenance =
                                  {});

// Errors: IoError on unreadable files, SchemaViolation(line_no) on any
// malformed or out-of-contract record.
TraceSet read_traceset(const std::string& path);

TraceSet traceset_from_jsonl(const std::string& text);

}  // namespace hpcguard

#endif  // HPCGUARD_TRACE_IO_HPP_
