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
#include "hpcguard/perf_ingest.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

struct IntervalGroup {
  double t_ms = 0.0;
  std::array<bool, kNumEvents> seen{};
  Counts counts{};
};

void close_group(const IntervalGroup& group,
                 const std::string& app_id,
                 std::optional<Label> label,
                 std::vector<HpcSample>& out) {
  for (std::size_t i = 0; i < kNumEvents; ++i) {
    if (!group.seen[i]) {
      throw MissingEventAtTimestamp(
          group.t_ms, std::string(event_name(static_cast<EventKind>(i))));
    }
  }
  out.emplace_back(group.t_ms, group.counts, label, app_id);
}

}  // namespace

TraceSet ingest_perf_csv_text(std::string_view text,
                              const std::string& app_id,
                              std::optional<Label> label) {
  std::vector<HpcSample> samples;
  std::optional<IntervalGroup> group;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = (nl == std::string_view::npos)
        ? text.substr(pos)
        : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_csv(line);
    if (fields.size() < 4) throw MalformedLine(line_no, "expected timestamp,count,unit,event");

    double t_s = 0.0;
    {
      const auto* begin = fields[0].data();
      const auto* end = begin + fields[0].size();
      const auto res = std::from_chars(begin, end, t_s);
      if (res.ec != std::errc() || res.ptr != end || t_s < 0.0) {
        throw MalformedLine(line_no, "bad timestamp");
      }
    }
    const double t_ms = t_s * 1000.0;

    const std::optional<EventKind> event = event_from_name(fields[3]);
    if (!event.has_value()) throw UnknownEvent(std::string(fields[3]));
    const std::size_t idx = static_cast<std::size_t>(*event);

    if (fields[1] == "<not counted>" || fields[1] == "<not supported>") {
      throw MissingEventAtTimestamp(t_ms, std::string(fields[3]));
    }
    std::uint64_t count = 0;
    {
      const auto* begin = fields[1].data();
      const auto* end = begin + fields[1].size();
      const auto res = std::from_chars(begin, end, count);
      if (res.ec != std::errc() || res.ptr != end) {
        throw MalformedLine(line_no, "bad count");
      }
    }

    if (group && group->t_ms == t_ms) {
      if (group->seen[idx]) {
        throw MalformedLine(line_no, "duplicate event at timestamp");
      }
      group->seen[idx] = true;
      group->counts[idx] = count;
      continue;
    }
    if (group) {
      close_group(*group, app_id, label, samples);
      if (t_ms <= group->t_ms) throw NonMonotonicTimestamp(line_no, t_ms);
    }
    group.emplace();
    group->t_ms = t_ms;
    group->seen[idx] = true;
    group->counts[idx] = count;
  }
  if (group) close_group(*group, app_id, label, samples);

  std::vector<Run> runs;
  runs.push_back(Run{app_id + "-r0", app_id, label, std::move(samples)});
  return TraceSet::make(std::move(runs), TraceSource::kIngested, std::nullopt);
}

TraceSet ingest_perf_csv(const std::string& path,
                         const std::string& app_id,
                         std::optional<Label> label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return ingest_perf_csv_text(buffer.str(), app_id, label);
}

}  // namespace hpcguard
