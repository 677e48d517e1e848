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
#include "hpcguard/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "hpcguard/error.hpp"
#include "hpcguard/version.hpp"

namespace hpcguard {

namespace {

using nlohmann::json;

const char* source_name(TraceSource source) {
  return source == TraceSource::kIngested ? "ingested" : "synthetic";
}

}  // namespace

std::string traceset_to_jsonl(const TraceSet& ts,
                              const std::optional<std::string>& provenance) {
  json header;
  header["version"] = kVersion;
  header["source"] = source_name(ts.source);
  if (ts.seed.has_value()) header["seed"] = *ts.seed;
  if (provenance.has_value()) {
    json prov = json::parse(*provenance, nullptr, false);
    if (prov.is_discarded() || !prov.is_object()) {
      throw IoError("provenance must be a JSON object");
    }
    header["provenance"] = std::move(prov);
  }

  std::string out = header.dump();
  out.push_back('\n');
  for (const Run& run : ts.runs) {
    for (const HpcSample& sample : run.samples) {
      json rec;
      rec["run_id"] = run.run_id;
      rec["app_id"] = run.app_id;
      rec["label"] = run.label.has_value() ? json(label_name(*run.label))
                                           : json(nullptr);
      rec["t_ms"] = sample.timestamp_ms;
      rec["counts"] = sample.counts;
      out += rec.dump();
      out.push_back('\n');
    }
  }
  return out;
}

void write_traceset(const TraceSet& ts,
                    const std::string& path,
                    const std::optional<std::string>& provenance) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << traceset_to_jsonl(ts, provenance);
  if (!out) throw IoError("write failure on " + path);
}

TraceSet traceset_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw SchemaViolation(1, "missing header record");
  ++line_no;
  const json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object() ||
      !header.contains("version") || !header.contains("source") ||
      !header["source"].is_string()) {
    throw SchemaViolation(line_no, "bad header record");
  }
  const std::string source_str = header["source"].get<std::string>();
  TraceSource source;
  if (source_str == "ingested") {
    source = TraceSource::kIngested;
  } else if (source_str == "synthetic") {
    source = TraceSource::kSynthetic;
  } else {
    throw SchemaViolation(line_no, "unknown source: " + source_str);
  }
  std::optional<std::uint64_t> seed;
  if (header.contains("seed")) {
    if (!header["seed"].is_number_unsigned()) {
      throw SchemaViolation(line_no, "seed must be a non-negative integer");
    }
    seed = header["seed"].get<std::uint64_t>();
  }

  std::vector<Run> runs;
  std::unordered_set<std::string> closed_run_ids;
  Run current;
  bool run_open = false;

  auto close_run = [&]() {
    closed_run_ids.insert(current.run_id);
    runs.push_back(std::move(current));
    current = Run{};
    run_open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("run_id") ||
        !rec.contains("app_id") || !rec.contains("label") ||
        !rec.contains("t_ms") || !rec.contains("counts") ||
        !rec["run_id"].is_string() || !rec["app_id"].is_string() ||
        !rec["t_ms"].is_number() || !rec["counts"].is_array() ||
        rec["counts"].size() != kNumEvents) {
      throw SchemaViolation(line_no, "bad sample record");
    }
    std::optional<Label> label;
    if (rec["label"].is_string()) {
      const std::string name = rec["label"].get<std::string>();
      if (name == "benign") {
        label = Label::kBenign;
      } else if (name == "malign") {
        label = Label::kMalign;
      } else {
        throw SchemaViolation(line_no, "unknown label: " + name);
      }
    } else if (!rec["label"].is_null()) {
      throw SchemaViolation(line_no, "label must be a string or null");
    }

    Counts counts{};
    for (std::size_t i = 0; i < kNumEvents; ++i) {
      if (!rec["counts"][i].is_number_unsigned()) {
        throw SchemaViolation(line_no, "counts must be non-negative integers");
      }
      counts[i] = rec["counts"][i].get<std::uint64_t>();
    }
    const double t_ms = rec["t_ms"].get<double>();
    const std::string run_id = rec["run_id"].get<std::string>();
    const std::string app_id = rec["app_id"].get<std::string>();

    if (run_open && current.run_id != run_id) close_run();
    if (!run_open) {
      if (closed_run_ids.count(run_id) != 0) {
        // A run's samples must be consecutive; reopening is malformed.
        throw SchemaViolation(line_no, "run reopened: " + run_id);
      }
      current.run_id = run_id;
      current.app_id = app_id;
      current.label = label;
      run_open = true;
    } else if (current.app_id != app_id || current.label != label) {
      throw SchemaViolation(line_no, "run metadata changed mid-run");
    }
    if (!current.samples.empty() &&
        t_ms <= current.samples.back().timestamp_ms) {
      throw SchemaViolation(line_no, "timestamps must strictly increase");
    }
    try {
      current.samples.emplace_back(t_ms, counts, label, app_id);
    } catch (const InvalidSample& e) {
      throw SchemaViolation(line_no, e.what());
    }
  }
  if (run_open) close_run();

  return TraceSet::make(std::move(runs), source, seed);
}

TraceSet read_traceset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return traceset_from_jsonl(buffer.str());
}

}  // namespace hpcguard
