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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "hpcguard/error.hpp"
#include "hpcguard/perf_ingest.hpp"
#include "hpcguard/trace.hpp"
#include "hpcguard/trace_io.hpp"

using namespace hpcguard;

namespace {

TraceSet small_set() {
  std::vector<Run> runs;
  runs.push_back(Run{"r0", "appA", Label::kBenign,
                     {HpcSample(1.0, {100, 3, 7, 20}, Label::kBenign, "appA"),
                      HpcSample(2.5, {90, 2, 5, 18}, Label::kBenign,
                                "appA")}});
  runs.push_back(Run{"r1", "appB", std::nullopt,
                     {HpcSample(0.5, {40, 0, 1, 2}, std::nullopt, "appB")}});
  return TraceSet::make(std::move(runs), TraceSource::kSynthetic, 99);
}

// Replaces line `index` (0-based) of a JSONL document.
std::string with_line(const std::string& text, std::size_t index,
                      const std::string& replacement) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  lines.at(index) = replacement;
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

TEST_CASE("jsonl round trip preserves every field") {
  const TraceSet ts = small_set();
  const std::string text = traceset_to_jsonl(ts);
  const TraceSet back = traceset_from_jsonl(text);
  CHECK(back == ts);
  CHECK(back.seed == 99);
  CHECK(back.source == TraceSource::kSynthetic);
}

TEST_CASE("serialization is deterministic") {
  CHECK(traceset_to_jsonl(small_set()) == traceset_to_jsonl(small_set()));
}

TEST_CASE("provenance rides in the header without affecting equality") {
  const TraceSet ts = small_set();
  const std::string text = traceset_to_jsonl(ts, R"({"tool":"test"})");
  const std::string first = text.substr(0, text.find('\n'));
  CHECK(first.find("\"provenance\"") != std::string::npos);
  CHECK(first.find("\"tool\":\"test\"") != std::string::npos);
  CHECK(traceset_from_jsonl(text) == ts);

  CHECK_THROWS_AS(traceset_to_jsonl(ts, "not json"), IoError);
  CHECK_THROWS_AS(traceset_to_jsonl(ts, "[1,2]"), IoError);  // not an object
}

TEST_CASE("schema violations carry the offending line number") {
  const std::string good = traceset_to_jsonl(small_set());

  CHECK_THROWS_AS(traceset_from_jsonl(""), SchemaViolation);

  try {
    traceset_from_jsonl(with_line(good, 1, "{broken"));
    FAIL("expected SchemaViolation");
  } catch (const SchemaViolation& e) {
    CHECK(e.line_no == 2);
  }

  // Header must announce version and source.
  CHECK_THROWS_AS(traceset_from_jsonl(with_line(good, 0, R"({"source":"x"})")),
                  SchemaViolation);

  // Sample records must keep the 4-counter layout and the invariants.
  const std::string bad_counts =
      R"({"run_id":"r0","app_id":"appA","label":"benign","t_ms":3.0,"counts":[1,2]})";
  CHECK_THROWS_AS(traceset_from_jsonl(with_line(good, 2, bad_counts)),
                  SchemaViolation);

  const std::string bad_label =
      R"({"run_id":"r0","app_id":"appA","label":"weird","t_ms":3.0,"counts":[9,1,1,1]})";
  CHECK_THROWS_AS(traceset_from_jsonl(with_line(good, 2, bad_label)),
                  SchemaViolation);

  // Counter invariant (misses > instructions) surfaces as a schema error
  // with the line that carried the record.
  const std::string bad_invariant =
      R"({"run_id":"r0","app_id":"appA","label":"benign","t_ms":3.0,"counts":[1,2,0,0]})";
  try {
    traceset_from_jsonl(with_line(good, 2, bad_invariant));
    FAIL("expected SchemaViolation");
  } catch (const SchemaViolation& e) {
    CHECK(e.line_no == 3);
  }

  // Non-increasing timestamp within a run.
  const std::string stale =
      R"({"run_id":"r0","app_id":"appA","label":"benign","t_ms":1.0,"counts":[9,1,1,1]})";
  CHECK_THROWS_AS(traceset_from_jsonl(with_line(good, 2, stale)),
                  SchemaViolation);

  // A run id may not reappear after another run started.
  const std::string reopened =
      R"({"run_id":"r0","app_id":"appA","label":"benign","t_ms":9.0,"counts":[9,1,1,1]})";
  CHECK_THROWS_AS(traceset_from_jsonl(good + reopened + "\n"),
                  SchemaViolation);
}

TEST_CASE("file io reports unreadable paths") {
  CHECK_THROWS_AS(read_traceset("/nonexistent/trace.jsonl"), IoError);
}

// ---------------------------------------------------------------------------
// perf interval-output ingestion
// ---------------------------------------------------------------------------

namespace {

const char kPerfText[] =
    "# started on Thu Aug 13 10:00:00 2026\n"
    "\n"
    "0.100,52000,,branches\n"
    "0.100,480,,branch-misses\n"
    "0.100,95,,LLC-load-misses\n"
    "0.100,1200,,L1-dcache-load-misses\n"
    "0.200,51500,,branches\n"
    "0.200,455,,branch-misses\n"
    "0.200,88,,LLC-load-misses\n"
    "0.200,1150,,L1-dcache-load-misses\n";

}  // namespace

TEST_CASE("perf csv ingestion maps events and converts seconds to ms") {
  const TraceSet ts = ingest_perf_csv_text(kPerfText, "bzip2", Label::kBenign);
  CHECK(ts.source == TraceSource::kIngested);
  CHECK_FALSE(ts.seed.has_value());
  REQUIRE(ts.runs.size() == 1);
  const Run& run = ts.runs[0];
  CHECK(run.app_id == "bzip2");
  CHECK(run.label == Label::kBenign);
  REQUIRE(run.samples.size() == 2);

  CHECK(run.samples[0].timestamp_ms == doctest::Approx(100.0));
  CHECK(run.samples[1].timestamp_ms == doctest::Approx(200.0));
  CHECK(run.samples[0].counts ==
        Counts{52000, 480, 95, 1200});
  CHECK(run.samples[1].counts ==
        Counts{51500, 455, 88, 1150});
}

TEST_CASE("perf csv ingestion keeps the run unlabeled when asked") {
  const TraceSet ts = ingest_perf_csv_text(kPerfText, "bzip2", std::nullopt);
  CHECK_FALSE(ts.runs.at(0).label.has_value());
  CHECK_FALSE(ts.runs.at(0).samples.at(0).label.has_value());
}

TEST_CASE("perf csv ingestion rejects malformed input precisely") {
  // Unknown event name.
  CHECK_THROWS_AS(ingest_perf_csv_text("0.1,5,,cycles\n", "a", std::nullopt),
                  UnknownEvent);

  // Too few fields.
  try {
    ingest_perf_csv_text("0.1,5\n", "a", std::nullopt);
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line_no == 1);
  }

  // Unparsable count.
  CHECK_THROWS_AS(
      ingest_perf_csv_text("0.1,xyz,,branches\n", "a", std::nullopt),
      MalformedLine);

  // A counter the kernel did not schedule.
  const std::string not_counted =
      "0.1,52000,,branches\n"
      "0.1,<not counted>,,branch-misses\n"
      "0.1,95,,LLC-load-misses\n"
      "0.1,1200,,L1-dcache-load-misses\n";
  CHECK_THROWS_AS(ingest_perf_csv_text(not_counted, "a", std::nullopt),
                  MissingEventAtTimestamp);

  // A timestamp group missing one of the four events.
  const std::string incomplete =
      "0.1,52000,,branches\n"
      "0.1,480,,branch-misses\n"
      "0.1,95,,LLC-load-misses\n";
  CHECK_THROWS_AS(ingest_perf_csv_text(incomplete, "a", std::nullopt),
                  MissingEventAtTimestamp);

  // Timestamps must advance.
  const std::string backwards = std::string(kPerfText) +
                                "0.150,100,,branches\n";
  CHECK_THROWS_AS(ingest_perf_csv_text(backwards, "a", std::nullopt),
                  NonMonotonicTimestamp);

  // Counter invariant: more branch misses than branches.
  const std::string impossible =
      "0.1,100,,branches\n"
      "0.1,500,,branch-misses\n"
      "0.1,95,,LLC-load-misses\n"
      "0.1,1200,,L1-dcache-load-misses\n";
  CHECK_THROWS_AS(ingest_perf_csv_text(impossible, "a", std::nullopt),
                  InvalidSample);

  CHECK_THROWS_AS(ingest_perf_csv("/nonexistent/perf.csv", "a", std::nullopt),
                  IoError);
}
