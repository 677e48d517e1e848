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
#ifndef HPCGUARD_ERROR_HPP_
#define HPCGUARD_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpcguard {

// Base for all toolkit errors. The CLI maps these to exit code 2; anything
// else escaping is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError final : public Error {
 public:
  explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

class MalformedLine final : public Error {
 public:
  MalformedLine(std::size_t line_no, const std::string& detail)
      : Error("malformed line " + std::to_string(line_no) + ": " + detail),
        line_no(line_no) {}
  std::size_t line_no;
};

class UnknownEvent final : public Error {
 public:
  explicit UnknownEvent(const std::string& name)
      : Error("unknown event: " + name), name(name) {}
  std::string name;
};

class NonMonotonicTimestamp final : public Error {
 public:
  NonMonotonicTimestamp(std::size_t line_no, double t_ms)
      : Error("non-monotonic timestamp at line " + std::to_string(line_no) +
              " (t=" + std::to_string(t_ms) + " ms)") {}
};

class MissingEventAtTimestamp final : public Error {
 public:
  MissingEventAtTimestamp(double t_ms, const std::string& event)
      : Error("missing event '" + event + "' at t=" + std::to_string(t_ms) +
              " ms") {}
};

class SchemaViolation final : public Error {
 public:
  SchemaViolation(std::size_t line_no, const std::string& detail)
      : Error("schema violation at line " + std::to_string(line_no) + ": " +
              detail),
        line_no(line_no) {}
  std::size_t line_no;
};

class InvalidSample final : public Error {
 public:
  explicit InvalidSample(const std::string& detail)
      : Error("invalid sample: " + detail) {}
};

class RejectedDegenerate final : public Error {
 public:
  explicit RejectedDegenerate(const std::string& detail)
      : Error("degenerate input rejected: " + detail) {}
};

class EmptyMatrix final : public Error {
 public:
  explicit EmptyMatrix(const std::string& detail)
      : Error("empty matrix: " + detail) {}
};

class SingleClass final : public Error {
 public:
  explicit SingleClass(const std::string& detail)
      : Error("single class: " + detail) {}
};

class MissingLabels final : public Error {
 public:
  explicit MissingLabels(const std::string& detail)
      : Error("missing labels: " + detail) {}
};

class NoConvergence final : public Error {
 public:
  NoConvergence(const std::string& what, std::size_t iterations)
      : Error(what + ": no convergence after " + std::to_string(iterations) +
              " iterations"),
        iterations(iterations) {}
  std::size_t iterations;
};

class TooFewPoints final : public Error {
 public:
  explicit TooFewPoints(const std::string& detail)
      : Error("too few points: " + detail) {}
};

class SingularCovariance final : public Error {
 public:
  explicit SingularCovariance(const std::string& detail)
      : Error("singular covariance: " + detail) {}
};

class InvalidHyperparam final : public Error {
 public:
  explicit InvalidHyperparam(const std::string& detail)
      : Error("invalid hyperparameter: " + detail) {}
};

class DimensionMismatch final : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: model expects " + std::to_string(expected) +
              " features, got " + std::to_string(got)) {}
};

class BadMagic final : public Error {
 public:
  BadMagic() : Error("not an ELF file (bad magic)") {}
};

class Truncated final : public Error {
 public:
  explicit Truncated(const std::string& detail)
      : Error("truncated ELF: " + detail) {}
};

class NoTextSection final : public Error {
 public:
  NoTextSection() : Error("no .text or executable section found") {}
};

class UnsupportedClass final : public Error {
 public:
  explicit UnsupportedClass(const std::string& detail)
      : Error("unsupported ELF: " + detail) {}
};

class MalformedListing final : public Error {
 public:
  MalformedListing(std::size_t line_no, const std::string& detail)
      : Error("malformed listing at line " + std::to_string(line_no) + ": " +
              detail),
        line_no(line_no) {}
  std::size_t line_no;
};

class EmptySequence final : public Error {
 public:
  explicit EmptySequence(const std::string& detail)
      : Error("empty opcode sequence: " + detail) {}
};

class ConfigError final : public Error {
 public:
  explicit ConfigError(const std::string& detail)
      : Error("config error: " + detail) {}
};

class LabelLeak final : public Error {
 public:
  explicit LabelLeak(const std::string& detail)
      : Error("label leak: " + detail) {}
};

}  // namespace hpcguard

#endif  // HPCGUARD_ERROR_HPP_
