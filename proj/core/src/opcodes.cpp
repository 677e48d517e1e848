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
#include "hpcguard/opcodes.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hpcguard/error.hpp"
#include "hpcguard/rng.hpp"

namespace hpcguard {
namespace {

bool is_hex_digit(char c) {
  return std::isxdigit(static_cast<unsigned char>(c)) != 0;
}

bool all_hex(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!is_hex_digit(c)) return false;
  }
  return true;
}

// Byte groups in the raw-bytes column: even-length runs of hex digits
// ("55", "00000013"). Mnemonics never qualify — they either contain a
// non-hex letter or have odd length ("add", "c.jr", "push").
bool is_byte_group(std::string_view s) {
  return s.size() % 2 == 0 && all_hex(s);
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

OpcodeSequence parse_disasm_listing_text(std::string_view text) {
  OpcodeSequence seq;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                      : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.back() == ':') continue;  // label / section heading

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw MalformedListing(line_no, "expected 'address: ...'");
    }
    if (!all_hex(trim(line.substr(0, colon)))) {
      throw MalformedListing(line_no, "address is not hexadecimal");
    }
    const auto fields = split_ws(line.substr(colon + 1));
    std::size_t i = 0;
    while (i < fields.size() && is_byte_group(fields[i])) ++i;
    if (i == fields.size()) {
      if (i == 0) throw MalformedListing(line_no, "no content after address");
      continue;  // raw-bytes continuation line
    }
    seq.tokens.emplace_back(fields[i]);
  }
  if (seq.tokens.empty()) {
    throw MalformedListing(0, "listing contains no instruction lines");
  }
  return seq;
}

OpcodeSequence parse_disasm_listing(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_disasm_listing_text(buf.str());
}

std::vector<double> ngram_features(const OpcodeSequence& seq,
                                   const std::vector<std::size_t>& n_values,
                                   std::size_t dim) {
  if (seq.tokens.empty()) throw EmptySequence("no opcode tokens");
  if (dim == 0) throw InvalidHyperparam("hash dimension must be positive");
  if (n_values.empty()) throw InvalidHyperparam("need at least one n-gram size");
  for (const std::size_t n : n_values) {
    if (n == 0) throw InvalidHyperparam("n-gram size must be positive");
  }

  std::vector<double> vec(dim, 0.0);
  std::string key;
  for (const std::size_t n : n_values) {
    if (n > seq.tokens.size()) continue;
    for (std::size_t start = 0; start + n <= seq.tokens.size(); ++start) {
      key.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) key.push_back(' ');
        key += seq.tokens[start + j];
      }
      const std::uint64_t h = fnv1a64(key);
      const std::size_t bucket = static_cast<std::size_t>(h % dim);
      vec[bucket] += (h >> 63) ? -1.0 : 1.0;
    }
  }

  double norm_sq = 0.0;
  for (const double v : vec) norm_sq += v * v;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : vec) v *= inv;
  }
  return vec;
}

std::vector<std::string> ngram_feature_names(std::size_t dim) {
  std::vector<std::string> names;
  names.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) names.push_back("h" + std::to_string(i));
  return names;
}

}  // namespace hpcguard
