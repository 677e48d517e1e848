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
#ifndef HPCGUARD_OPCODES_HPP_
#define HPCGUARD_OPCODES_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hpcguard {

// Ordered mnemonic stream extracted from a binary or a disassembly listing.
// Tokens come from the decoder's closed vocabulary plus "unknown".
struct OpcodeSequence {
  std::vector<std::string> tokens;
};

// Extracts the mnemonic column from an objdump-style listing where code
// lines read "address: hexbytes <tab/spaces> mnemonic operands". Blank
// lines and label lines (trimmed line ending in ':') are skipped; byte
// groups are tokens of even length made only of hex digits, and
// continuation lines holding nothing but byte groups are skipped too.
// Throws MalformedListing for an unparsable line, or with line 0 when the
// listing yields no tokens at all.
OpcodeSequence parse_disasm_listing_text(std::string_view text);
OpcodeSequence parse_disasm_listing(const std::string& path);  // + IoError

// Signed feature hashing of opcode n-grams: for every n in n_values and
// every window of n consecutive tokens (joined with single spaces), the
// 64-bit FNV-1a hash h places the n-gram in bucket h mod dim with sign
// taken from bit 63 (set = negative); occurrences accumulate and the vector
// is L2-normalized (an all-zero vector is returned unnormalized).
// Throws EmptySequence for an empty token list and InvalidHyperparam for
// dim == 0, empty n_values, or an n of 0.
std::vector<double> ngram_features(const OpcodeSequence& seq,
                                   const std::vector<std::size_t>& n_values = {
                                       1, 2, 3},
                                   std::size_t dim = 1024);

// Column names ("h0".."h<dim-1>") for assembling hashed rows into a matrix.
std::vector<std::string> ngram_feature_names(std::size_t dim);

}  // namespace hpcguard

#endif  // HPCGUARD_OPCODES_HPP_
