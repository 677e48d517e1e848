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
#ifndef HPCGUARD_RISCV_HPP_
#define HPCGUARD_RISCV_HPP_

#include <cstdint>
#include <span>
#include <string_view>

#include "hpcguard/opcodes.hpp"

namespace hpcguard {

// Linear-sweep RV64IMC decode. 16-bit parcels whose low two bits are not
// 0b11 decode as compressed instructions; otherwise four bytes form one
// 32-bit instruction. Base integer (RV64I), the M extension, and the C
// extension map to mnemonics; every other encoding — including the defined
// illegal all-zero parcel, reserved compressed encodings, CSR/FP space, and
// a trailing fragment shorter than its parcel — emits "unknown" and the
// sweep advances. Decoding is total: it never fails, and the parcels
// consumed cover the input exactly.
OpcodeSequence decode_opcodes(std::span<const std::uint8_t> text);

// Single-instruction helpers used by the sweep (exposed for tests).
std::string_view decode_rv32(std::uint32_t inst);        // 32-bit encodings
std::string_view decode_compressed(std::uint16_t inst);  // 16-bit encodings

}  // namespace hpcguard

#endif  // HPCGUARD_RISCV_HPP_
