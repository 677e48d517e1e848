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
#ifndef HPCGUARD_ELF_HPP_
#define HPCGUARD_ELF_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hpcguard {

inline constexpr std::uint16_t kMachineRiscv = 243;
inline constexpr std::uint64_t kSectionFlagExec = 0x4;  // SHF_EXECINSTR
inline constexpr std::uint32_t kSectionTypeNobits = 8;  // SHT_NOBITS

struct ElfSection {
  std::string name;
  std::uint32_t type = 0;
  std::uint64_t flags = 0;
  std::uint64_t vaddr = 0;
  std::uint64_t offset = 0;
  std::uint64_t size = 0;
};

// 64-bit little-endian ELF image, reduced to what static opcode analysis
// needs: the machine code, the section table, and the executable bytes.
struct ElfImage {
  std::uint16_t machine = 0;
  std::vector<ElfSection> sections;
  std::vector<std::uint8_t> text;
  std::size_t text_section = 0;  // index into sections
};

// Parses an ELF64 little-endian binary. The text section is the one named
// ".text", falling back to the first section carrying the executable flag;
// sections without file content (SHT_NOBITS) are never eligible.
//
// Throws Truncated (< 64 bytes, or any table/name/content range leaving the
// buffer), BadMagic, UnsupportedClass (not ELF64 little-endian), and
// NoTextSection.
ElfImage parse_elf(std::span<const std::uint8_t> bytes);

// Reads the file and parses it; throws IoError on filesystem failure.
ElfImage parse_elf_file(const std::string& path);

}  // namespace hpcguard

#endif  // HPCGUARD_ELF_HPP_
