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
#include "hpcguard/elf.hpp"

#include <cstddef>
#include <fstream>

#include "hpcguard/error.hpp"

namespace hpcguard {
namespace {

constexpr std::size_t kHeaderSize = 64;
constexpr std::size_t kSectionEntrySize = 64;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::uint64_t read_u64(std::span<const std::uint8_t> b, std::size_t off) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(b[off + i]) << (8 * i);
  }
  return v;
}

// True iff [off, off+len) fits in the buffer, guarding overflow.
bool in_bounds(std::span<const std::uint8_t> b, std::uint64_t off,
               std::uint64_t len) {
  return off <= b.size() && len <= b.size() - off;
}

// Null-terminated name from the string table slice; throws Truncated when
// the offset is outside the table or the name runs off its end.
std::string read_name(std::span<const std::uint8_t> strtab,
                      std::uint64_t off) {
  if (off > strtab.size()) throw Truncated("section name offset out of range");
  std::string name;
  for (std::size_t i = off; i < strtab.size(); ++i) {
    if (strtab[i] == 0) return name;
    name.push_back(static_cast<char>(strtab[i]));
  }
  throw Truncated("unterminated section name");
}

}  // namespace

ElfImage parse_elf(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw Truncated("elf header needs 64 bytes, got " +
                    std::to_string(bytes.size()));
  }
  if (!(bytes[0] == 0x7f && bytes[1] == 'E' && bytes[2] == 'L' &&
        bytes[3] == 'F')) {
    throw BadMagic();
  }
  if (bytes[4] != 2) throw UnsupportedClass("only ELF64 is supported");
  if (bytes[5] != 1) {
    throw UnsupportedClass("only little-endian ELF is supported");
  }

  ElfImage image;
  image.machine = read_u16(bytes, 18);

  const std::uint64_t shoff = read_u64(bytes, 40);
  const std::uint16_t shentsize = read_u16(bytes, 58);
  const std::uint16_t shnum = read_u16(bytes, 60);
  const std::uint16_t shstrndx = read_u16(bytes, 62);
  if (shnum == 0) throw NoTextSection();
  if (shentsize < kSectionEntrySize) {
    throw Truncated("section header entries too small");
  }
  if (!in_bounds(bytes, shoff,
                 static_cast<std::uint64_t>(shnum) * shentsize)) {
    throw Truncated("section header table out of range");
  }
  if (shstrndx >= shnum) throw Truncated("string table index out of range");

  struct RawSection {
    std::uint32_t name_off;
    std::uint32_t type;
    std::uint64_t flags, vaddr, offset, size;
  };
  std::vector<RawSection> raw;
  raw.reserve(shnum);
  for (std::uint16_t i = 0; i < shnum; ++i) {
    const std::size_t base = static_cast<std::size_t>(shoff) +
                             static_cast<std::size_t>(i) * shentsize;
    raw.push_back(RawSection{read_u32(bytes, base), read_u32(bytes, base + 4),
                             read_u64(bytes, base + 8),
                             read_u64(bytes, base + 16),
                             read_u64(bytes, base + 24),
                             read_u64(bytes, base + 32)});
  }

  const RawSection& str = raw[shstrndx];
  if (str.type != kSectionTypeNobits && !in_bounds(bytes, str.offset, str.size)) {
    throw Truncated("section name table out of range");
  }
  const std::span<const std::uint8_t> strtab =
      bytes.subspan(str.offset, str.size);

  for (const RawSection& s : raw) {
    image.sections.push_back(ElfSection{read_name(strtab, s.name_off), s.type,
                                        s.flags, s.vaddr, s.offset, s.size});
  }

  std::size_t chosen = image.sections.size();
  for (std::size_t i = 0; i < image.sections.size(); ++i) {
    const ElfSection& s = image.sections[i];
    if (s.type == kSectionTypeNobits) continue;
    if (s.name == ".text") {
      chosen = i;
      break;
    }
    if (chosen == image.sections.size() && (s.flags & kSectionFlagExec) != 0) {
      chosen = i;  // fallback; keep scanning in case ".text" appears later
    }
  }
  if (chosen == image.sections.size()) {
    throw NoTextSection();
  }
  const ElfSection& text = image.sections[chosen];
  if (!in_bounds(bytes, text.offset, text.size)) {
    throw Truncated("text section content out of range");
  }
  image.text.assign(bytes.begin() + static_cast<std::ptrdiff_t>(text.offset),
                    bytes.begin() +
                        static_cast<std::ptrdiff_t>(text.offset + text.size));
  image.text_section = chosen;
  return image;
}

ElfImage parse_elf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return parse_elf(bytes);
}

}  // namespace hpcguard
