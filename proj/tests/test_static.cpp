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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <doctest.h>

#include "hpcguard/elf.hpp"
#include "hpcguard/error.hpp"
#include "hpcguard/opcodes.hpp"
#include "hpcguard/riscv.hpp"
#include "hpcguard/rng.hpp"

#include "test_util.hpp"

using namespace hpcguard;

namespace {

// Configurable little-endian ELF64 builder for parser edge cases.
struct TestSection {
  std::string name;
  std::uint32_t type = 1;      // SHT_PROGBITS
  std::uint64_t flags = 0x6;   // ALLOC | EXECINSTR
  std::vector<std::uint8_t> content;
};

void put16(std::vector<std::uint8_t>& v, std::size_t off, std::uint16_t x) {
  v[off] = static_cast<std::uint8_t>(x & 0xffu);
  v[off + 1] = static_cast<std::uint8_t>(x >> 8);
}

void put32(std::vector<std::uint8_t>& v, std::size_t off, std::uint32_t x) {
  for (int b = 0; b < 4; ++b) {
    v[off + static_cast<std::size_t>(b)] =
        static_cast<std::uint8_t>((x >> (8 * b)) & 0xffu);
  }
}

void put64(std::vector<std::uint8_t>& v, std::size_t off, std::uint64_t x) {
  for (int b = 0; b < 8; ++b) {
    v[off + static_cast<std::size_t>(b)] =
        static_cast<std::uint8_t>((x >> (8 * b)) & 0xffu);
  }
}

std::vector<std::uint8_t> build_elf(const std::vector<TestSection>& sections) {
  // String table: NUL + each name + ".shstrtab".
  std::vector<std::uint8_t> strtab{0};
  std::vector<std::uint32_t> name_offs;
  for (const TestSection& s : sections) {
    name_offs.push_back(static_cast<std::uint32_t>(strtab.size()));
    strtab.insert(strtab.end(), s.name.begin(), s.name.end());
    strtab.push_back(0);
  }
  const std::uint32_t shstrtab_name =
      static_cast<std::uint32_t>(strtab.size());
  const std::string shstrtab = ".shstrtab";
  strtab.insert(strtab.end(), shstrtab.begin(), shstrtab.end());
  strtab.push_back(0);

  const std::size_t shnum = sections.size() + 2;  // + null + shstrtab
  const std::size_t shoff = 64;
  std::size_t content_off = shoff + shnum * 64;

  std::vector<std::uint8_t> img(content_off, 0);
  img[0] = 0x7f;
  img[1] = 'E';
  img[2] = 'L';
  img[3] = 'F';
  img[4] = 2;
  img[5] = 1;
  img[6] = 1;
  put16(img, 16, 2);
  put16(img, 18, kMachineRiscv);
  put32(img, 20, 1);
  put64(img, 40, shoff);
  put16(img, 52, 64);
  put16(img, 58, 64);
  put16(img, 60, static_cast<std::uint16_t>(shnum));
  put16(img, 62, static_cast<std::uint16_t>(shnum - 1));  // shstrndx

  // Content blobs follow the table; NOBITS sections occupy no file space.
  std::vector<std::uint64_t> offsets;
  for (const TestSection& s : sections) {
    offsets.push_back(img.size());
    if (s.type != kSectionTypeNobits) {
      img.insert(img.end(), s.content.begin(), s.content.end());
    }
  }
  const std::uint64_t strtab_off = img.size();
  img.insert(img.end(), strtab.begin(), strtab.end());

  for (std::size_t i = 0; i < sections.size(); ++i) {
    const std::size_t sh = shoff + (i + 1) * 64;
    put32(img, sh + 0, name_offs[i]);
    put32(img, sh + 4, sections[i].type);
    put64(img, sh + 8, sections[i].flags);
    put64(img, sh + 24, offsets[i]);
    put64(img, sh + 32, sections[i].content.size());
  }
  const std::size_t sh = shoff + (sections.size() + 1) * 64;
  put32(img, sh + 0, shstrtab_name);
  put32(img, sh + 4, 3);  // SHT_STRTAB
  put64(img, sh + 24, strtab_off);
  put64(img, sh + 32, strtab.size());
  return img;
}

const std::vector<std::uint8_t> kAddi{0x13, 0x00, 0x00, 0x00};
const std::vector<std::uint8_t> kEcall{0x73, 0x00, 0x00, 0x00};

}  // namespace

TEST_CASE("elf parser extracts machine, sections, and text") {
  const auto img = build_elf({{".text", 1, 0x6, kAddi}});
  const ElfImage elf = parse_elf(img);
  CHECK(elf.machine == kMachineRiscv);
  REQUIRE(elf.sections.size() == 3);
  CHECK(elf.sections[1].name == ".text");
  CHECK(elf.sections[1].flags == 0x6);
  CHECK(elf.sections[2].name == ".shstrtab");
  CHECK(elf.text == kAddi);
  CHECK(elf.text_section == 1);
}

TEST_CASE("elf text selection prefers .text by name over earlier exec flags") {
  const auto img = build_elf({{".init", 1, 0x6, kEcall},
                              {".text", 1, 0x2, kAddi}});  // .text not exec
  const ElfImage elf = parse_elf(img);
  CHECK(elf.sections[elf.text_section].name == ".text");
  CHECK(elf.text == kAddi);
}

TEST_CASE("elf text selection falls back to the first executable section") {
  const auto img = build_elf({{".data", 1, 0x2, kEcall},
                              {".code", 1, 0x6, kAddi},
                              {".more", 1, 0x6, kEcall}});
  const ElfImage elf = parse_elf(img);
  CHECK(elf.sections[elf.text_section].name == ".code");
  CHECK(elf.text == kAddi);
}

TEST_CASE("elf nobits sections are never eligible as text") {
  const auto img = build_elf({{".text", kSectionTypeNobits, 0x6, kAddi},
                              {".init", 1, 0x6, kEcall}});
  const ElfImage elf = parse_elf(img);
  CHECK(elf.sections[elf.text_section].name == ".init");
  CHECK(elf.text == kEcall);
}

TEST_CASE("elf parser rejects broken images precisely") {
  CHECK_THROWS_AS(parse_elf(std::vector<std::uint8_t>(10, 0)), Truncated);

  auto bad_magic = build_elf({{".text", 1, 0x6, kAddi}});
  bad_magic[0] = 'M';
  CHECK_THROWS_AS(parse_elf(bad_magic), BadMagic);

  auto elf32 = build_elf({{".text", 1, 0x6, kAddi}});
  elf32[4] = 1;  // ELFCLASS32
  CHECK_THROWS_AS(parse_elf(elf32), UnsupportedClass);

  auto big_endian = build_elf({{".text", 1, 0x6, kAddi}});
  big_endian[5] = 2;
  CHECK_THROWS_AS(parse_elf(big_endian), UnsupportedClass);

  // Section table pointing beyond the buffer.
  auto bad_shoff = build_elf({{".text", 1, 0x6, kAddi}});
  put64(bad_shoff, 40, bad_shoff.size() + 1024);
  CHECK_THROWS_AS(parse_elf(bad_shoff), Truncated);

  // Section content range leaving the buffer.
  auto bad_range = build_elf({{".text", 1, 0x6, kAddi}});
  put64(bad_range, 64 + 64 + 32, 1 << 20);  // .text sh_size
  CHECK_THROWS_AS(parse_elf(bad_range), Truncated);

  // No executable or .text section at all.
  const auto no_text = build_elf({{".data", 1, 0x2, kEcall}});
  CHECK_THROWS_AS(parse_elf(no_text), NoTextSection);

  CHECK_THROWS_AS(parse_elf_file("/nonexistent/prog.elf"), IoError);
}

// ---------------------------------------------------------------------------
// RV64IMC decoding
// ---------------------------------------------------------------------------

TEST_CASE("32-bit decoder covers the fixture vocabulary") {
  struct Case {
    std::uint32_t inst;
    const char* mnemonic;
  };
  const Case cases[] = {
      {0x00000013u, "addi"},   {0x12345537u, "lui"},
      {0x00001597u, "auipc"},  {0x00813603u, "ld"},
      {0x00c13823u, "sd"},     {0x00b506b3u, "add"},
      {0x40b50733u, "sub"},    {0x02b507b3u, "mul"},
      {0x02d65833u, "divu"},   {0x02f768bbu, "remw"},
      {0x00b502bbu, "addw"},   {0x01151313u, "slli"},
      {0x40355393u, "srai"},   {0xfff5051bu, "addiw"},
      {0x4025d59bu, "sraiw"},  {0x00b53e33u, "sltu"},
      {0x00b50463u, "beq"},    {0xfed66ee3u, "bltu"},
      {0x010000efu, "jal"},    {0x00008067u, "jalr"},
      {0x0005a503u, "lw"},     {0x0016c603u, "lbu"},
      {0x00a5a223u, "sw"},     {0x0ff0000fu, "fence"},
      {0x00000073u, "ecall"},  {0x00100073u, "ebreak"},
      {0x30009073u, "unknown"},  // CSR space stays outside the vocabulary
      {0x02100053u, "unknown"},  // FP space too
  };
  for (const Case& c : cases) {
    CAPTURE(c.inst);
    CHECK(decode_rv32(c.inst) == c.mnemonic);
  }
}

TEST_CASE("compressed decoder covers the fixture vocabulary") {
  struct Case {
    std::uint16_t inst;
    const char* mnemonic;
  };
  const Case cases[] = {
      {0x0001u, "c.nop"},   {0x0511u, "c.addi"},  {0x2505u, "c.addiw"},
      {0x4785u, "c.li"},    {0x6585u, "c.lui"},   {0x6141u, "c.addi16sp"},
      {0x0028u, "c.addi4spn"}, {0x4110u, "c.lw"}, {0x6594u, "c.ld"},
      {0xc150u, "c.sw"},    {0xe194u, "c.sd"},    {0x852eu, "c.mv"},
      {0x952eu, "c.add"},   {0x8082u, "c.jr"},    {0x9502u, "c.jalr"},
      {0x9002u, "c.ebreak"}, {0x0506u, "c.slli"}, {0x4502u, "c.lwsp"},
      {0x65a2u, "c.ldsp"},  {0xc22au, "c.swsp"},  {0xe02eu, "c.sdsp"},
      {0xa011u, "c.j"},     {0xc501u, "c.beqz"},  {0xe581u, "c.bnez"},
      {0x8109u, "c.srli"},  {0x8585u, "c.srai"},  {0x8a3du, "c.andi"},
      {0x8d0du, "c.sub"},   {0x8d31u, "c.xor"},   {0x8d55u, "c.or"},
      {0x8d79u, "c.and"},   {0x9d0du, "c.subw"},  {0x9d2du, "c.addw"},
      {0x0000u, "unknown"},  // defined illegal instruction
      {0x8000u, "unknown"},  // reserved encoding
      {0x2100u, "unknown"},  // c.fld needs the D extension
  };
  for (const Case& c : cases) {
    CAPTURE(c.inst);
    CHECK(decode_compressed(c.inst) == c.mnemonic);
  }
}

TEST_CASE("linear sweep honors parcel widths and trailing fragments") {
  // 32-bit instruction followed by two compressed parcels.
  const std::vector<std::uint8_t> mixed{0x13, 0x00, 0x00, 0x00,   // addi
                                        0x01, 0x00,               // c.nop
                                        0x11, 0x05};              // c.addi
  CHECK(decode_opcodes(mixed).tokens ==
        std::vector<std::string>{"addi", "c.nop", "c.addi"});

  // Dangling single byte.
  CHECK(decode_opcodes(std::vector<std::uint8_t>{0x13}).tokens ==
        std::vector<std::string>{"unknown"});
  // A 32-bit parcel cut in half.
  CHECK(decode_opcodes(std::vector<std::uint8_t>{0x13, 0x00}).tokens ==
        std::vector<std::string>{"unknown"});
  CHECK(decode_opcodes(std::vector<std::uint8_t>{0x01, 0x00, 0x13}).tokens ==
        std::vector<std::string>{"c.nop", "unknown"});

  CHECK(decode_opcodes({}).tokens.empty());

  // All-zero input decodes to the defined-illegal parcel, one per 2 bytes.
  const std::vector<std::uint8_t> zeros(10, 0);
  CHECK(decode_opcodes(zeros).tokens ==
        std::vector<std::string>(5, "unknown"));
}

TEST_CASE("decoding is total on arbitrary bytes") {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = rng.uniform_int(34);
    std::vector<std::uint8_t> buf(len);
    for (auto& b : buf) b = static_cast<std::uint8_t>(rng.uniform_int(256));
    const OpcodeSequence seq = decode_opcodes(buf);
    // Every parcel consumes 2 or 4 bytes, so the token count is bounded.
    CHECK(seq.tokens.size() <= len / 2 + (len % 2));
    CHECK(seq.tokens.size() >= len / 4 + (len % 4 != 0 ? 1 : 0));
    for (const std::string& t : seq.tokens) CHECK_FALSE(t.empty());
  }
}

TEST_CASE("fixture elf decodes to the committed golden listing") {
  const ElfImage elf =
      parse_elf_file(testutil::require_env("HPCGUARD_FIXTURE_ELF"));
  CHECK(elf.machine == kMachineRiscv);
  CHECK(elf.text.size() == 184);

  const OpcodeSequence decoded = decode_opcodes(elf.text);
  const OpcodeSequence golden =
      parse_disasm_listing(testutil::require_env("HPCGUARD_GOLDEN_LISTING"));
  REQUIRE(decoded.tokens.size() == 64);
  CHECK(decoded.tokens == golden.tokens);
}

// ---------------------------------------------------------------------------
// listing parsing and n-gram hashing
// ---------------------------------------------------------------------------

TEST_CASE("listing parser extracts mnemonics from objdump-style text") {
  const std::string listing =
      "\n"
      "prog.elf:     file format elf64-littleriscv\n"  // banner: label-free,
                                                       // but has a colon
      "0000000000010000 <main>:\n"
      "   10000:\t00000013\taddi x0, x0, 0\n"
      "   10004:\t852e\tc.mv a0, a1\n"
      "   10006:\t12345537\tlui a0, 0x12345\n"
      "   1000a:\t0001 0001\n"  // raw-bytes continuation line
      "   1000e:\t9502\tc.jalr a0\n";
  // The banner line ends in text, not ':' — it must parse as a code line or
  // fail. Here its "address" is "prog.elf"... so feed the body only.
  const std::string body = listing.substr(listing.find("00000000"));
  const OpcodeSequence seq = parse_disasm_listing_text(body);
  CHECK(seq.tokens ==
        std::vector<std::string>{"addi", "c.mv", "lui", "c.jalr"});
}

TEST_CASE("listing parser reports malformed lines by number") {
  try {
    parse_disasm_listing_text("   0:\t0013\taddi\nhello world\n");
    FAIL("expected MalformedListing");
  } catch (const MalformedListing& e) {
    CHECK(e.line_no == 2);
  }

  // Non-hex address.
  CHECK_THROWS_AS(parse_disasm_listing_text("xyz: 0013 addi\n"),
                  MalformedListing);
  // Nothing after the address.
  CHECK_THROWS_AS(parse_disasm_listing_text("10:\n"), MalformedListing);

  // No instructions at all -> line 0.
  try {
    parse_disasm_listing_text("<label>:\n\n");
    FAIL("expected MalformedListing");
  } catch (const MalformedListing& e) {
    CHECK(e.line_no == 0);
  }

  CHECK_THROWS_AS(parse_disasm_listing("/nonexistent/listing.txt"), IoError);
}

TEST_CASE("ngram hashing matches the hand-computed dim-8 oracle") {
  // FNV-1a: "addi" -> bucket 7 (negative sign bit), "c.jr" -> bucket 0
  // (positive), "addi c.jr" -> bucket 0 (positive).
  OpcodeSequence seq;
  seq.tokens = {"addi", "c.jr"};
  const std::vector<double> v = ngram_features(seq, {1, 2}, 8);
  REQUIRE(v.size() == 8);
  const double norm = std::sqrt(5.0);  // raw vector (2, 0, ..., 0, -1)
  CHECK(v[0] == doctest::Approx(2.0 / norm).epsilon(1e-12));
  CHECK(v[7] == doctest::Approx(-1.0 / norm).epsilon(1e-12));
  for (const std::size_t i : {1, 2, 3, 4, 5, 6}) {
    CHECK(v[i] == 0.0);
  }

  // L2 norm is 1 after normalization.
  double sq = 0.0;
  for (const double x : v) sq += x * x;
  CHECK(sq == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ngram hashing at dim 1024 hits the frozen buckets") {
  struct Case {
    const char* token;
    std::size_t bucket;
    double sign;
  };
  const Case cases[] = {
      {"addi", 423, -1.0},
      {"c.jr", 376, 1.0},
      {"lui", 617, 1.0},
      {"push", 413, 1.0},
  };
  for (const Case& c : cases) {
    OpcodeSequence seq;
    seq.tokens = {c.token};
    const std::vector<double> v = ngram_features(seq, {1}, 1024);
    CHECK(v[c.bucket] == doctest::Approx(c.sign).epsilon(1e-12));
  }
}

TEST_CASE("ngram hashing is order-sensitive through bigrams") {
  OpcodeSequence ab, ba;
  ab.tokens = {"addi", "lui"};
  ba.tokens = {"lui", "addi"};
  CHECK(ngram_features(ab, {2}, 64) != ngram_features(ba, {2}, 64));
  // Unigram multisets agree, so 1-gram-only vectors collide.
  CHECK(ngram_features(ab, {1}, 64) == ngram_features(ba, {1}, 64));
}

TEST_CASE("ngram hashing handles cancellation and short sequences") {
  // In one bucket, "addi" (negative) and "lui" (positive) cancel exactly;
  // the all-zero vector is returned unnormalized.
  OpcodeSequence seq;
  seq.tokens = {"addi", "lui"};
  const std::vector<double> v = ngram_features(seq, {1}, 1);
  CHECK(v == std::vector<double>{0.0});

  // n larger than the sequence yields no windows at all.
  OpcodeSequence two;
  two.tokens = {"addi", "lui"};
  const std::vector<double> none = ngram_features(two, {5}, 4);
  CHECK(none == std::vector<double>(4, 0.0));
}

TEST_CASE("ngram hashing validates its inputs") {
  OpcodeSequence empty;
  CHECK_THROWS_AS(ngram_features(empty, {1}, 8), EmptySequence);
  OpcodeSequence one;
  one.tokens = {"addi"};
  CHECK_THROWS_AS(ngram_features(one, {1}, 0), InvalidHyperparam);
  CHECK_THROWS_AS(ngram_features(one, {}, 8), InvalidHyperparam);
  CHECK_THROWS_AS(ngram_features(one, {0}, 8), InvalidHyperparam);

  CHECK(ngram_feature_names(3) ==
        std::vector<std::string>{"h0", "h1", "h2"});
}
