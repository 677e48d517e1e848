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

// Emits the RISC-V ELF test fixture consumed by the unit and acceptance
// suites. The .text payload walks the whole decoder vocabulary (28 32-bit
// instructions followed by 36 compressed parcels, "unknown" cases included)
// and matches tests/fixtures/golden_listing.txt instruction for
// instruction.
//
// Usage: make_fixture <output.elf>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace {

struct Encoding {
  std::uint32_t bits;
  int width;  // 2 or 4 bytes
};

// Keep in sync with tests/fixtures/golden_listing.txt.
constexpr Encoding kProgram[] = {
    {0x00000013u, 4},  // addi
    {0x12345537u, 4},  // lui
    {0x00001597u, 4},  // auipc
    {0x00813603u, 4},  // ld
    {0x00c13823u, 4},  // sd
    {0x00b506b3u, 4},  // add
    {0x40b50733u, 4},  // sub
    {0x02b507b3u, 4},  // mul
    {0x02d65833u, 4},  // divu
    {0x02f768bbu, 4},  // remw
    {0x00b502bbu, 4},  // addw
    {0x01151313u, 4},  // slli
    {0x40355393u, 4},  // srai
    {0xfff5051bu, 4},  // addiw
    {0x4025d59bu, 4},  // sraiw
    {0x00b53e33u, 4},  // sltu
    {0x00b50463u, 4},  // beq
    {0xfed66ee3u, 4},  // bltu
    {0x010000efu, 4},  // jal
    {0x00008067u, 4},  // jalr
    {0x0005a503u, 4},  // lw
    {0x0016c603u, 4},  // lbu
    {0x00a5a223u, 4},  // sw
    {0x0ff0000fu, 4},  // fence
    {0x00000073u, 4},  // ecall
    {0x00100073u, 4},  // ebreak
    {0x30009073u, 4},  // unknown (CSR space)
    {0x02100053u, 4},  // unknown (FP space)
    {0x0001u, 2},      // c.nop
    {0x0511u, 2},      // c.addi
    {0x2505u, 2},      // c.addiw
    {0x4785u, 2},      // c.li
    {0x6585u, 2},      // c.lui
    {0x6141u, 2},      // c.addi16sp
    {0x0028u, 2},      // c.addi4spn
    {0x4110u, 2},      // c.lw
    {0x6594u, 2},      // c.ld
    {0xc150u, 2},      // c.sw
    {0xe194u, 2},      // c.sd
    {0x852eu, 2},      // c.mv
    {0x952eu, 2},      // c.add
    {0x8082u, 2},      // c.jr
    {0x9502u, 2},      // c.jalr
    {0x9002u, 2},      // c.ebreak
    {0x0506u, 2},      // c.slli
    {0x4502u, 2},      // c.lwsp
    {0x65a2u, 2},      // c.ldsp
    {0xc22au, 2},      // c.swsp
    {0xe02eu, 2},      // c.sdsp
    {0xa011u, 2},      // c.j
    {0xc501u, 2},      // c.beqz
    {0xe581u, 2},      // c.bnez
    {0x8109u, 2},      // c.srli
    {0x8585u, 2},      // c.srai
    {0x8a3du, 2},      // c.andi
    {0x8d0du, 2},      // c.sub
    {0x8d31u, 2},      // c.xor
    {0x8d55u, 2},      // c.or
    {0x8d79u, 2},      // c.and
    {0x9d0du, 2},      // c.subw
    {0x9d2du, 2},      // c.addw
    {0x0000u, 2},      // unknown (defined illegal)
    {0x8000u, 2},      // unknown (reserved)
    {0x2100u, 2},      // unknown (c.fld, D extension)
};

std::vector<std::uint8_t> text_bytes() {
  std::vector<std::uint8_t> out;
  for (const Encoding& e : kProgram) {
    for (int b = 0; b < e.width; ++b) {
      out.push_back(static_cast<std::uint8_t>((e.bits >> (8 * b)) & 0xffu));
    }
  }
  return out;
}

void put_u16(std::vector<std::uint8_t>& v, std::size_t off, std::uint16_t x) {
  v[off] = static_cast<std::uint8_t>(x & 0xffu);
  v[off + 1] = static_cast<std::uint8_t>(x >> 8);
}

void put_u32(std::vector<std::uint8_t>& v, std::size_t off, std::uint32_t x) {
  for (int b = 0; b < 4; ++b) {
    v[off + static_cast<std::size_t>(b)] =
        static_cast<std::uint8_t>((x >> (8 * b)) & 0xffu);
  }
}

void put_u64(std::vector<std::uint8_t>& v, std::size_t off, std::uint64_t x) {
  for (int b = 0; b < 8; ++b) {
    v[off + static_cast<std::size_t>(b)] =
        static_cast<std::uint8_t>((x >> (8 * b)) & 0xffu);
  }
}

// Minimal ELF64 little-endian RISC-V image: null section, .text, .shstrtab.
std::vector<std::uint8_t> build_elf() {
  const std::vector<std::uint8_t> text = text_bytes();
  const char strtab[] = "\0.text\0.shstrtab";  // offsets 0, 1, 7
  const std::size_t strtab_size = sizeof(strtab);  // includes final NUL

  const std::size_t ehsize = 64;
  const std::size_t shentsize = 64;
  const std::size_t shoff = ehsize;
  const std::size_t text_off = shoff + 3 * shentsize;
  const std::size_t strtab_off = text_off + text.size();

  std::vector<std::uint8_t> img(strtab_off + strtab_size, 0);

  // e_ident
  img[0] = 0x7f;
  img[1] = 'E';
  img[2] = 'L';
  img[3] = 'F';
  img[4] = 2;  // ELFCLASS64
  img[5] = 1;  // ELFDATA2LSB
  img[6] = 1;  // EV_CURRENT
  put_u16(img, 16, 2);     // e_type = ET_EXEC
  put_u16(img, 18, 243);   // e_machine = EM_RISCV
  put_u32(img, 20, 1);     // e_version
  put_u64(img, 24, 0x10000);  // e_entry
  put_u64(img, 32, 0);     // e_phoff
  put_u64(img, 40, shoff); // e_shoff
  put_u32(img, 48, 0);     // e_flags
  put_u16(img, 52, static_cast<std::uint16_t>(ehsize));
  put_u16(img, 54, 0);     // e_phentsize
  put_u16(img, 56, 0);     // e_phnum
  put_u16(img, 58, static_cast<std::uint16_t>(shentsize));
  put_u16(img, 60, 3);     // e_shnum
  put_u16(img, 62, 2);     // e_shstrndx

  // Section 0 stays all-zero. Section 1: .text
  std::size_t sh = shoff + shentsize;
  put_u32(img, sh + 0, 1);    // sh_name -> ".text"
  put_u32(img, sh + 4, 1);    // sh_type = SHT_PROGBITS
  put_u64(img, sh + 8, 0x6);  // sh_flags = ALLOC | EXECINSTR
  put_u64(img, sh + 16, 0x10000);  // sh_addr
  put_u64(img, sh + 24, text_off);
  put_u64(img, sh + 32, text.size());
  put_u32(img, sh + 40, 0);  // sh_link
  put_u32(img, sh + 44, 0);  // sh_info
  put_u64(img, sh + 48, 2);  // sh_addralign
  put_u64(img, sh + 56, 0);  // sh_entsize

  // Section 2: .shstrtab
  sh = shoff + 2 * shentsize;
  put_u32(img, sh + 0, 7);  // sh_name -> ".shstrtab"
  put_u32(img, sh + 4, 3);  // sh_type = SHT_STRTAB
  put_u64(img, sh + 24, strtab_off);
  put_u64(img, sh + 32, strtab_size);
  put_u64(img, sh + 48, 1);  // sh_addralign

  std::memcpy(img.data() + text_off, text.data(), text.size());
  std::memcpy(img.data() + strtab_off, strtab, strtab_size);
  return img;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output.elf>\n", argv[0]);
    return 1;
  }
  const std::vector<std::uint8_t> img = build_elf();
  std::ofstream out(argv[1], std::ios::binary | std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "cannot open %s for writing\n", argv[1]);
    return 1;
  }
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
  out.close();
  return out.good() ? 0 : 1;
}
