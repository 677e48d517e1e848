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
#include "hpcguard/riscv.hpp"

namespace hpcguard {
namespace {

constexpr std::string_view kUnknown = "unknown";

inline std::uint32_t bits(std::uint32_t v, unsigned hi, unsigned lo) {
  return (v >> lo) & ((1u << (hi - lo + 1)) - 1u);
}

std::string_view decode_load(std::uint32_t funct3) {
  switch (funct3) {
    case 0: return "lb";
    case 1: return "lh";
    case 2: return "lw";
    case 3: return "ld";
    case 4: return "lbu";
    case 5: return "lhu";
    case 6: return "lwu";
    default: return kUnknown;
  }
}

std::string_view decode_store(std::uint32_t funct3) {
  switch (funct3) {
    case 0: return "sb";
    case 1: return "sh";
    case 2: return "sw";
    case 3: return "sd";
    default: return kUnknown;
  }
}

std::string_view decode_branch(std::uint32_t funct3) {
  switch (funct3) {
    case 0: return "beq";
    case 1: return "bne";
    case 4: return "blt";
    case 5: return "bge";
    case 6: return "bltu";
    case 7: return "bgeu";
    default: return kUnknown;
  }
}

std::string_view decode_op_imm(std::uint32_t inst) {
  const std::uint32_t funct3 = bits(inst, 14, 12);
  const std::uint32_t funct6 = bits(inst, 31, 26);  // RV64 shifts: 6-bit shamt
  switch (funct3) {
    case 0: return "addi";
    case 1: return funct6 == 0x00 ? "slli" : kUnknown;
    case 2: return "slti";
    case 3: return "sltiu";
    case 4: return "xori";
    case 5:
      if (funct6 == 0x00) return "srli";
      if (funct6 == 0x10) return "srai";
      return kUnknown;
    case 6: return "ori";
    case 7: return "andi";
    default: return kUnknown;
  }
}

std::string_view decode_op_imm32(std::uint32_t inst) {
  const std::uint32_t funct3 = bits(inst, 14, 12);
  const std::uint32_t funct7 = bits(inst, 31, 25);
  switch (funct3) {
    case 0: return "addiw";
    case 1: return funct7 == 0x00 ? "slliw" : kUnknown;
    case 5:
      if (funct7 == 0x00) return "srliw";
      if (funct7 == 0x20) return "sraiw";
      return kUnknown;
    default: return kUnknown;
  }
}

std::string_view decode_op(std::uint32_t inst) {
  const std::uint32_t funct3 = bits(inst, 14, 12);
  const std::uint32_t funct7 = bits(inst, 31, 25);
  if (funct7 == 0x00) {
    switch (funct3) {
      case 0: return "add";
      case 1: return "sll";
      case 2: return "slt";
      case 3: return "sltu";
      case 4: return "xor";
      case 5: return "srl";
      case 6: return "or";
      case 7: return "and";
    }
  }
  if (funct7 == 0x20) {
    if (funct3 == 0) return "sub";
    if (funct3 == 5) return "sra";
  }
  if (funct7 == 0x01) {  // M extension
    switch (funct3) {
      case 0: return "mul";
      case 1: return "mulh";
      case 2: return "mulhsu";
      case 3: return "mulhu";
      case 4: return "div";
      case 5: return "divu";
      case 6: return "rem";
      case 7: return "remu";
    }
  }
  return kUnknown;
}

std::string_view decode_op32(std::uint32_t inst) {
  const std::uint32_t funct3 = bits(inst, 14, 12);
  const std::uint32_t funct7 = bits(inst, 31, 25);
  if (funct7 == 0x00) {
    if (funct3 == 0) return "addw";
    if (funct3 == 1) return "sllw";
    if (funct3 == 5) return "srlw";
  }
  if (funct7 == 0x20) {
    if (funct3 == 0) return "subw";
    if (funct3 == 5) return "sraw";
  }
  if (funct7 == 0x01) {  // M extension
    switch (funct3) {
      case 0: return "mulw";
      case 4: return "divw";
      case 5: return "divuw";
      case 6: return "remw";
      case 7: return "remuw";
    }
  }
  return kUnknown;
}

// Compressed quadrant 0 (op = 00).
std::string_view decode_c0(std::uint16_t inst) {
  const std::uint32_t funct3 = bits(inst, 15, 13);
  switch (funct3) {
    case 0: {
      if (inst == 0) return kUnknown;  // defined illegal instruction
      // c.addi4spn with a zero immediate (bits 12:5) is reserved.
      return bits(inst, 12, 5) != 0 ? "c.addi4spn" : kUnknown;
    }
    case 2: return "c.lw";
    case 3: return "c.ld";
    case 6: return "c.sw";
    case 7: return "c.sd";
    default: return kUnknown;  // c.fld/c.fsd (D extension) and reserved
  }
}

// Compressed quadrant 1 (op = 01). Hint encodings keep the base mnemonic.
std::string_view decode_c1(std::uint16_t inst) {
  const std::uint32_t funct3 = bits(inst, 15, 13);
  const std::uint32_t rd = bits(inst, 11, 7);
  switch (funct3) {
    case 0: return rd == 0 ? "c.nop" : "c.addi";
    case 1: return rd != 0 ? "c.addiw" : kUnknown;  // rd=0 reserved on RV64
    case 2: return "c.li";
    case 3: {
      const std::uint32_t imm = (bits(inst, 12, 12) << 5) | bits(inst, 6, 2);
      if (imm == 0) return kUnknown;  // reserved for both encodings
      return rd == 2 ? "c.addi16sp" : "c.lui";
    }
    case 4: {
      switch (bits(inst, 11, 10)) {
        case 0: return "c.srli";
        case 1: return "c.srai";
        case 2: return "c.andi";
        default: {
          const std::uint32_t low = bits(inst, 6, 5);
          if (bits(inst, 12, 12) == 0) {
            switch (low) {
              case 0: return "c.sub";
              case 1: return "c.xor";
              case 2: return "c.or";
              default: return "c.and";
            }
          }
          if (low == 0) return "c.subw";
          if (low == 1) return "c.addw";
          return kUnknown;  // reserved
        }
      }
    }
    case 5: return "c.j";
    case 6: return "c.beqz";
    default: return "c.bnez";
  }
}

// Compressed quadrant 2 (op = 10).
std::string_view decode_c2(std::uint16_t inst) {
  const std::uint32_t funct3 = bits(inst, 15, 13);
  const std::uint32_t rd = bits(inst, 11, 7);
  const std::uint32_t rs2 = bits(inst, 6, 2);
  switch (funct3) {
    case 0: return "c.slli";
    case 2: return rd != 0 ? "c.lwsp" : kUnknown;  // rd=0 reserved
    case 3: return rd != 0 ? "c.ldsp" : kUnknown;  // rd=0 reserved
    case 4: {
      if (bits(inst, 12, 12) == 0) {
        if (rs2 != 0) return "c.mv";
        return rd != 0 ? "c.jr" : kUnknown;  // rs1=0 reserved
      }
      if (rs2 != 0) return "c.add";
      return rd != 0 ? "c.jalr" : "c.ebreak";
    }
    case 6: return "c.swsp";
    case 7: return "c.sdsp";
    default: return kUnknown;  // c.fldsp/c.fsdsp (D extension)
  }
}

}  // namespace

std::string_view decode_rv32(std::uint32_t inst) {
  switch (bits(inst, 6, 0)) {
    case 0x37: return "lui";
    case 0x17: return "auipc";
    case 0x6f: return "jal";
    case 0x67: return bits(inst, 14, 12) == 0 ? "jalr" : kUnknown;
    case 0x63: return decode_branch(bits(inst, 14, 12));
    case 0x03: return decode_load(bits(inst, 14, 12));
    case 0x23: return decode_store(bits(inst, 14, 12));
    case 0x13: return decode_op_imm(inst);
    case 0x1b: return decode_op_imm32(inst);
    case 0x33: return decode_op(inst);
    case 0x3b: return decode_op32(inst);
    case 0x0f: return bits(inst, 14, 12) == 0 ? "fence" : kUnknown;
    case 0x73:
      if (inst == 0x00000073u) return "ecall";
      if (inst == 0x00100073u) return "ebreak";
      return kUnknown;  // CSR space
    default: return kUnknown;
  }
}

std::string_view decode_compressed(std::uint16_t inst) {
  switch (inst & 0x3u) {
    case 0: return decode_c0(inst);
    case 1: return decode_c1(inst);
    default: return decode_c2(inst);
  }
}

OpcodeSequence decode_opcodes(std::span<const std::uint8_t> text) {
  OpcodeSequence seq;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.size() - pos < 2) {  // lone trailing byte
      seq.tokens.emplace_back(kUnknown);
      break;
    }
    const std::uint16_t low =
        static_cast<std::uint16_t>(text[pos] | (text[pos + 1] << 8));
    if ((low & 0x3u) != 0x3u) {
      seq.tokens.emplace_back(decode_compressed(low));
      pos += 2;
      continue;
    }
    if (text.size() - pos < 4) {  // 32-bit parcel cut short
      seq.tokens.emplace_back(kUnknown);
      break;
    }
    const std::uint32_t inst =
        static_cast<std::uint32_t>(low) |
        (static_cast<std::uint32_t>(text[pos + 2]) << 16) |
        (static_cast<std::uint32_t>(text[pos + 3]) << 24);
    seq.tokens.emplace_back(decode_rv32(inst));
    pos += 4;
  }
  return seq;
}

}  // namespace hpcguard
