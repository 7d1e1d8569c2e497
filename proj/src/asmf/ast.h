#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/expr.h"
#include "ir/ast.h" // ParseError

namespace tval {

// A simplified 32-bit x86-like assembly: registers, flags as boolean
// pseudo-registers, esp-relative stack discipline, and a .data section
// for assembly-only globals with fixed addresses.
struct AsmSymbol {
  std::string name;
  uint64_t addr = 0;
  uint64_t size = 0;
  unsigned align = 1;
  bool read_only = false;
  std::vector<uint8_t> init;
};

struct AsmInstr {
  enum class K {
    RegAssign, // reg = expr (incl. esp)
    Load,      // reg = mem_w[expr]
    Store,     // mem_w[expr] = expr
    Push,      // push {r1,...,rk}
    Pop,       // pop {r1,...,rk}
    Cmp,       // cmp a, b  (also test)
    CondJmp,   // if (cond) jmp L   /  jcc L
    Jmp,
    Call,      // call @f
    Ret,
  };
  K k;
  std::string label;
  int line = 0;

  std::string reg;       // RegAssign/Load target
  ExprRef expr;          // RegAssign rhs, Load/Store address, CondJmp cond
  ExprRef val;           // Store value, Cmp second operand
  unsigned w = 0;        // Load/Store access width (bytes)
  unsigned align = 0;    // Load/Store alignment (defaults to w)
  std::vector<std::string> regs; // Push/Pop
  std::string target;    // jump target / callee
};

struct AsmProcedure {
  std::string name;
  std::vector<uint64_t> param_sizes; // by-value slot sizes, cc order
  bool variadic = false;
  unsigned ret_size = 0; // bytes, 0 = void
  std::vector<AsmInstr> body;
};

struct AsmProgram {
  std::vector<AsmSymbol> symbols;
  std::vector<AsmProcedure> procs;

  const AsmProcedure *find_proc(const std::string &n) const;
};

// Parse; expressions are built at the given machine width.  Throws
// ParseError.  Verifies that symbol-table regions are well-aligned and
// non-overlapping.
AsmProgram parse_asm(const std::string &text, unsigned width);

extern const char *kAsmRegs[8];

} // namespace tval
