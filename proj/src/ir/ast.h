#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/bitvec.h"
#include "ir/types.h"

namespace tval {

struct ParseError {
  int line = 0;
  int col = 0;
  std::string msg;
};

struct IROperand {
  enum class K { Const, Temp, ParamAddr, GlobalAddr } k = K::Const;
  uint64_t cval = 0;
  std::string name;

  static IROperand c(uint64_t v) { return {K::Const, v, ""}; }
  static IROperand t(std::string n) { return {K::Temp, 0, std::move(n)}; }
  std::string str() const;
};

struct IRInstr {
  enum class K {
    Alloc, Dealloc, Load, Store, Op, AssignConst, Call, Ret, VaStartPtr,
    Branch, Jmp,
    // sugar, removed by expansion
    CallSugar, VaStart, VaArg, VaCopy, VaEnd
  };
  K k;
  std::string label;   // unique per instruction, e.g. "I4" or "I4.2"
  int line = 0;

  std::string target;           // result temp, when any
  IRTypeRef ty;                 // load/store/alloc/va_arg value type
  unsigned align = 1;
  IROperand addr;               // load/store address, alloc count, branch cond
  IROperand val;                // store value
  std::string opname;           // Op
  std::vector<IROperand> args;  // Op / Call operands
  std::string callee;           // Call / CallSugar
  IRTypeRef ret_ty;             // Call: null for void
  std::vector<uint64_t> arg_sizes; // Call: by-value slot sizes of arg objects
  std::string site;             // Dealloc target site; Alloc: own label
  bool site_is_za = false;      // Alloc
  std::string t1, t2;           // Branch targets / Jmp target / va ap names
  std::vector<std::pair<IRTypeRef, IROperand>> typed_args; // CallSugar
  std::optional<IROperand> retval; // Ret
};

struct IRParam {
  std::string name;
  IRTypeRef ty;
};

struct IRProcedure {
  std::string name;
  IRTypeRef ret_ty; // null = void
  std::vector<IRParam> params;
  bool variadic = false;
  std::vector<IRInstr> body; // straight list; labels unique; fallthrough order
};

struct IRGlobal {
  std::string name;
  uint64_t size = 0;
  unsigned align = 1;
  bool read_only = false;
  std::vector<uint8_t> init;
};

struct IRDeclare {
  std::string name;
  IRTypeRef ret_ty; // null = void
  std::vector<IRTypeRef> params;
  bool variadic = false;
};

struct IRProgram {
  std::vector<IRGlobal> globals;
  std::vector<IRDeclare> declares;
  std::vector<IRProcedure> procs;

  const IRProcedure *find_proc(const std::string &n) const;
  const IRDeclare *find_declare(const std::string &n) const;
};

// Parse the textual IR; throws ParseError.
IRProgram parse_ir(const std::string &text);

// Expand va_* and by-value call sugar into core instructions.
void expand_variadic_macros(IRProcedure &proc, const IRProgram &prog,
                            unsigned wordsz);
void expand_call_sugar(IRProcedure &proc, const IRProgram &prog,
                       unsigned wordsz);

} // namespace tval
