#pragma once

#include <map>
#include <memory>

#include "asmf/ast.h"
#include "core/graph.h"

namespace tval {

struct AsmLowerConfig {
  uint64_t push_threshold = 0; // 0: derive from width (2^(d-1)-1)
  std::map<std::string, bool> push_hints; // per-pc isPush overrides
};

// Adds the program's symbol-table regions to the shared table and
// lowers the procedure per the assembly translation rules.  Calls are
// lowered to stubs that the annotation step replaces.
TransitionGraph lower_asm(const AsmProgram &prog, const AsmProcedure &proc,
                          std::shared_ptr<RegionTable> rt, unsigned width,
                          SemFlags flags = {}, AsmLowerConfig cfg = {});

} // namespace tval
