#pragma once

#include <memory>

#include "core/graph.h"
#include "ir/ast.h"
#include "pointsto/pointsto.h"

namespace tval {

// Region table for a validation run: globals and parameters of the IR
// procedure plus its allocation sites.  The assembly loader adds its
// own symbol-table regions to the same table.
std::shared_ptr<RegionTable> make_region_table(const IRProgram &prog,
                                               const IRProcedure &proc,
                                               unsigned wordsz);

// Entry-read shape descriptor; identical on both sides so the entry
// reads correlate as equal world reads.
std::string entry_sets_kind(const RegionTable &rt, const SemFlags &flags);
std::vector<RegionTable::Idx> entry_set_regions(const RegionTable &rt,
                                                const SemFlags &flags);

TransitionGraph lower_ir(const IRProgram &prog, const IRProcedure &proc,
                         const PointsToResult &pt,
                         std::shared_ptr<RegionTable> rt, unsigned width,
                         SemFlags flags = {});

} // namespace tval
