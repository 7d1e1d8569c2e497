#pragma once

#include <vector>

#include "core/graph.h"

namespace tval {

// Allocation / deallocation / call annotations added to the assembly
// procedure.  Positions are nodes (instruction boundaries) of the graph
// being annotated; call annotations replace a call stub edge.
struct Annotation {
  enum class K { AllocS, AllocV, DeallocS, DeallocV, CallAnnot };
  K k;
  int node = -1;      // splice point for (de)allocs
  int stub_edge = -1; // CallAnnot: the stub to replace
  RegionTable::Idx site = 0;
  ExprRef addr;          // AllocS start address (esp in blackbox mode)
  ExprRef size;          // AllocS / AllocV size expression
  unsigned align = 1;
  std::string fresh_var; // AllocV result
  // CallAnnot
  std::string callee;
  unsigned ret_bits = 0;
  std::vector<uint64_t> arg_sizes;
  std::vector<ExprRef> arg_addrs;
  std::vector<RegionTable::Idx> observable;
  std::string pc; // label for reporting, e.g. "A4.1"

  std::string str(const RegionTable &rt) const;
};

// Splices the annotation expansions into a copy of the graph.  The
// produced edges are marked so they can be told apart from base edges.
TransitionGraph apply_annotations(const TransitionGraph &ga,
                                  const std::vector<Annotation> &anns);

// Semantics transforms (applied to both sides / assembly side).
TransitionGraph apply_cv_smallest(const TransitionGraph &g);
TransitionGraph apply_safety_relaxed(const TransitionGraph &g);

} // namespace tval
