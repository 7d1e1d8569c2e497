#pragma once

#include "core/expr.h"
#include "core/graph.h"
#include "core/region.h"

namespace tval {

// Expression builders for the predicates and operators used by the
// translation rules (alignment, access safety, well-formedness of
// address sets and stack, calling conventions, UB conditions).
namespace sem {

struct Ctx {
  const RegionTable &rt;
  Side side;
  unsigned width;        // d
  SemFlags flags;
  unsigned call_align;   // min(16, 2^(d-2))

  unsigned wordsz() const { return width / 8; }
};

unsigned call_alignment(unsigned width);

// il[r] as a variable reference; on the assembly side a Zl site is the
// union of its stack- and virtually-allocated parts.
ExprRef il(const Ctx &c, RegionTable::Idx r);
ExprRef il_zs(const Ctx &c, RegionTable::Idx z);
ExprRef il_zv(const Ctx &c, RegionTable::Idx z);
ExprRef il_union(const Ctx &c, const std::vector<RegionTable::Idx> &rs);
ExprRef il_cv(const Ctx &c); // empty set under callers'-virtual-smallest
ExprRef zlv_union(const Ctx &c); // union of ilzv over Zl sites (assembly)

// comp of everything allocated on this side
ExprRef free_set(const Ctx &c);

ExprRef ghost_lb(const Ctx &c, RegionTable::Idx r);
ExprRef ghost_ub(const Ctx &c, RegionTable::Idx r);
ExprRef ghost_sz(const Ctx &c, RegionTable::Idx r);
ExprRef ghost_lsz(const Ctx &c, RegionTable::Idx z);
ExprRef ghost_empty(const Ctx &c, RegionTable::Idx r);

// [p]_w
ExprRef sized_interval(const Ctx &c, ExprRef p, uint64_t w);
// aligned_a(p) && p <=u p+w-1
ExprRef is_aligned_intrvl(const Ctx &c, ExprRef p, uint64_t w, unsigned a);
// accessIsSafeC: alignment + containment in il[rs]
ExprRef access_is_safe_c(const Ctx &c, ExprRef p, uint64_t w, unsigned a,
                         const std::vector<RegionTable::Idx> &rs);
// intrvlInSet(+Aligned): b != 0 && b <=u e && [b,e] subset set
ExprRef intrvl_in_set(const Ctx &c, ExprRef b, ExprRef e, ExprRef set);
ExprRef intrvl_in_set_aligned(const Ctx &c, ExprRef b, ExprRef e, ExprRef set,
                              unsigned a);

// signed multiplication overflow via widening
ExprRef overflow_mul_expr(ExprRef a, ExprRef b);

// UB_P(op, args); null when the operation has no UB condition
ExprRef ub_op(const Ctx &c, const std::string &opname,
              const std::vector<ExprRef> &args);

// addrSetsAreWF over this side's entry sets
ExprRef addr_sets_wf(const Ctx &c);

// obeyCC: arguments laid out consecutively from base by word-rounded sizes
ExprRef obey_cc(const Ctx &c, ExprRef base, const std::vector<uint64_t> &sizes,
                const std::vector<ExprRef> &addrs);

// stkIsWF at assembly entry
ExprRef stk_is_wf(const Ctx &c, ExprRef esp, ExprRef stk_e, ExprRef cs_e,
                  const std::vector<uint64_t> &param_sizes);

// assembly-side forbidden-region sets; these honor the graph's active
// semantics (callers'-virtual-smallest, safety-relaxed)
ExprRef push_target_set(const Ctx &c);
ExprRef forbidden_load_set(const Ctx &c);
ExprRef forbidden_store_set(const Ctx &c);
// disjunction of the return-time preservation violations
ExprRef ret_preserve_violation(const Ctx &c);

// return-value packing per the calling conventions
ExprRef vret_val(const Ctx &c, unsigned ret_bytes); // over reg.eax/reg.edx
// distribute packed value v into (eax, edx); bits not covered are
// filled from the provided arbitrary words
std::pair<ExprRef, ExprRef> vget_val(const Ctx &c, unsigned ret_bytes,
                                     ExprRef v, ExprRef junk_a, ExprRef junk_d);

} // namespace sem

// isPush threshold predicate (concrete form used by tests and the
// annotation search; the lowering builds the same condition symbolically).
bool is_push(const BitVec &esp_before, const BitVec &esp_after, uint64_t threshold);
uint64_t default_push_threshold(unsigned width);

} // namespace tval
