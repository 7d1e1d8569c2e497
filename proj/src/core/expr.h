#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "core/value.h"

namespace tval {

enum class Op : uint8_t {
  Const,
  Var,
  // bitvector arithmetic / logic
  Add, Sub, Mul, UDiv, SDiv, URem, SRem,
  And, Or, Xor, Not, Neg, Shl, LShr, AShr,
  Extract, Concat, ZExt, SExt,
  // comparisons (BV x BV -> Bool); Eq is generic over equal sorts
  Eq, Ult, Ule, Ugt, Uge, Slt, Sle, Sgt, Sge,
  // boolean connectives (BAnd/BOr are n-ary)
  BAnd, BOr, BNot, BImplies,
  Ite,
  // memory
  Select, MemStore, MemProj, MemUpd, RoMem,
  // address sets
  SetUnion, SetInter, SetDiff, SetComp, MkInterval,
  SetContains, SetSubsetIntrvl, SetSubset, SetOv,
  SetLB, SetUB, SetSize, SetIsInterval, SetIsEmpty,
  Aligned,
  // uninterpreted application and quantifiers
  Apply,
  Forall, Exists,
};

class Expr;
using ExprRef = std::shared_ptr<const Expr>;

class Expr {
public:
  Op op;
  Type ty;
  std::vector<ExprRef> args;
  // payloads
  Value cval;           // Const
  std::string name;     // Var, Apply (function symbol), Forall/Exists (bound var)
  unsigned a0 = 0;      // Extract hi / ZExt,SExt target / Select,MemStore sz / Aligned n / Forall bound width / RoMem region
  unsigned a1 = 0;      // Extract lo
  std::vector<uint8_t> bytes; // RoMem initializer

  size_t hash_cache = 0;
  bool has_quant = false;

  std::string str() const;
  bool same_shape(const Expr &o) const;
};

// Expression factory with hash consing.  All expressions are immutable
// and shared; the factory lives for the whole session.
class ExprCtx {
public:
  static ExprCtx &g();

  ExprRef intern(Expr e);
  void clear();

  struct Hash {
    size_t operator()(const ExprRef &e) const { return e->hash_cache; }
  };
  struct Eqp {
    bool operator()(const ExprRef &a, const ExprRef &b) const {
      return a->same_shape(*b);
    }
  };

private:
  void *m_table = nullptr; // unordered_set in impl
};

// Builders
namespace eb {

ExprRef cst(Value v);
ExprRef bv(unsigned width, uint64_t v);
ExprRef btrue();
ExprRef bfalse();
ExprRef boolean(bool b);
ExprRef emptyset();
ExprRef var(const std::string &name, Type ty);

ExprRef unary(Op op, ExprRef a);
ExprRef binary(Op op, ExprRef a, ExprRef b);
ExprRef nary(Op op, std::vector<ExprRef> args);

ExprRef add(ExprRef a, ExprRef b);
ExprRef sub(ExprRef a, ExprRef b);
ExprRef mul(ExprRef a, ExprRef b);
ExprRef band(ExprRef a, ExprRef b);
ExprRef bnot_bv(ExprRef a);
ExprRef eq(ExprRef a, ExprRef b);
ExprRef ne(ExprRef a, ExprRef b);
ExprRef ult(ExprRef a, ExprRef b);
ExprRef ule(ExprRef a, ExprRef b);
ExprRef slt(ExprRef a, ExprRef b);
ExprRef sle(ExprRef a, ExprRef b);
ExprRef land(std::vector<ExprRef> xs); // simplifies trivial cases
ExprRef lor(std::vector<ExprRef> xs);
ExprRef lnot(ExprRef a);
ExprRef implies(ExprRef a, ExprRef b);
ExprRef ite(ExprRef c, ExprRef t, ExprRef e);

ExprRef select(ExprRef mem, ExprRef addr, unsigned sz);
ExprRef mstore(ExprRef mem, ExprRef addr, unsigned sz, ExprRef v);
ExprRef mproj(ExprRef set, ExprRef mem);
ExprRef mupd(ExprRef set, ExprRef mem, ExprRef src);
ExprRef romem(unsigned region, ExprRef base, std::vector<uint8_t> bytes);

ExprRef set_union(ExprRef a, ExprRef b);
ExprRef set_union(std::vector<ExprRef> xs);
ExprRef set_inter(ExprRef a, ExprRef b);
ExprRef set_diff(ExprRef a, ExprRef b);
ExprRef set_comp(ExprRef a);
ExprRef mk_interval(ExprRef lo, ExprRef hi); // empty when lo >u hi
ExprRef mk_sized(ExprRef base, ExprRef w);   // [base]_w = [base, base+w-1]
ExprRef contains(ExprRef set, ExprRef a);
ExprRef subset(ExprRef a, ExprRef b);
ExprRef subset_intrvl(ExprRef set, ExprRef lo, ExprRef hi); // [lo,hi] in set
ExprRef sext(ExprRef a, unsigned w);
ExprRef zext(ExprRef a, unsigned w);
ExprRef extract(ExprRef a, unsigned hi, unsigned lo);
ExprRef set_ov(std::vector<ExprRef> sets);
ExprRef set_lb(ExprRef s, unsigned width);
ExprRef set_ub(ExprRef s, unsigned width);
ExprRef set_size(ExprRef s, unsigned width);
ExprRef set_is_interval(ExprRef s);
ExprRef set_is_empty(ExprRef s);
ExprRef aligned(ExprRef a, unsigned n);

ExprRef apply(const std::string &fn, Type ret, std::vector<ExprRef> args);
ExprRef forall(const std::string &bound, unsigned width, ExprRef body);
ExprRef exists(const std::string &bound, unsigned width, ExprRef body);

} // namespace eb

// Substitute vars by name; returns the rewritten DAG.
ExprRef subst_vars(const ExprRef &e,
                   const std::vector<std::pair<std::string, ExprRef>> &map);
void collect_vars(const ExprRef &e, std::set<std::string> &out);

} // namespace tval
