#include "core/expr.h"

#include <cassert>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace tval {

static size_t combine(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

bool Expr::same_shape(const Expr &o) const {
  if (op != o.op || !(ty == o.ty) || args.size() != o.args.size())
    return false;
  for (size_t i = 0; i < args.size(); i++)
    if (args[i].get() != o.args[i].get())
      return false;
  return cval == o.cval && name == o.name && a0 == o.a0 && a1 == o.a1 &&
         bytes == o.bytes;
}

static size_t expr_hash(const Expr &e) {
  size_t h = (size_t)e.op * 0x9e3779b1;
  h = combine(h, e.ty.width * 8 + (size_t)e.ty.sort);
  for (auto &a : e.args)
    h = combine(h, std::hash<const void *>()(a.get()));
  h = combine(h, e.cval.hash());
  h = combine(h, std::hash<std::string>()(e.name));
  h = combine(h, e.a0 * 131 + e.a1);
  for (uint8_t b : e.bytes)
    h = combine(h, b);
  return h;
}

using Table = std::unordered_set<ExprRef, ExprCtx::Hash, ExprCtx::Eqp>;

ExprCtx &ExprCtx::g() {
  static ExprCtx ctx;
  return ctx;
}

ExprRef ExprCtx::intern(Expr e) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (!m_table)
    m_table = new Table();
  Table &tab = *(Table *)m_table;
  e.hash_cache = expr_hash(e);
  e.has_quant = e.op == Op::Forall || e.op == Op::Exists;
  for (auto &a : e.args)
    e.has_quant = e.has_quant || a->has_quant;
  auto probe = std::make_shared<Expr>(std::move(e));
  auto it = tab.find(probe);
  if (it != tab.end())
    return *it;
  tab.insert(probe);
  return probe;
}

void ExprCtx::clear() {
  if (m_table)
    ((Table *)m_table)->clear();
}

namespace eb {

static ExprRef mk(Op op, Type ty, std::vector<ExprRef> args) {
  Expr e;
  e.op = op;
  e.ty = ty;
  e.args = std::move(args);
  return ExprCtx::g().intern(std::move(e));
}

ExprRef cst(Value v) {
  Expr e;
  e.op = Op::Const;
  e.ty = v.type();
  e.cval = std::move(v);
  return ExprCtx::g().intern(std::move(e));
}

ExprRef bv(unsigned width, uint64_t v) { return cst(Value(BitVec(width, v))); }
ExprRef btrue() { return cst(Value(true)); }
ExprRef bfalse() { return cst(Value(false)); }
ExprRef boolean(bool b) { return cst(Value(b)); }
ExprRef emptyset() { return cst(Value(AddrSet())); }

ExprRef var(const std::string &name, Type ty) {
  Expr e;
  e.op = Op::Var;
  e.ty = ty;
  e.name = name;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef unary(Op op, ExprRef a) {
  switch (op) {
  case Op::Not:
  case Op::Neg:
    return mk(op, a->ty, {a});
  case Op::BNot:
    return lnot(a);
  case Op::SetComp:
    return set_comp(a);
  default:
    assert(false && "bad unary");
    return a;
  }
}

ExprRef binary(Op op, ExprRef a, ExprRef b) {
  switch (op) {
  case Op::Add: case Op::Sub: case Op::Mul:
  case Op::UDiv: case Op::SDiv: case Op::URem: case Op::SRem:
  case Op::And: case Op::Or: case Op::Xor:
  case Op::Shl: case Op::LShr: case Op::AShr:
    assert(a->ty.sort == Sort::BV && b->ty.sort == Sort::BV);
    return mk(op, a->ty, {a, b});
  case Op::Eq:
    return eq(a, b);
  case Op::Ult: case Op::Ule: case Op::Ugt: case Op::Uge:
  case Op::Slt: case Op::Sle: case Op::Sgt: case Op::Sge:
    return mk(op, Type::boolean(), {a, b});
  case Op::Concat:
    return mk(Op::Concat, Type::bv(a->ty.width + b->ty.width), {a, b});
  case Op::BImplies:
    return implies(a, b);
  case Op::SetUnion:
    return set_union(a, b);
  case Op::SetInter:
    return set_inter(a, b);
  case Op::SetDiff:
    return set_diff(a, b);
  default:
    assert(false && "bad binary");
    return a;
  }
}

ExprRef nary(Op op, std::vector<ExprRef> args) {
  switch (op) {
  case Op::BAnd:
    return land(std::move(args));
  case Op::BOr:
    return lor(std::move(args));
  case Op::SetUnion:
    return set_union(std::move(args));
  case Op::SetOv:
    return set_ov(std::move(args));
  default:
    assert(false && "bad nary");
    return args[0];
  }
}

ExprRef add(ExprRef a, ExprRef b) { return binary(Op::Add, a, b); }
ExprRef sub(ExprRef a, ExprRef b) { return binary(Op::Sub, a, b); }
ExprRef mul(ExprRef a, ExprRef b) { return binary(Op::Mul, a, b); }
ExprRef band(ExprRef a, ExprRef b) { return binary(Op::And, a, b); }
ExprRef bnot_bv(ExprRef a) { return mk(Op::Not, a->ty, {a}); }

ExprRef eq(ExprRef a, ExprRef b) {
  assert(a->ty == b->ty);
  if (a.get() == b.get())
    return btrue();
  return mk(Op::Eq, Type::boolean(), {a, b});
}

ExprRef ne(ExprRef a, ExprRef b) { return lnot(eq(a, b)); }
ExprRef ult(ExprRef a, ExprRef b) { return binary(Op::Ult, a, b); }
ExprRef ule(ExprRef a, ExprRef b) { return binary(Op::Ule, a, b); }
ExprRef slt(ExprRef a, ExprRef b) { return binary(Op::Slt, a, b); }
ExprRef sle(ExprRef a, ExprRef b) { return binary(Op::Sle, a, b); }

ExprRef land(std::vector<ExprRef> xs) {
  std::vector<ExprRef> out;
  for (auto &x : xs) {
    if (x->op == Op::Const) {
      if (!x->cval.b())
        return bfalse();
      continue;
    }
    if (x->op == Op::BAnd) {
      out.insert(out.end(), x->args.begin(), x->args.end());
      continue;
    }
    out.push_back(x);
  }
  if (out.empty())
    return btrue();
  if (out.size() == 1)
    return out[0];
  return mk(Op::BAnd, Type::boolean(), std::move(out));
}

ExprRef lor(std::vector<ExprRef> xs) {
  std::vector<ExprRef> out;
  for (auto &x : xs) {
    if (x->op == Op::Const) {
      if (x->cval.b())
        return btrue();
      continue;
    }
    if (x->op == Op::BOr) {
      out.insert(out.end(), x->args.begin(), x->args.end());
      continue;
    }
    out.push_back(x);
  }
  if (out.empty())
    return bfalse();
  if (out.size() == 1)
    return out[0];
  return mk(Op::BOr, Type::boolean(), std::move(out));
}

ExprRef lnot(ExprRef a) {
  if (a->op == Op::Const)
    return boolean(!a->cval.b());
  if (a->op == Op::BNot)
    return a->args[0];
  return mk(Op::BNot, Type::boolean(), {a});
}

ExprRef implies(ExprRef a, ExprRef b) { return lor({lnot(a), b}); }

ExprRef ite(ExprRef c, ExprRef t, ExprRef e) {
  assert(t->ty == e->ty);
  if (c->op == Op::Const)
    return c->cval.b() ? t : e;
  if (t.get() == e.get())
    return t;
  return mk(Op::Ite, t->ty, {c, t, e});
}

ExprRef select(ExprRef mem, ExprRef addr, unsigned sz) {
  Expr e;
  e.op = Op::Select;
  e.ty = Type::bv(8 * sz);
  e.args = {mem, addr};
  e.a0 = sz;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef mstore(ExprRef mem, ExprRef addr, unsigned sz, ExprRef v) {
  Expr e;
  e.op = Op::MemStore;
  e.ty = Type::mem();
  e.args = {mem, addr, v};
  e.a0 = sz;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef mproj(ExprRef set, ExprRef mem) { return mk(Op::MemProj, Type::mem(), {set, mem}); }
ExprRef mupd(ExprRef set, ExprRef mem, ExprRef src) {
  return mk(Op::MemUpd, Type::mem(), {set, mem, src});
}

ExprRef romem(unsigned region, ExprRef base, std::vector<uint8_t> bytes) {
  Expr e;
  e.op = Op::RoMem;
  e.ty = Type::mem();
  e.args = {base};
  e.a0 = region;
  e.bytes = std::move(bytes);
  return ExprCtx::g().intern(std::move(e));
}

ExprRef set_union(ExprRef a, ExprRef b) { return set_union(std::vector<ExprRef>{a, b}); }

ExprRef set_union(std::vector<ExprRef> xs) {
  std::vector<ExprRef> out;
  for (auto &x : xs) {
    if (x->op == Op::Const && x->cval.set().is_empty())
      continue;
    if (x->op == Op::SetUnion) {
      out.insert(out.end(), x->args.begin(), x->args.end());
      continue;
    }
    out.push_back(x);
  }
  if (out.empty())
    return emptyset();
  if (out.size() == 1)
    return out[0];
  return mk(Op::SetUnion, Type::set(), std::move(out));
}

ExprRef set_inter(ExprRef a, ExprRef b) { return mk(Op::SetInter, Type::set(), {a, b}); }

ExprRef set_diff(ExprRef a, ExprRef b) {
  if (b->op == Op::Const && b->cval.set().is_empty())
    return a;
  if (a->op == Op::Const && a->cval.set().is_empty())
    return a;
  return mk(Op::SetDiff, Type::set(), {a, b});
}

ExprRef set_comp(ExprRef a) { return mk(Op::SetComp, Type::set(), {a}); }

ExprRef mk_interval(ExprRef lo, ExprRef hi) { return mk(Op::MkInterval, Type::set(), {lo, hi}); }

ExprRef mk_sized(ExprRef base, ExprRef w) {
  auto one = bv(base->ty.width, 1);
  return mk_interval(base, sub(add(base, w), one));
}

ExprRef contains(ExprRef set, ExprRef a) {
  if (set->op == Op::Const && set->cval.set().is_empty())
    return bfalse();
  return mk(Op::SetContains, Type::boolean(), {set, a});
}

ExprRef subset(ExprRef a, ExprRef b) { return mk(Op::SetSubset, Type::boolean(), {a, b}); }

ExprRef subset_intrvl(ExprRef set, ExprRef lo, ExprRef hi) {
  return mk(Op::SetSubsetIntrvl, Type::boolean(), {set, lo, hi});
}

ExprRef sext(ExprRef a, unsigned w) {
  Expr e;
  e.op = Op::SExt;
  e.ty = Type::bv(w);
  e.args = {a};
  e.a0 = w;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef zext(ExprRef a, unsigned w) {
  Expr e;
  e.op = Op::ZExt;
  e.ty = Type::bv(w);
  e.args = {a};
  e.a0 = w;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef extract(ExprRef a, unsigned hi, unsigned lo) {
  Expr e;
  e.op = Op::Extract;
  e.ty = Type::bv(hi - lo + 1);
  e.args = {a};
  e.a0 = hi;
  e.a1 = lo;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef set_ov(std::vector<ExprRef> sets) {
  assert(sets.size() >= 2);
  return mk(Op::SetOv, Type::boolean(), std::move(sets));
}

ExprRef set_lb(ExprRef s, unsigned width) { return mk(Op::SetLB, Type::bv(width), {s}); }
ExprRef set_ub(ExprRef s, unsigned width) { return mk(Op::SetUB, Type::bv(width), {s}); }

ExprRef set_size(ExprRef s, unsigned width) {
  Expr e;
  e.op = Op::SetSize;
  e.ty = Type::bv(width);
  e.args = {s};
  return ExprCtx::g().intern(std::move(e));
}

ExprRef set_is_interval(ExprRef s) { return mk(Op::SetIsInterval, Type::boolean(), {s}); }
ExprRef set_is_empty(ExprRef s) {
  if (s->op == Op::Const)
    return boolean(s->cval.set().is_empty());
  return mk(Op::SetIsEmpty, Type::boolean(), {s});
}

ExprRef aligned(ExprRef a, unsigned n) {
  if (n <= 1)
    return btrue();
  Expr e;
  e.op = Op::Aligned;
  e.ty = Type::boolean();
  e.args = {a};
  e.a0 = n;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef apply(const std::string &fn, Type ret, std::vector<ExprRef> args) {
  Expr e;
  e.op = Op::Apply;
  e.ty = ret;
  e.args = std::move(args);
  e.name = fn;
  return ExprCtx::g().intern(std::move(e));
}

static ExprRef quant(Op op, const std::string &bound, unsigned width, ExprRef body) {
  Expr e;
  e.op = op;
  e.ty = Type::boolean();
  e.args = {body};
  e.name = bound;
  e.a0 = width;
  return ExprCtx::g().intern(std::move(e));
}

ExprRef forall(const std::string &bound, unsigned width, ExprRef body) {
  return quant(Op::Forall, bound, width, body);
}
ExprRef exists(const std::string &bound, unsigned width, ExprRef body) {
  return quant(Op::Exists, bound, width, body);
}

} // namespace eb

static ExprRef subst_rec(const ExprRef &e,
                         const std::vector<std::pair<std::string, ExprRef>> &map,
                         std::map<const Expr *, ExprRef> &memo) {
  if (e->op == Op::Const)
    return e;
  if (e->op == Op::Var) {
    for (auto &[n, r] : map)
      if (e->name == n)
        return r;
    return e;
  }
  auto it = memo.find(e.get());
  if (it != memo.end())
    return it->second;
  Expr ne = *e;
  bool changed = false;
  for (auto &a : ne.args) {
    ExprRef na = subst_rec(a, map, memo);
    if (na.get() != a.get()) {
      a = na;
      changed = true;
    }
  }
  ExprRef res = changed ? ExprCtx::g().intern(std::move(ne)) : e;
  memo.emplace(e.get(), res);
  return res;
}

ExprRef subst_vars(const ExprRef &e,
                   const std::vector<std::pair<std::string, ExprRef>> &map) {
  std::map<const Expr *, ExprRef> memo;
  return subst_rec(e, map, memo);
}

static void collect_rec(const ExprRef &e, std::set<std::string> &out,
                        std::set<const Expr *> &seen) {
  if (!seen.insert(e.get()).second)
    return;
  if (e->op == Op::Var) {
    out.insert(e->name);
    return;
  }
  for (auto &a : e->args)
    collect_rec(a, out, seen);
}

void collect_vars(const ExprRef &e, std::set<std::string> &out) {
  std::set<const Expr *> seen;
  collect_rec(e, out, seen);
}

std::string Expr::str() const {
  std::ostringstream ss;
  switch (op) {
  case Op::Const: ss << cval.str(); return ss.str();
  case Op::Var: ss << name; return ss.str();
  default: break;
  }
  static const std::map<Op, std::string> names = {
      {Op::Add, "bvadd"}, {Op::Sub, "bvsub"}, {Op::Mul, "bvmul"},
      {Op::UDiv, "bvudiv"}, {Op::SDiv, "bvsdiv"}, {Op::URem, "bvurem"},
      {Op::SRem, "bvsrem"}, {Op::And, "bvand"}, {Op::Or, "bvor"},
      {Op::Xor, "bvxor"}, {Op::Not, "bvnot"}, {Op::Neg, "bvneg"},
      {Op::Shl, "bvshl"}, {Op::LShr, "bvlshr"}, {Op::AShr, "bvashr"},
      {Op::Extract, "extract"}, {Op::Concat, "concat"},
      {Op::ZExt, "zext"}, {Op::SExt, "sext"},
      {Op::Eq, "="}, {Op::Ult, "bvult"}, {Op::Ule, "bvule"},
      {Op::Ugt, "bvugt"}, {Op::Uge, "bvuge"}, {Op::Slt, "bvslt"},
      {Op::Sle, "bvsle"}, {Op::Sgt, "bvsgt"}, {Op::Sge, "bvsge"},
      {Op::BAnd, "and"}, {Op::BOr, "or"}, {Op::BNot, "not"},
      {Op::BImplies, "=>"}, {Op::Ite, "ite"},
      {Op::Select, "sel"}, {Op::MemStore, "st"}, {Op::MemProj, "prj"},
      {Op::MemUpd, "upd"}, {Op::RoMem, "romem"},
      {Op::SetUnion, "set.u"}, {Op::SetInter, "set.i"},
      {Op::SetDiff, "set.d"}, {Op::SetComp, "set.comp"},
      {Op::MkInterval, "ival"}, {Op::SetContains, "in"},
      {Op::SetSubsetIntrvl, "ival-sub"}, {Op::SetSubset, "sub"},
      {Op::SetOv, "ov"}, {Op::SetLB, "lb"}, {Op::SetUB, "ub"},
      {Op::SetSize, "card"}, {Op::SetIsInterval, "is-ival"},
      {Op::SetIsEmpty, "is-empty"}, {Op::Aligned, "aligned"},
      {Op::Apply, "apply"}, {Op::Forall, "forall"}, {Op::Exists, "exists"},
  };
  ss << "(" << names.at(op);
  if (op == Op::Apply || op == Op::Forall || op == Op::Exists)
    ss << " " << name;
  if (op == Op::Extract)
    ss << " " << a0 << " " << a1;
  if (op == Op::Select || op == Op::MemStore || op == Op::Aligned ||
      op == Op::ZExt || op == Op::SExt)
    ss << " " << a0;
  for (auto &a : args)
    ss << " " << a->str();
  ss << ")";
  return ss.str();
}

} // namespace tval
