#include "core/eval.h"

#include <cassert>
#include <optional>
#include <sstream>

namespace tval {

std::string value_key(const std::vector<Value> &args) {
  std::ostringstream ss;
  for (auto &a : args) {
    if (a.is_mem()) {
      // canonical: default byte + full override list
      ss << "m" << (int)a.mem().default_byte();
      for (auto &[ad, b] : a.mem().overrides())
        ss << "." << ad << ":" << (int)b;
    } else {
      ss << a.str();
    }
    ss << ";";
  }
  return ss.str();
}

namespace {
class DepCheck {
public:
  DepCheck(std::map<std::pair<const Expr *, std::string>, bool> &memo)
      : m_memo(memo) {}
  bool run(const ExprRef &e, const std::string &name) {
    if (e->op == Op::Const)
      return false;
    if (e->op == Op::Var)
      return e->name == name;
    auto key = std::make_pair(e.get(), name);
    auto it = m_memo.find(key);
    if (it != m_memo.end())
      return it->second;
    bool dep = false;
    if ((e->op == Op::Forall || e->op == Op::Exists) && e->name == name) {
      dep = false; // shadowed
    } else {
      for (auto &a : e->args)
        if (run(a, name)) {
          dep = true;
          break;
        }
    }
    m_memo.emplace(key, dep);
    return dep;
  }

private:
  std::map<std::pair<const Expr *, std::string>, bool> &m_memo;
};
} // namespace

bool Eval::depends_on_bound(const ExprRef &e) {
  if (m_bound.empty())
    return false;
  DepCheck dc(m_dep);
  for (auto &[n, v] : m_bound)
    if (dc.run(e, n))
      return true;
  return false;
}

Value Eval::operator()(const ExprRef &e) { return eval(e); }

static BitVec binop_bv(Op op, const BitVec &a, const BitVec &b) {
  switch (op) {
  case Op::Add: return a.add(b);
  case Op::Sub: return a.sub(b);
  case Op::Mul: return a.mul(b);
  case Op::UDiv: return a.udiv(b);
  case Op::SDiv: return a.sdiv(b);
  case Op::URem: return a.urem(b);
  case Op::SRem: return a.srem(b);
  case Op::And: return a.band(b);
  case Op::Or: return a.bor(b);
  case Op::Xor: return a.bxor(b);
  case Op::Shl: return a.shl(b);
  case Op::LShr: return a.lshr(b);
  case Op::AShr: return a.ashr(b);
  default: assert(false); return a;
  }
}

static bool cmp_bv(Op op, const BitVec &a, const BitVec &b) {
  switch (op) {
  case Op::Ult: return a.ult(b);
  case Op::Ule: return a.ule(b);
  case Op::Ugt: return b.ult(a);
  case Op::Uge: return b.ule(a);
  case Op::Slt: return a.slt(b);
  case Op::Sle: return a.sle(b);
  case Op::Sgt: return b.slt(a);
  case Op::Sge: return b.sle(a);
  default: assert(false); return false;
  }
}

Value Eval::eval(const ExprRef &e) {
  bool cacheable = !depends_on_bound(e);
  if (cacheable) {
    auto it = m_cache.find(e.get());
    if (it != m_cache.end())
      return it->second;
  }

  Value r;
  switch (e->op) {
  case Op::Const:
    r = e->cval;
    break;
  case Op::Var: {
    auto bit = m_bound.find(e->name);
    if (bit != m_bound.end()) {
      r = bit->second;
      break;
    }
    auto it = m_env->find(e->name);
    assert(it != m_env->end() && "unbound variable in eval");
    r = it->second;
    break;
  }
  case Op::Add: case Op::Sub: case Op::Mul:
  case Op::UDiv: case Op::SDiv: case Op::URem: case Op::SRem:
  case Op::And: case Op::Or: case Op::Xor:
  case Op::Shl: case Op::LShr: case Op::AShr:
    r = Value(binop_bv(e->op, eval(e->args[0]).bv(), eval(e->args[1]).bv()));
    break;
  case Op::Not:
    r = Value(eval(e->args[0]).bv().bnot());
    break;
  case Op::Neg:
    r = Value(eval(e->args[0]).bv().neg());
    break;
  case Op::Extract:
    r = Value(eval(e->args[0]).bv().extract(e->a0, e->a1));
    break;
  case Op::Concat:
    r = Value(eval(e->args[0]).bv().concat(eval(e->args[1]).bv()));
    break;
  case Op::ZExt:
    r = Value(eval(e->args[0]).bv().zext(e->a0));
    break;
  case Op::SExt:
    r = Value(eval(e->args[0]).bv().sext(e->a0));
    break;
  case Op::Eq:
    r = Value(eval(e->args[0]) == eval(e->args[1]));
    break;
  case Op::Ult: case Op::Ule: case Op::Ugt: case Op::Uge:
  case Op::Slt: case Op::Sle: case Op::Sgt: case Op::Sge:
    r = Value(cmp_bv(e->op, eval(e->args[0]).bv(), eval(e->args[1]).bv()));
    break;
  case Op::BAnd: {
    bool v = true;
    for (auto &a : e->args)
      if (!eval(a).b()) {
        v = false;
        break;
      }
    r = Value(v);
    break;
  }
  case Op::BOr: {
    bool v = false;
    for (auto &a : e->args)
      if (eval(a).b()) {
        v = true;
        break;
      }
    r = Value(v);
    break;
  }
  case Op::BNot:
    r = Value(!eval(e->args[0]).b());
    break;
  case Op::BImplies:
    r = Value(!eval(e->args[0]).b() || eval(e->args[1]).b());
    break;
  case Op::Ite:
    r = eval(e->args[0]).b() ? eval(e->args[1]) : eval(e->args[2]);
    break;
  case Op::Select:
    r = Value(eval(e->args[0]).mem().select(eval(e->args[1]).bv(), e->a0));
    break;
  case Op::MemStore:
    r = Value(eval(e->args[0]).mem().store(eval(e->args[1]).bv(), e->a0,
                                           eval(e->args[2]).bv()));
    break;
  case Op::MemProj:
    r = Value(eval(e->args[1]).mem().project(eval(e->args[0]).set(), m_width));
    break;
  case Op::MemUpd:
    r = Value(eval(e->args[1]).mem().update(eval(e->args[0]).set(),
                                            eval(e->args[2]).mem(), m_width));
    break;
  case Op::RoMem: {
    MemArray m(0);
    uint64_t base = eval(e->args[0]).bv().uval();
    for (size_t i = 0; i < e->bytes.size(); i++)
      m.store1(BitVec::mask(m_width, base + i), e->bytes[i]);
    r = Value(std::move(m));
    break;
  }
  case Op::SetUnion: {
    AddrSet s;
    for (auto &a : e->args)
      s = s.unite(eval(a).set());
    r = Value(std::move(s));
    break;
  }
  case Op::SetInter:
    r = Value(eval(e->args[0]).set().intersect(eval(e->args[1]).set()));
    break;
  case Op::SetDiff:
    r = Value(eval(e->args[0]).set().subtract(eval(e->args[1]).set()));
    break;
  case Op::SetComp:
    r = Value(eval(e->args[0]).set().complement(m_width));
    break;
  case Op::MkInterval: {
    BitVec lo = eval(e->args[0]).bv(), hi = eval(e->args[1]).bv();
    r = Value(lo.ule(hi) ? AddrSet::interval(lo.uval(), hi.uval()) : AddrSet());
    break;
  }
  case Op::SetContains:
    r = Value(eval(e->args[0]).set().contains(eval(e->args[1]).bv().uval()));
    break;
  case Op::SetSubsetIntrvl: {
    BitVec lo = eval(e->args[1]).bv(), hi = eval(e->args[2]).bv();
    if (!lo.ule(hi))
      r = Value(true);
    else
      r = Value(eval(e->args[0]).set().contains_interval(lo.uval(), hi.uval()));
    break;
  }
  case Op::SetSubset:
    r = Value(eval(e->args[0]).set().subset_of(eval(e->args[1]).set()));
    break;
  case Op::SetOv: {
    std::vector<AddrSet> ss;
    for (auto &a : e->args)
      ss.push_back(eval(a).set());
    r = Value(addrset_ov(ss));
    break;
  }
  case Op::SetLB: {
    Value sv = eval(e->args[0]);
    const AddrSet &s = sv.set();
    r = Value(BitVec(e->ty.width, s.is_empty() ? 0 : s.lb()));
    break;
  }
  case Op::SetUB: {
    Value sv = eval(e->args[0]);
    const AddrSet &s = sv.set();
    r = Value(BitVec(e->ty.width, s.is_empty() ? 0 : s.ub()));
    break;
  }
  case Op::SetSize:
    r = Value(BitVec(e->ty.width, eval(e->args[0]).set().size()));
    break;
  case Op::SetIsInterval: {
    Value sv = eval(e->args[0]);
    r = Value(sv.set().is_interval());
    break;
  }
  case Op::SetIsEmpty:
    r = Value(eval(e->args[0]).set().is_empty());
    break;
  case Op::Aligned:
    r = Value(eval(e->args[0]).bv().aligned(e->a0));
    break;
  case Op::Apply: {
    std::vector<Value> args;
    for (auto &a : e->args)
      args.push_back(eval(a));
    auto it = funcs.find(e->name);
    if (it != funcs.end()) {
      r = it->second.lookup(value_key(args));
    } else if (uf_fallback) {
      r = uf_fallback(e->name, args, e->ty);
    } else {
      assert(false && "uninterpreted function without interpretation");
    }
    break;
  }
  case Op::Forall:
  case Op::Exists: {
    assert(m_width <= 16 && "quantifier expansion needs small width");
    assert(e->a0 <= 16);
    bool is_forall = e->op == Op::Forall;
    uint64_t n = uint64_t(1) << e->a0;
    bool res = is_forall;
    auto saved = m_bound.find(e->name) != m_bound.end()
                     ? std::optional<Value>(m_bound[e->name])
                     : std::nullopt;
    for (uint64_t i = 0; i < n; i++) {
      m_bound[e->name] = Value(BitVec(e->a0, i));
      bool b = eval(e->args[0]).b();
      if (is_forall && !b) {
        res = false;
        break;
      }
      if (!is_forall && b) {
        res = true;
        break;
      }
    }
    if (saved)
      m_bound[e->name] = *saved;
    else
      m_bound.erase(e->name);
    r = Value(res);
    break;
  }
  }

  if (cacheable)
    m_cache.emplace(e.get(), r);
  return r;
}

} // namespace tval
