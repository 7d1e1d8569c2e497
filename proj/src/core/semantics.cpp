#include "core/semantics.h"

#include <cassert>

#include "core/state.h"

namespace tval {

namespace sem {

static uint64_t word_roundup(uint64_t v, uint64_t m) {
  return m ? (v + m - 1) / m * m : v;
}

unsigned call_alignment(unsigned width) {
  uint64_t cap = uint64_t(1) << (width - 2);
  return (unsigned)std::min<uint64_t>(16, cap);
}

ExprRef il(const Ctx &c, RegionTable::Idx r) {
  const RegionId &rid = c.rt.get(r);
  if (rid.kind == RegionKind::Cv)
    return il_cv(c);
  if (c.side == Side::A && rid.is_site() && rid.zclass == SiteClass::Zl)
    return eb::set_union(il_zs(c, r), il_zv(c, r));
  return eb::var(names::il(c.rt, r), Type::set());
}

ExprRef il_zs(const Ctx &c, RegionTable::Idx z) {
  assert(c.side == Side::A);
  return eb::var(names::ilzs(c.rt, z), Type::set());
}

ExprRef il_zv(const Ctx &c, RegionTable::Idx z) {
  assert(c.side == Side::A);
  return eb::var(names::ilzv(c.rt, z), Type::set());
}

ExprRef il_union(const Ctx &c, const std::vector<RegionTable::Idx> &rs) {
  std::vector<ExprRef> xs;
  for (auto r : rs)
    xs.push_back(il(c, r));
  return eb::set_union(std::move(xs));
}

ExprRef il_cv(const Ctx &c) {
  if (c.flags.cv_smallest)
    return eb::emptyset();
  return eb::var(names::il(c.rt, c.rt.cv()), Type::set());
}

ExprRef zlv_union(const Ctx &c) {
  assert(c.side == Side::A);
  std::vector<ExprRef> xs;
  for (auto z : c.rt.sites(SiteClass::Zl))
    xs.push_back(il_zv(c, z));
  return eb::set_union(std::move(xs));
}

ExprRef free_set(const Ctx &c) {
  std::vector<ExprRef> xs;
  for (auto r : c.rt.common())
    xs.push_back(il(c, r));
  xs.push_back(il_cv(c));
  if (c.side == Side::A) {
    for (auto f : c.rt.asm_only())
      xs.push_back(il(c, f));
    xs.push_back(il(c, c.rt.stk()));
    xs.push_back(il(c, c.rt.cs()));
  }
  return eb::set_comp(eb::set_union(std::move(xs)));
}

ExprRef ghost_lb(const Ctx &c, RegionTable::Idx r) {
  return eb::var(names::ghost("lb." + c.rt.name_of(r)), Type::bv(c.width));
}
ExprRef ghost_ub(const Ctx &c, RegionTable::Idx r) {
  return eb::var(names::ghost("ub." + c.rt.name_of(r)), Type::bv(c.width));
}
ExprRef ghost_sz(const Ctx &c, RegionTable::Idx r) {
  return eb::var(names::ghost("sz." + c.rt.name_of(r)), Type::bv(c.width));
}
ExprRef ghost_lsz(const Ctx &c, RegionTable::Idx z) {
  return eb::var(names::ghost("lsz." + c.rt.name_of(z)), Type::bv(c.width));
}
ExprRef ghost_empty(const Ctx &c, RegionTable::Idx r) {
  return eb::var(names::ghost("empty." + c.rt.name_of(r)), Type::boolean());
}

ExprRef sized_interval(const Ctx &c, ExprRef p, uint64_t w) {
  return eb::mk_sized(p, eb::bv(c.width, w));
}

ExprRef is_aligned_intrvl(const Ctx &c, ExprRef p, uint64_t w, unsigned a) {
  ExprRef end = eb::add(p, eb::bv(c.width, w - 1));
  return eb::land({eb::aligned(p, a), eb::ule(p, end)});
}

ExprRef access_is_safe_c(const Ctx &c, ExprRef p, uint64_t w, unsigned a,
                         const std::vector<RegionTable::Idx> &rs) {
  ExprRef end = eb::add(p, eb::bv(c.width, w - 1));
  ExprRef target = il_union(c, rs);
  return eb::land({is_aligned_intrvl(c, p, w, a),
                   eb::subset_intrvl(target, p, end)});
}

ExprRef intrvl_in_set(const Ctx &c, ExprRef b, ExprRef e, ExprRef set) {
  ExprRef nonnull = eb::ne(b, eb::bv(c.width, 0));
  ExprRef ord = eb::ule(b, e);
  return eb::land({nonnull, ord, eb::subset_intrvl(set, b, e)});
}

ExprRef intrvl_in_set_aligned(const Ctx &c, ExprRef b, ExprRef e, ExprRef set,
                              unsigned a) {
  return eb::land({eb::aligned(b, a), intrvl_in_set(c, b, e, set)});
}

ExprRef overflow_mul_expr(ExprRef a, ExprRef b) {
  unsigned w = a->ty.width;
  assert(w <= 32);
  unsigned w2 = 2 * w;
  ExprRef prod = eb::mul(eb::sext(a, w2), eb::sext(b, w2));
  ExprRef lo = eb::bv(w2, (uint64_t)-(int64_t)(uint64_t(1) << (w - 1)));
  ExprRef hi = eb::bv(w2, (uint64_t(1) << (w - 1)) - 1);
  return eb::lnot(eb::land({eb::sle(lo, prod), eb::sle(prod, hi)}));
}

ExprRef ub_op(const Ctx &c, const std::string &opname,
              const std::vector<ExprRef> &args) {
  unsigned w = c.width;
  if (opname == "udiv" || opname == "sdiv" || opname == "urem" ||
      opname == "srem")
    return eb::eq(args[1], eb::bv(args[1]->ty.width, 0));
  if (opname == "shl" || opname == "lshr" || opname == "ashr")
    return eb::binary(Op::Uge, args[1], eb::bv(args[1]->ty.width, args[0]->ty.width));
  if (opname == "padd") {
    ExprRef sum = eb::add(args[0], args[1]);
    ExprRef zero = eb::bv(w, 0);
    return eb::lor({eb::land({eb::sle(zero, args[1]), eb::ult(sum, args[0])}),
                    eb::land({eb::slt(args[1], zero), eb::binary(Op::Ugt, sum, args[0])})});
  }
  if (opname == "psub") {
    ExprRef dif = eb::sub(args[0], args[1]);
    ExprRef zero = eb::bv(w, 0);
    return eb::lor({eb::land({eb::sle(zero, args[1]), eb::binary(Op::Ugt, dif, args[0])}),
                    eb::land({eb::slt(args[1], zero), eb::ult(dif, args[0])})});
  }
  return nullptr;
}

ExprRef addr_sets_wf(const Ctx &c) {
  std::vector<ExprRef> conj;
  unsigned w = c.width;

  // 0 not in il[G u F u Y u {hp, cl, cv}]
  std::vector<ExprRef> zs;
  for (auto g : c.rt.globals())
    zs.push_back(il(c, g));
  if (c.side == Side::A)
    for (auto f : c.rt.asm_only())
      zs.push_back(il(c, f));
  for (auto y : c.rt.params())
    zs.push_back(il(c, y));
  zs.push_back(il(c, c.rt.heap()));
  zs.push_back(il(c, c.rt.cl()));
  zs.push_back(il_cv(c));
  conj.push_back(eb::lnot(eb::contains(eb::set_union(zs), eb::bv(w, 0))));

  // pairwise disjointness of hp, cl, globals, asm-only, params, vrdc
  std::vector<ExprRef> ov;
  ov.push_back(il(c, c.rt.heap()));
  ov.push_back(il(c, c.rt.cl()));
  for (auto g : c.rt.globals())
    ov.push_back(il(c, g));
  if (c.side == Side::A)
    for (auto f : c.rt.asm_only())
      ov.push_back(il(c, f));
  for (auto y : c.rt.params())
    ov.push_back(il(c, y));
  if (ov.size() >= 2)
    conj.push_back(eb::lnot(eb::set_ov(ov)));

  // cv is separate from the common accessible regions
  if (!c.flags.cv_smallest) {
    std::vector<ExprRef> acc;
    for (auto g : c.rt.globals())
      acc.push_back(il(c, g));
    for (auto y : c.rt.params())
      acc.push_back(il(c, y));
    acc.push_back(il(c, c.rt.heap()));
    acc.push_back(il(c, c.rt.cl()));
    conj.push_back(eb::lnot(eb::set_ov({eb::set_union(acc), il_cv(c)})));
  }

  // vrdc, when present and non-empty, is an interval
  if (c.rt.has_vrdc()) {
    ExprRef v = il(c, c.rt.vrdc());
    conj.push_back(eb::lor({eb::set_is_empty(v), eb::set_is_interval(v)}));
  }

  // declared sizes and alignments
  auto sized = [&](RegionTable::Idx r) {
    const RegionId &rid = c.rt.get(r);
    if (rid.kind == RegionKind::Param && rid.name == "vrdc")
      return;
    conj.push_back(eb::eq(eb::set_size(il(c, r), w), eb::bv(w, rid.decl_size)));
    if (rid.decl_align > 1)
      conj.push_back(eb::aligned(eb::set_lb(il(c, r), w), (unsigned)rid.decl_align));
  };
  for (auto g : c.rt.globals())
    sized(g);
  for (auto y : c.rt.params())
    sized(y);
  if (c.side == Side::A)
    for (auto f : c.rt.asm_only())
      sized(f);

  return eb::land(std::move(conj));
}

ExprRef obey_cc(const Ctx &c, ExprRef base, const std::vector<uint64_t> &sizes,
                const std::vector<ExprRef> &addrs) {
  assert(sizes.size() == addrs.size());
  std::vector<ExprRef> conj;
  uint64_t off = 0;
  for (size_t i = 0; i < sizes.size(); i++) {
    conj.push_back(eb::eq(addrs[i], eb::add(base, eb::bv(c.width, off))));
    off += word_roundup(sizes[i], c.wordsz());
  }
  return eb::land(std::move(conj));
}

ExprRef stk_is_wf(const Ctx &c, ExprRef esp, ExprRef stk_e, ExprRef cs_e,
                  const std::vector<uint64_t> &param_sizes) {
  unsigned w = c.width;
  unsigned W = c.wordsz();
  std::vector<ExprRef> conj;
  ExprRef espW = eb::add(esp, eb::bv(w, W));
  conj.push_back(eb::aligned(espW, c.call_align));
  conj.push_back(eb::ule(esp, espW)); // return-address slot does not wrap
  // the return-address slot does not overlap accessible regions
  std::vector<ExprRef> acc;
  for (auto g : c.rt.globals())
    acc.push_back(il(c, g));
  for (auto f : c.rt.asm_only())
    acc.push_back(il(c, f));
  for (auto y : c.rt.params())
    acc.push_back(il(c, y));
  acc.push_back(il(c, c.rt.heap()));
  acc.push_back(il(c, c.rt.cl()));
  conj.push_back(eb::lnot(eb::set_ov({sized_interval(c, esp, W), eb::set_union(acc)})));
  // parameters laid out per the calling conventions right above esp
  std::vector<ExprRef> plbs;
  auto params = c.rt.params();
  std::vector<uint64_t> psizes = param_sizes;
  for (size_t i = 0; i < params.size(); i++) {
    const RegionId &rid = c.rt.get(params[i]);
    if (rid.name == "vrdc") {
      // vrdc, when non-empty, begins right after the named parameters
      uint64_t off = W;
      for (auto s : psizes)
        off += word_roundup(s, W);
      ExprRef v = il(c, params[i]);
      conj.push_back(eb::lor({eb::set_is_empty(v),
                              eb::eq(eb::set_lb(v, w), eb::add(esp, eb::bv(w, off)))}));
      continue;
    }
    plbs.push_back(eb::set_lb(il(c, params[i]), w));
  }
  if (!plbs.empty())
    conj.push_back(obey_cc(c, espW, psizes, plbs));
  conj.push_back(eb::ult(stk_e, cs_e));
  // caller stack does not overlap globals, asm-only regions or heap
  std::vector<ExprRef> gfh;
  for (auto g : c.rt.globals())
    gfh.push_back(il(c, g));
  for (auto f : c.rt.asm_only())
    gfh.push_back(il(c, f));
  gfh.push_back(il(c, c.rt.heap()));
  ExprRef csiv = eb::mk_interval(eb::add(stk_e, eb::bv(w, 1)), cs_e);
  conj.push_back(eb::lnot(eb::set_ov({csiv, eb::set_union(gfh)})));
  // callers' locals live inside the callers' stack interval
  conj.push_back(eb::subset(il(c, c.rt.cl()), csiv));
  return eb::land(std::move(conj));
}

ExprRef push_target_set(const Ctx &c) {
  // free u ((cv u Zlv) \ il[F]); cv drops out under cv-smallest
  std::vector<ExprRef> fs;
  for (auto f : c.rt.asm_only())
    fs.push_back(il(c, f));
  ExprRef fset = eb::set_union(std::move(fs));
  ExprRef cvzlv = eb::set_union(il_cv(c), zlv_union(c));
  return eb::set_union(free_set(c), eb::set_diff(cvzlv, fset));
}

ExprRef forbidden_load_set(const Ctx &c) {
  std::vector<ExprRef> fs;
  for (auto f : c.rt.asm_only())
    fs.push_back(il(c, f));
  ExprRef fset = eb::set_union(fs);
  if (c.flags.safety_relaxed) {
    ExprRef esp = eb::var(names::reg("esp"), Type::bv(c.width));
    ExprRef cse = eb::var(names::ghost("cs_e"), Type::bv(c.width));
    return eb::set_diff(zlv_union(c),
                        eb::set_union(fset, eb::mk_interval(esp, cse)));
  }
  ExprRef fstk = eb::set_union(
      {fset, il(c, c.rt.stk()), il(c, c.rt.cs())});
  ExprRef cvzlv = eb::set_union(il_cv(c), zlv_union(c));
  return eb::set_union(free_set(c), eb::set_diff(cvzlv, fstk));
}

ExprRef forbidden_store_set(const Ctx &c) {
  std::vector<ExprRef> fws, frs;
  for (auto f : c.rt.asm_only_rw())
    fws.push_back(il(c, f));
  for (auto f : c.rt.asm_only_ro())
    frs.push_back(il(c, f));
  ExprRef fw = eb::set_union(std::move(fws));
  ExprRef fr = eb::set_union(std::move(frs));
  if (c.flags.safety_relaxed) {
    ExprRef esp = eb::var(names::reg("esp"), Type::bv(c.width));
    ExprRef cse = eb::var(names::ghost("cs_e"), Type::bv(c.width));
    return eb::set_diff(zlv_union(c),
                        eb::set_union(fw, eb::mk_interval(esp, cse)));
  }
  std::vector<ExprRef> ro;
  ro.push_back(free_set(c));
  for (auto g : c.rt.globals_ro())
    ro.push_back(il(c, g));
  ro.push_back(fr);
  ExprRef base = eb::set_union(std::move(ro));
  ExprRef fwstk = eb::set_union({fw, il(c, c.rt.stk()), il(c, c.rt.cs())});
  ExprRef cvzlv = eb::set_union(il_cv(c), zlv_union(c));
  return eb::set_union(base, eb::set_diff(cvzlv, fwstk));
}

ExprRef ret_preserve_violation(const Ctx &c) {
  unsigned w = c.width;
  ExprRef esp = eb::var(names::reg("esp"), Type::bv(w));
  std::vector<ExprRef> viol;
  viol.push_back(eb::ne(eb::var(names::ghost("sp.entry"), Type::bv(w)), esp));
  for (auto *r : {"ebp", "esi", "edi", "ebx"})
    viol.push_back(eb::ne(eb::var(names::ghost(std::string("save.") + r), Type::bv(w)),
                          eb::var(names::reg(r), Type::bv(w))));
  ExprRef m = eb::var(names::mem(), Type::mem());
  viol.push_back(eb::ne(eb::var(names::ghost("eip"), Type::bv(w)),
                        eb::select(m, esp, c.wordsz())));
  if (!c.flags.safety_relaxed) {
    ExprRef cs = il(c, c.rt.cs());
    ExprRef mcs = eb::var(names::ghost("Mcs"), Type::mem());
    viol.push_back(eb::lnot(eb::eq(eb::mproj(cs, mcs), eb::mproj(cs, m))));
  }
  return eb::lor(std::move(viol));
}

ExprRef vret_val(const Ctx &c, unsigned ret_bytes) {
  ExprRef eax = eb::var(names::reg("eax"), Type::bv(c.width));
  ExprRef edx = eb::var(names::reg("edx"), Type::bv(c.width));
  unsigned bits = 8 * ret_bytes;
  if (bits == c.width)
    return eax;
  if (bits < c.width)
    return eb::extract(eax, bits - 1, 0);
  assert(bits == 2 * c.width);
  return eb::binary(Op::Concat, edx, eax);
}

std::pair<ExprRef, ExprRef> vget_val(const Ctx &c, unsigned ret_bytes,
                                     ExprRef v, ExprRef junk_a, ExprRef junk_d) {
  unsigned w = c.width;
  unsigned bits = 8 * ret_bytes;
  if (bits == w)
    return {v, junk_d};
  if (bits < w) {
    ExprRef eax = eb::binary(Op::Concat, eb::extract(junk_a, w - 1, bits), v);
    return {eax, junk_d};
  }
  assert(bits == 2 * w);
  return {eb::extract(v, w - 1, 0), eb::extract(v, 2 * w - 1, w)};
}

} // namespace sem

bool is_push(const BitVec &before, const BitVec &after, uint64_t threshold) {
  BitVec d = before.sub(after);
  return d.uval() >= 1 && d.uval() <= threshold;
}

uint64_t default_push_threshold(unsigned width) {
  return (uint64_t(1) << (width - 1)) - 1;
}

} // namespace tval
