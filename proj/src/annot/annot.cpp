#include "annot/annot.h"

#include <cassert>
#include <functional>
#include <sstream>

#include "core/semantics.h"
#include "core/state.h"
#include "ir/lower.h"

namespace tval {

std::string Annotation::str(const RegionTable &rt) const {
  std::ostringstream ss;
  switch (k) {
  case K::AllocS:
    ss << "alloc_s " << (addr ? addr->str() : "?") << ", "
       << (size ? size->str() : "?") << ", " << align << ", "
       << rt.get(site).name;
    break;
  case K::AllocV:
    ss << fresh_var << " = alloc_v " << (size ? size->str() : "?") << ", "
       << align << ", " << rt.get(site).name;
    break;
  case K::DeallocS:
    ss << "dealloc_s " << rt.get(site).name;
    break;
  case K::DeallocV:
    ss << "dealloc_v " << rt.get(site).name;
    break;
  case K::CallAnnot: {
    ss << "call " << callee << "(";
    for (size_t i = 0; i < arg_addrs.size(); i++) {
      if (i)
        ss << ", ";
      ss << arg_addrs[i]->str();
    }
    ss << ") obs={";
    for (size_t i = 0; i < observable.size(); i++) {
      if (i)
        ss << ",";
      ss << rt.name_of(observable[i]);
    }
    ss << "}";
    break;
  }
  }
  return ss.str();
}

namespace {

// Splice helper: builds an instruction chain between a node and the
// (detached) continuation of its original out-edges.
struct Splicer {
  TransitionGraph &g;
  sem::Ctx sc;
  int cur;
  std::string pc;
  int io_ctr;

  Splicer(TransitionGraph &g, int start, std::string pc, int io_base)
      : g(g), sc{*g.regions, g.side, g.width, g.flags, sem::call_alignment(g.width)},
        cur(start), pc(std::move(pc)), io_ctr(io_base) {}

  int node() { return g.add_node(NodeKind::Plain, pc + "'"); }

  void step(GInstr in, int io = -1) {
    int n = node();
    int e = g.add_edge(cur, n, std::move(in), pc, io);
    g.edges[e].from_annot = true;
    cur = n;
  }

  void step_to(GInstr in, int target, int io = -1) {
    int e = g.add_edge(cur, target, std::move(in), pc, io);
    g.edges[e].from_annot = true;
    cur = target;
  }

  void err_check(ExprRef errcond, ErrCode err, CheckInfo ci = {}) {
    if (errcond->op == Op::Const && !errcond->cval.b())
      return;
    int h = g.add_node(NodeKind::Plain, pc + "!" + err_str(err));
    ci.polarity = true;
    int e1 = g.add_edge(cur, h, GInstr::guard(errcond), pc);
    g.edges[e1].check = ci;
    g.edges[e1].from_annot = true;
    int e2 = g.add_edge(h, err == ErrCode::U ? g.unode : g.wnode,
                        GInstr::halt(err), pc);
    g.edges[e2].from_annot = true;
    int cont = node();
    CheckInfo c2 = ci;
    c2.polarity = false;
    int e3 = g.add_edge(cur, cont, GInstr::guard(eb::lnot(errcond)), pc);
    g.edges[e3].check = c2;
    g.edges[e3].from_annot = true;
    cur = cont;
  }
};

int next_io_group(const TransitionGraph &g) {
  int m = 0;
  for (auto &e : g.edges)
    m = std::max(m, e.io_group + 1);
  return m;
}

void emit_alloc_s(Splicer &S, const Annotation &an, int cont) {
  auto &g = S.g;
  auto &rt = *g.regions;
  unsigned d = g.width;
  bool zl = rt.get(an.site).zclass == SiteClass::Zl;

  EvDesc begin;
  begin.kind = EvKind::AllocBegin;
  begin.site = an.site;
  begin.vals = {an.size};
  begin.align = an.align;
  S.step(GInstr::write_io(begin), S.io_ctr++);

  std::string vv = "v.__as." + an.pc;
  std::string wv = "v.__aw." + an.pc;
  S.step(GInstr::assign({vv, wv}, {an.addr, an.size}));
  ExprRef v = eb::var(vv, Type::bv(d));
  ExprRef w = eb::var(wv, Type::bv(d));
  ExprRef end = eb::sub(eb::add(v, w), eb::bv(d, 1));

  S.err_check(eb::lnot(sem::intrvl_in_set_aligned(S.sc, v, end,
                                                  sem::il(S.sc, rt.stk()),
                                                  an.align)),
              ErrCode::U);
  {
    CheckInfo ci;
    ci.kind = CheckKind::AllocSOv;
    ci.ops = {v, w};
    ci.site = an.site;
    ExprRef cvzlv = eb::set_union(sem::il_cv(S.sc), sem::zlv_union(S.sc));
    S.err_check(eb::set_ov({eb::mk_interval(v, end), cvzlv}), ErrCode::W, ci);
  }
  if (zl) {
    S.step(GInstr::assign(
        {names::il(rt, rt.stk()), names::ilzs(rt, an.site)},
        {eb::set_diff(sem::il(S.sc, rt.stk()), eb::mk_interval(v, end)),
         eb::set_union(sem::il_zs(S.sc, an.site), eb::mk_interval(v, end))}));
  } else {
    S.step(GInstr::assign(
        {names::il(rt, rt.stk()), names::il(rt, an.site)},
        {eb::set_diff(sem::il(S.sc, rt.stk()), eb::mk_interval(v, end)),
         eb::set_union(sem::il(S.sc, an.site), eb::mk_interval(v, end))}));
  }
  EvDesc endev;
  endev.kind = EvKind::AllocEnd;
  endev.site = an.site;
  endev.vals = {v, end};
  endev.set = eb::mk_interval(v, end);
  endev.mem = eb::var(names::mem(), Type::mem());
  S.step_to(GInstr::write_io(endev), cont, S.io_ctr++);
}

void emit_alloc_v(Splicer &S, const Annotation &an, int cont) {
  auto &g = S.g;
  auto &rt = *g.regions;
  unsigned d = g.width;
  assert(rt.get(an.site).zclass == SiteClass::Zl &&
         "virtual allocation is only defined for declaration sites");

  EvDesc begin;
  begin.kind = EvKind::AllocBegin;
  begin.site = an.site;
  begin.vals = {an.size};
  begin.align = an.align;
  S.step(GInstr::write_io(begin), S.io_ctr++);

  std::string vv = names::var(an.fresh_var);
  {
    GInstr ch = GInstr::choose({vv}, {Type::bv(d)}, ChooseHint::AllocAddr);
    ch.hint_size = an.size;
    ch.hint_align = an.align;
    S.step(std::move(ch));
  }
  std::string wv = "v.__aw." + an.pc;
  S.step(GInstr::assign({wv}, {an.size}));
  ExprRef v = eb::var(vv, Type::bv(d));
  ExprRef w = eb::var(wv, Type::bv(d));
  ExprRef end = eb::sub(eb::add(v, w), eb::bv(d, 1));

  {
    CheckInfo ci;
    ci.kind = CheckKind::AllocVContained;
    ci.ops = {v, w};
    ci.site = an.site;
    std::vector<ExprRef> bs;
    for (auto r : rt.common())
      bs.push_back(sem::il(S.sc, r));
    bs.push_back(sem::il_cv(S.sc));
    ExprRef target = eb::set_comp(eb::set_union(std::move(bs)));
    S.err_check(eb::lnot(sem::intrvl_in_set_aligned(S.sc, v, end, target, an.align)),
                ErrCode::W, ci);
  }
  S.step(GInstr::assign({names::ilzv(rt, an.site)},
                        {eb::set_union(sem::il_zv(S.sc, an.site),
                                       eb::mk_interval(v, end))}));
  EvDesc endev;
  endev.kind = EvKind::AllocEnd;
  endev.site = an.site;
  endev.vals = {v, end};
  endev.set = eb::mk_interval(v, end);
  endev.mem = eb::var(names::mem(), Type::mem());
  S.step_to(GInstr::write_io(endev), cont, S.io_ctr++);
}

void emit_dealloc_s(Splicer &S, const Annotation &an, int cont) {
  auto &g = S.g;
  auto &rt = *g.regions;
  bool zl = rt.get(an.site).zclass == SiteClass::Zl;
  if (zl) {
    S.err_check(eb::lnot(eb::set_is_empty(sem::il_zv(S.sc, an.site))),
                ErrCode::U);
    S.step(GInstr::assign(
        {names::ilzs(rt, an.site), names::il(rt, rt.stk())},
        {eb::emptyset(),
         eb::set_union(sem::il(S.sc, rt.stk()), sem::il_zs(S.sc, an.site))}));
  } else {
    S.step(GInstr::assign(
        {names::il(rt, an.site), names::il(rt, rt.stk())},
        {eb::emptyset(),
         eb::set_union(sem::il(S.sc, rt.stk()), sem::il(S.sc, an.site))}));
  }
  EvDesc ev;
  ev.kind = EvKind::Dealloc;
  ev.site = an.site;
  S.step_to(GInstr::write_io(ev), cont, S.io_ctr++);
}

void emit_dealloc_v(Splicer &S, const Annotation &an, int cont) {
  auto &g = S.g;
  auto &rt = *g.regions;
  S.err_check(eb::lnot(eb::set_is_empty(sem::il_zs(S.sc, an.site))), ErrCode::U);
  S.step(GInstr::assign({names::ilzv(rt, an.site)}, {eb::emptyset()}));
  EvDesc ev;
  ev.kind = EvKind::Dealloc;
  ev.site = an.site;
  S.step_to(GInstr::write_io(ev), cont, S.io_ctr++);
}

void emit_call(Splicer &S, const Annotation &an, int cont) {
  auto &g = S.g;
  auto &rt = *g.regions;
  unsigned d = g.width;
  ExprRef esp = eb::var(names::reg("esp"), Type::bv(d));

  ExprRef ok = eb::land({eb::aligned(esp, S.sc.call_align),
                         sem::obey_cc(S.sc, esp, an.arg_sizes, an.arg_addrs)});
  S.err_check(eb::lnot(ok), ErrCode::U);

  EvDesc ev;
  ev.kind = EvKind::Call;
  ev.callee = an.callee;
  ev.vals = an.arg_addrs;
  ev.regions = an.observable;
  ev.set = sem::il_union(S.sc, an.observable);
  ev.mem = eb::var(names::mem(), Type::mem());
  S.step(GInstr::write_io(ev), S.io_ctr++);

  std::vector<RegionTable::Idx> writable;
  for (auto r : an.observable)
    if (!(rt.get(r).kind == RegionKind::Global && rt.get(r).read_only))
      writable.push_back(r);
  {
    int mg = S.io_ctr++;
    S.step(GInstr::read_io({"v.__cm." + an.pc}, {Type::mem()}, "mem"), mg);
    S.step(GInstr::assign({names::mem()},
                          {eb::mupd(sem::il_union(S.sc, writable),
                                    eb::var(names::mem(), Type::mem()),
                                    eb::var("v.__cm." + an.pc, Type::mem()))}),
           mg);
  }
  if (an.ret_bits == 0) {
    S.step_to(GInstr::choose({names::reg("ecx"), names::reg("eax"), names::reg("edx")},
                             {Type::bv(d), Type::bv(d), Type::bv(d)}),
              cont);
  } else {
    S.step(GInstr::choose({names::reg("ecx"), "v.__ja." + an.pc, "v.__jd." + an.pc},
                          {Type::bv(d), Type::bv(d), Type::bv(d)}));
    std::string rv = "v.__rv." + an.pc;
    S.step(GInstr::read_io({rv}, {Type::bv(an.ret_bits)},
                           "bv" + std::to_string(an.ret_bits)),
           S.io_ctr++);
    auto [eax, edx] = sem::vget_val(S.sc, an.ret_bits / 8,
                                    eb::var(rv, Type::bv(an.ret_bits)),
                                    eb::var("v.__ja." + an.pc, Type::bv(d)),
                                    eb::var("v.__jd." + an.pc, Type::bv(d)));
    S.step_to(GInstr::assign({names::reg("eax"), names::reg("edx")}, {eax, edx}),
              cont);
  }
}

} // namespace

TransitionGraph apply_annotations(const TransitionGraph &ga,
                                  const std::vector<Annotation> &anns) {
  TransitionGraph g = ga;
  int io = next_io_group(g);

  // (de)alloc annotations grouped by node, applied in list order; the
  // insertion point threads through the group
  std::map<int, int> insert_at; // original node -> current splice point
  for (auto &an : anns) {
    if (an.k == Annotation::K::CallAnnot) {
      assert(an.stub_edge >= 0 && an.stub_edge < (int)g.edges.size());
      GEdge &stub = g.edges[an.stub_edge];
      assert(stub.instr.k == GiKind::CallStub);
      int to = stub.to;
      // the stub becomes the first (empty) step of the expansion
      int mid = g.add_node(NodeKind::Plain, an.pc + "'");
      stub.to = mid;
      stub.instr = GInstr::assign({}, {});
      stub.io_group = -1;
      stub.from_annot = true;
      Splicer S(g, mid, an.pc, io);
      emit_call(S, an, to);
      io = S.io_ctr;
      continue;
    }
    int n = an.node;
    auto it = insert_at.find(n);
    int at = it == insert_at.end() ? n : it->second;
    // detach the out-edges of `at`, splice the expansion, reattach
    int tail = g.add_node(NodeKind::Plain, an.pc + "~");
    for (auto &e : g.edges)
      if (e.from == at)
        e.from = tail;
    Splicer S(g, at, an.pc, io);
    switch (an.k) {
    case Annotation::K::AllocS:
      emit_alloc_s(S, an, tail);
      break;
    case Annotation::K::AllocV:
      emit_alloc_v(S, an, tail);
      break;
    case Annotation::K::DeallocS:
      emit_dealloc_s(S, an, tail);
      break;
    case Annotation::K::DeallocV:
      emit_dealloc_v(S, an, tail);
      break;
    default:
      break;
    }
    io = S.io_ctr;
    insert_at[n] = tail;
  }
  return g;
}

namespace {

void rewrite_instr_exprs(GInstr &in,
                         const std::function<ExprRef(const ExprRef &)> &f) {
  for (auto &e : in.exprs)
    e = f(e);
  if (in.cond)
    in.cond = f(in.cond);
  if (in.hint_size)
    in.hint_size = f(in.hint_size);
  for (auto &e : in.ev.vals)
    e = f(e);
  if (in.ev.set)
    in.ev.set = f(in.ev.set);
  if (in.ev.mem)
    in.ev.mem = f(in.ev.mem);
}

} // namespace

TransitionGraph apply_cv_smallest(const TransitionGraph &gin) {
  TransitionGraph g = gin;
  if (g.flags.cv_smallest)
    return g;
  g.flags.cv_smallest = true;
  std::string cvname = names::il(*g.regions, g.regions->cv());
  std::vector<std::pair<std::string, ExprRef>> sub = {{cvname, eb::emptyset()}};
  for (auto &e : g.edges) {
    if (e.instr.k == GiKind::ReadIO && e.instr.iokind.rfind("esets", 0) == 0) {
      // drop the cv read target and refresh the layout descriptor
      for (size_t i = 0; i < e.instr.targets.size(); i++)
        if (e.instr.targets[i] == cvname) {
          e.instr.targets.erase(e.instr.targets.begin() + i);
          e.instr.types.erase(e.instr.types.begin() + i);
          break;
        }
      e.instr.iokind = entry_sets_kind(*g.regions, g.flags);
    }
    rewrite_instr_exprs(e.instr,
                        [&](const ExprRef &x) { return subst_vars(x, sub); });
    for (auto &op : e.check.ops)
      op = subst_vars(op, sub);
  }
  return g;
}

TransitionGraph apply_safety_relaxed(const TransitionGraph &gin) {
  TransitionGraph g = gin;
  assert(g.side == Side::A);
  if (g.flags.safety_relaxed)
    return g;
  g.flags.safety_relaxed = true;
  sem::Ctx sc{*g.regions, g.side, g.width, g.flags, sem::call_alignment(g.width)};
  for (auto &e : g.edges) {
    if (e.check.kind == CheckKind::None || e.instr.k != GiKind::Guard)
      continue;
    ExprRef bad;
    switch (e.check.kind) {
    case CheckKind::LoadOv:
      bad = eb::lor({eb::lnot(sem::is_aligned_intrvl(sc, e.check.ops[0],
                                                     e.check.w, e.check.align)),
                     eb::set_ov({sem::sized_interval(sc, e.check.ops[0], e.check.w),
                                 sem::forbidden_load_set(sc)})});
      break;
    case CheckKind::StoreOv:
      bad = eb::lor({eb::lnot(sem::is_aligned_intrvl(sc, e.check.ops[0],
                                                     e.check.w, e.check.align)),
                     eb::set_ov({sem::sized_interval(sc, e.check.ops[0], e.check.w),
                                 sem::forbidden_store_set(sc)})});
      break;
    case CheckKind::RetPreserve:
      bad = sem::ret_preserve_violation(sc);
      break;
    default:
      continue;
    }
    e.instr.cond = e.check.polarity ? bad : eb::lnot(bad);
  }
  return g;
}

} // namespace tval
