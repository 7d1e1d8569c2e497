#include "asmf/lower.h"

#include <cassert>

#include "core/semantics.h"
#include "core/state.h"
#include "ir/lower.h" // entry_sets_kind / entry_set_regions

namespace tval {

namespace {

struct ALower {
  const AsmProgram &prog;
  const AsmProcedure &proc;
  TransitionGraph g;
  sem::Ctx sc;
  unsigned d, W;
  uint64_t K;
  const AsmLowerConfig &cfg;
  int io_ctr = 0;
  int cur = -1;
  std::map<std::string, int> label_node;
  std::vector<std::pair<std::string, ExprRef>> sym_subst;

  ALower(const AsmProgram &prog, const AsmProcedure &proc,
         std::shared_ptr<RegionTable> rt, unsigned width, SemFlags flags,
         const AsmLowerConfig &cfg)
      : prog(prog), proc(proc),
        sc{*rt, Side::A, width, flags, sem::call_alignment(width)}, d(width),
        W(width / 8),
        K(cfg.push_threshold ? cfg.push_threshold : default_push_threshold(width)),
        cfg(cfg) {
    g.side = Side::A;
    g.width = width;
    g.flags = flags;
    g.regions = std::move(rt);
    g.proc_name = proc.name;
    g.variadic = proc.variadic;
    for (auto s : proc.param_sizes)
      g.param_sizes.push_back((unsigned)s);
    g.ret_size = proc.ret_size;
  }

  const RegionTable &rt() const { return sc.rt; }

  int node(const std::string &label) { return g.add_node(NodeKind::Plain, label); }

  int label_entry(const std::string &label) {
    auto it = label_node.find(label);
    if (it != label_node.end())
      return it->second;
    int n = node(label);
    label_node[label] = n;
    return n;
  }

  void step(GInstr in, const std::string &pc, int io = -1) {
    int n = node(pc + "'");
    g.add_edge(cur, n, std::move(in), pc, io);
    cur = n;
  }

  void step_to(GInstr in, int target, const std::string &pc, int io = -1) {
    g.add_edge(cur, target, std::move(in), pc, io);
    cur = target;
  }

  void err_check(ExprRef errcond, ErrCode err, const std::string &pc,
                 CheckInfo ci = {}) {
    if (errcond->op == Op::Const && !errcond->cval.b())
      return;
    int h = node(pc + "!" + err_str(err));
    ci.polarity = true;
    int e1 = g.add_edge(cur, h, GInstr::guard(errcond), pc);
    g.edges[e1].check = ci;
    g.add_edge(h, err == ErrCode::U ? g.unode : g.wnode, GInstr::halt(err), pc);
    int cont = node(pc + "'");
    CheckInfo c2 = ci;
    c2.polarity = false;
    int e2 = g.add_edge(cur, cont, GInstr::guard(eb::lnot(errcond)), pc);
    g.edges[e2].check = c2;
    cur = cont;
  }

  ExprRef reg(const std::string &r) { return eb::var(names::reg(r), Type::bv(d)); }
  ExprRef M() { return eb::var(names::mem(), Type::mem()); }

  ExprRef fix(ExprRef e) { return subst_vars(e, sym_subst); }

  // UB conditions inside an operand expression (division by zero,
  // oversized shifts by non-constant amounts)
  void collect_ub(const ExprRef &e, std::vector<ExprRef> &out,
                  std::set<const Expr *> &seen) {
    if (!seen.insert(e.get()).second)
      return;
    for (auto &a : e->args)
      collect_ub(a, out, seen);
    switch (e->op) {
    case Op::UDiv: case Op::SDiv: case Op::URem: case Op::SRem:
      if (!(e->args[1]->op == Op::Const && !e->args[1]->cval.bv().is_zero()))
        out.push_back(eb::eq(e->args[1], eb::bv(e->args[1]->ty.width, 0)));
      break;
    case Op::Shl: case Op::LShr: case Op::AShr:
      if (e->args[1]->op == Op::Const) {
        if (e->args[1]->cval.bv().uval() >= e->args[0]->ty.width)
          out.push_back(eb::btrue());
      } else {
        out.push_back(eb::binary(Op::Uge, e->args[1],
                                 eb::bv(e->args[1]->ty.width, e->args[0]->ty.width)));
      }
      break;
    default:
      break;
    }
  }

  void ub_guard(const ExprRef &e, const std::string &pc) {
    std::vector<ExprRef> ubs;
    std::set<const Expr *> seen;
    collect_ub(e, ubs, seen);
    if (!ubs.empty())
      err_check(eb::lor(std::move(ubs)), ErrCode::U, pc);
  }

  void entry();
  void esp_update(const std::string &pc, ExprRef texpr, int next);
  void load_store(const AsmInstr &ins, int next);
  void instr(size_t idx);
  TransitionGraph run();
};

void ALower::entry() {
  cur = g.start;
  const std::string pc = "entry";

  auto regions = entry_set_regions(rt(), g.flags);
  std::vector<std::string> tgts;
  std::vector<Type> tys;
  for (auto r : regions) {
    tgts.push_back(names::il(rt(), r));
    tys.push_back(Type::set());
  }
  step(GInstr::read_io(tgts, tys, entry_sets_kind(rt(), g.flags)), pc, io_ctr++);

  // symbol-table regions, empty allocation sites, access ghosts
  {
    std::vector<std::string> ts;
    std::vector<ExprRef> es;
    for (auto f : rt().asm_only()) {
      const RegionId &rid = rt().get(f);
      ts.push_back(names::il(rt(), f));
      es.push_back(eb::cst(
          Value(AddrSet::interval(rid.fixed_addr, rid.fixed_addr + rid.decl_size - 1))));
    }
    for (auto z : rt().sites()) {
      if (rt().get(z).zclass == SiteClass::Zl) {
        ts.push_back(names::ilzs(rt(), z));
        es.push_back(eb::emptyset());
        ts.push_back(names::ilzv(rt(), z));
        es.push_back(eb::emptyset());
      } else {
        ts.push_back(names::il(rt(), z));
        es.push_back(eb::emptyset());
      }
    }
    ts.push_back(names::ghost("rdAcc"));
    es.push_back(eb::emptyset());
    ts.push_back(names::ghost("wrAcc"));
    es.push_back(eb::emptyset());
    if (g.flags.cv_smallest) {
      ts.push_back(names::il(rt(), rt().cv()));
      es.push_back(eb::emptyset());
    }
    step(GInstr::assign(ts, es), pc);
  }

  err_check(eb::lnot(sem::addr_sets_wf(sc)), ErrCode::W, pc,
            [] { CheckInfo c; c.kind = CheckKind::EntryAddrSetsWF; return c; }());

  step(GInstr::choose({names::mem()}, {Type::mem()}, ChooseHint::MemContents), pc);
  {
    int mg = io_ctr++;
    step(GInstr::read_io({"v.__m0"}, {Type::mem()}, "mem"), pc, mg);
    step(GInstr::assign({names::mem()},
                        {eb::mupd(sem::il_union(sc, rt().common()), M(),
                                  eb::var("v.__m0", Type::mem()))}),
         pc, mg);
  }

  for (auto r : rt().globals_ro())
    step(GInstr::assign({names::mem()},
                        {eb::mupd(sem::il(sc, r), M(),
                                  eb::romem(r, eb::set_lb(sem::il(sc, r), d),
                                            rt().get(r).ro_init))}),
         pc);
  for (auto f : rt().asm_only_ro()) {
    const RegionId &rid = rt().get(f);
    step(GInstr::assign({names::mem()},
                        {eb::mupd(sem::il(sc, f), M(),
                                  eb::romem(f, eb::bv(d, rid.fixed_addr),
                                            rid.ro_init))}),
         pc);
  }

  // registers and flags start arbitrary
  {
    std::vector<std::string> ts;
    std::vector<Type> tys2;
    for (auto *r : kAsmRegs) {
      ts.push_back(names::reg(r));
      tys2.push_back(Type::bv(d));
    }
    for (auto *f : {"zf", "slf", "ulf"}) {
      ts.push_back(names::reg(f));
      tys2.push_back(Type::bv(1));
    }
    step(GInstr::choose(ts, tys2, ChooseHint::EntryRegs), pc);
  }

  ExprRef esp = reg("esp");
  ExprRef stk_e = eb::var(names::ghost("stk_e"), Type::bv(d));
  ExprRef cs_e = eb::var(names::ghost("cs_e"), Type::bv(d));
  {
    ExprRef ily = sem::il_union(sc, rt().params());
    ExprRef end = eb::ite(eb::set_is_empty(ily),
                          eb::add(esp, eb::bv(d, W - 1)), eb::set_ub(ily, d));
    step(GInstr::assign({names::ghost("stk_e")}, {end}), pc);
  }
  step(GInstr::choose({names::ghost("cs_e")}, {Type::bv(d)}, ChooseHint::CsE), pc);

  err_check(eb::lnot(sem::stk_is_wf(sc, esp, stk_e, cs_e,
                                    std::vector<uint64_t>(g.param_sizes.begin(),
                                                          g.param_sizes.end()))),
            ErrCode::W, pc,
            [] { CheckInfo c; c.kind = CheckKind::EntryStkWF; return c; }());

  {
    ExprRef ily = sem::il_union(sc, rt().params());
    step(GInstr::assign(
             {names::il(rt(), rt().stk()), names::il(rt(), rt().cs())},
             {eb::set_diff(eb::mk_interval(esp, stk_e), ily),
              eb::set_diff(eb::mk_interval(eb::add(stk_e, eb::bv(d, 1)), cs_e),
                           sem::il(sc, rt().cl()))}),
         pc);
  }
  {
    std::vector<std::string> ts = {names::ghost("sp.entry"), names::ghost("Mcs")};
    std::vector<ExprRef> es = {esp, eb::mproj(sem::il(sc, rt().cs()), M())};
    for (auto *r : {"ebp", "esi", "edi", "ebx"}) {
      ts.push_back(names::ghost(std::string("save.") + r));
      es.push_back(reg(r));
    }
    ts.push_back(names::ghost("eip"));
    es.push_back(eb::select(M(), esp, W));
    for (auto f : rt().asm_only()) {
      const RegionId &rid = rt().get(f);
      ts.push_back(names::ghost("sz." + rt().name_of(f)));
      es.push_back(eb::bv(d, rid.decl_size));
      ts.push_back(names::ghost("empty." + rt().name_of(f)));
      es.push_back(eb::bfalse());
      ts.push_back(names::ghost("lb." + rt().name_of(f)));
      es.push_back(eb::bv(d, rid.fixed_addr));
      ts.push_back(names::ghost("ub." + rt().name_of(f)));
      es.push_back(eb::bv(d, rid.fixed_addr + rid.decl_size - 1));
    }
    step(GInstr::assign(ts, es), pc);
  }

  // arbitrary defaults for per-pc stackpointer ghosts
  {
    std::vector<std::string> ts;
    std::vector<Type> tys3;
    for (auto &i : proc.body) {
      bool writes_esp = (i.k == AsmInstr::K::RegAssign && i.reg == "esp") ||
                        i.k == AsmInstr::K::Push || i.k == AsmInstr::K::Pop ||
                        (i.k == AsmInstr::K::Load && i.reg == "esp");
      if (writes_esp) {
        ts.push_back(names::ghost("sp." + i.label));
        tys3.push_back(Type::bv(d));
      }
    }
    if (!ts.empty())
      step(GInstr::choose(ts, tys3), pc);
  }

  assert(!proc.body.empty());
  step_to(GInstr::assign({}, {}), label_entry(proc.body.front().label), pc);
}

void ALower::esp_update(const std::string &pc, ExprRef texpr, int next) {
  std::string tv = "v.__t." + pc;
  step(GInstr::assign({tv}, {texpr}), pc);
  ExprRef t = eb::var(tv, Type::bv(d));
  ExprRef esp = reg("esp");
  ExprRef dd = eb::sub(esp, t);

  ExprRef is_push_e;
  auto hint = cfg.push_hints.find(pc);
  if (hint != cfg.push_hints.end()) {
    is_push_e = eb::boolean(hint->second);
  } else {
    is_push_e = eb::land({eb::ule(eb::bv(d, 1), dd), eb::ule(dd, eb::bv(d, K))});
  }
  // static classification for constant update distances
  if (texpr->op == Op::Sub && texpr->args[0]->op == Op::Var &&
      texpr->args[0]->name == names::reg("esp") &&
      texpr->args[1]->op == Op::Const) {
    uint64_t dc = texpr->args[1]->cval.bv().uval();
    is_push_e = eb::boolean(dc >= 1 && dc <= K);
  } else if (texpr->op == Op::Add && texpr->args[0]->op == Op::Var &&
             texpr->args[0]->name == names::reg("esp") &&
             texpr->args[1]->op == Op::Const) {
    uint64_t dc = BitVec(d, 0).sub(BitVec(d, texpr->args[1]->cval.bv().uval())).uval();
    is_push_e = eb::boolean(dc >= 1 && dc <= K);
  }

  int join = node(pc + "'");
  ExprRef espm1 = eb::sub(esp, eb::bv(d, 1));
  ExprRef tm1 = eb::sub(t, eb::bv(d, 1));

  auto push_branch = [&](int from) {
    int save = cur;
    cur = from;
    CheckInfo ci;
    ci.kind = CheckKind::PushContained;
    ci.ops = {t};
    err_check(eb::lnot(sem::intrvl_in_set(sc, t, espm1, sem::push_target_set(sc))),
              ErrCode::W, pc, ci);
    step(GInstr::assign({names::il(rt(), rt().stk())},
                        {eb::set_union(sem::il(sc, rt().stk()),
                                       eb::mk_interval(t, espm1))}),
         pc);
    std::string mv = "v.__pm." + pc;
    step(GInstr::choose({mv}, {Type::mem()}, ChooseHint::MemContents), pc);
    step(GInstr::assign({names::mem()},
                        {eb::mupd(eb::mk_interval(t, espm1), M(),
                                  eb::var(mv, Type::mem()))}),
         pc);
    step_to(GInstr::assign({}, {}), join, pc);
    cur = save;
  };
  auto pop_branch = [&](int from) {
    int save = cur;
    cur = from;
    err_check(eb::lnot(sem::intrvl_in_set(sc, esp, tm1, sem::il(sc, rt().stk()))),
              ErrCode::U, pc);
    step(GInstr::assign({names::il(rt(), rt().stk())},
                        {eb::set_diff(sem::il(sc, rt().stk()),
                                      eb::mk_interval(esp, tm1))}),
         pc);
    step_to(GInstr::assign({}, {}), join, pc);
    cur = save;
  };

  if (is_push_e->op == Op::Const) {
    if (is_push_e->cval.b()) {
      push_branch(cur);
    } else {
      // constant pop (or esp-preserving update)
      bool is_nop = texpr->op == Op::Var && texpr->name == names::reg("esp");
      if (is_nop) {
        int save = cur;
        cur = save;
        step_to(GInstr::assign({}, {}), join, pc);
      } else {
        pop_branch(cur);
      }
    }
  } else {
    int pushn = node(pc + "+");
    int popn = node(pc + "-");
    int skipn = node(pc + "=");
    g.add_edge(cur, pushn, GInstr::guard(is_push_e), pc);
    g.add_edge(cur, popn,
               GInstr::guard(eb::land({eb::lnot(is_push_e), eb::ne(t, esp)})), pc);
    g.add_edge(cur, skipn,
               GInstr::guard(eb::land({eb::lnot(is_push_e), eb::eq(t, esp)})), pc);
    push_branch(pushn);
    pop_branch(popn);
    cur = skipn;
    step_to(GInstr::assign({}, {}), join, pc);
  }
  cur = join;
  step_to(GInstr::assign({names::reg("esp"), names::ghost("sp." + pc)}, {t, t}),
          next, pc);
}

void ALower::load_store(const AsmInstr &ins, int next) {
  const std::string &pc = ins.label;
  ExprRef p = fix(ins.expr);
  ub_guard(p, pc);
  unsigned w = ins.w, a = ins.align ? ins.align : ins.w;
  if (ins.k == AsmInstr::K::Load) {
    CheckInfo ci;
    ci.kind = CheckKind::LoadOv;
    ci.ops = {p};
    ci.w = w;
    ci.align = a;
    ExprRef bad = eb::lor(
        {eb::lnot(sem::is_aligned_intrvl(sc, p, w, a)),
         eb::set_ov({sem::sized_interval(sc, p, w), sem::forbidden_load_set(sc)})});
    err_check(bad, ErrCode::U, pc, ci);
    ExprRef v = eb::select(M(), p, w);
    if (8 * w < d)
      v = eb::zext(v, d);
    step_to(GInstr::assign({names::reg(ins.reg), names::ghost("rdAcc")},
                           {v, eb::set_union(eb::var(names::ghost("rdAcc"), Type::set()),
                                             sem::sized_interval(sc, p, w))}),
            next, pc);
  } else {
    ExprRef v = fix(ins.val);
    ub_guard(v, pc);
    CheckInfo ci;
    ci.kind = CheckKind::StoreOv;
    ci.ops = {p};
    ci.w = w;
    ci.align = a;
    ExprRef bad = eb::lor(
        {eb::lnot(sem::is_aligned_intrvl(sc, p, w, a)),
         eb::set_ov({sem::sized_interval(sc, p, w), sem::forbidden_store_set(sc)})});
    err_check(bad, ErrCode::U, pc, ci);
    ExprRef sv = 8 * w < d ? eb::extract(v, 8 * w - 1, 0) : v;
    step_to(GInstr::assign({names::mem(), names::ghost("wrAcc")},
                           {eb::mstore(M(), p, w, sv),
                            eb::set_union(eb::var(names::ghost("wrAcc"), Type::set()),
                                          sem::sized_interval(sc, p, w))}),
            next, pc);
  }
}

void ALower::instr(size_t idx) {
  const AsmInstr &ins = proc.body[idx];
  cur = label_entry(ins.label);
  const std::string &pc = ins.label;
  bool has_next = !(ins.k == AsmInstr::K::Ret || ins.k == AsmInstr::K::Jmp);
  int next = -1;
  if (has_next) {
    assert(idx + 1 < proc.body.size() && "fall off the end of procedure");
    next = label_entry(proc.body[idx + 1].label);
  }

  switch (ins.k) {
  case AsmInstr::K::RegAssign: {
    ExprRef e = fix(ins.expr);
    ub_guard(e, pc);
    if (ins.reg == "esp") {
      esp_update(pc, e, next);
    } else {
      step_to(GInstr::assign({names::reg(ins.reg)}, {e}), next, pc);
    }
    return;
  }
  case AsmInstr::K::Load:
  case AsmInstr::K::Store:
    load_store(ins, next);
    return;
  case AsmInstr::K::Push: {
    unsigned k = (unsigned)ins.regs.size();
    // the push instruction: one esp decrement plus k stores
    std::string tv = "v.__t." + pc;
    ExprRef esp = reg("esp");
    ExprRef t = eb::sub(esp, eb::bv(d, k * W));
    step(GInstr::assign({tv}, {t}), pc);
    ExprRef tvv = eb::var(tv, Type::bv(d));
    ExprRef espm1 = eb::sub(esp, eb::bv(d, 1));
    CheckInfo ci;
    ci.kind = CheckKind::PushContained;
    ci.ops = {tvv};
    err_check(eb::lnot(sem::intrvl_in_set(sc, tvv, espm1, sem::push_target_set(sc))),
              ErrCode::W, pc, ci);
    step(GInstr::assign({names::il(rt(), rt().stk())},
                        {eb::set_union(sem::il(sc, rt().stk()),
                                       eb::mk_interval(tvv, espm1))}),
         pc);
    std::string mv = "v.__pm." + pc;
    step(GInstr::choose({mv}, {Type::mem()}, ChooseHint::MemContents), pc);
    step(GInstr::assign({names::mem()},
                        {eb::mupd(eb::mk_interval(tvv, espm1), M(),
                                  eb::var(mv, Type::mem()))}),
         pc);
    step(GInstr::assign({names::reg("esp"), names::ghost("sp." + pc)}, {tvv, tvv}),
         pc);
    // store r_i at esp + (k-1-i)*W
    for (unsigned i = 0; i < k; i++) {
      ExprRef addr = eb::add(reg("esp"), eb::bv(d, (k - 1 - i) * W));
      ExprRef sv = reg(ins.regs[i]);
      step(GInstr::assign({names::mem(), names::ghost("wrAcc")},
                          {eb::mstore(M(), addr, W, sv),
                           eb::set_union(eb::var(names::ghost("wrAcc"), Type::set()),
                                         sem::sized_interval(sc, addr, W))}),
           pc);
    }
    step_to(GInstr::assign({}, {}), next, pc);
    return;
  }
  case AsmInstr::K::Pop: {
    unsigned k = (unsigned)ins.regs.size();
    // loads below the increment; each load is checked like any other
    for (unsigned i = 0; i < k; i++) {
      ExprRef addr = eb::add(reg("esp"), eb::bv(d, i * W));
      CheckInfo ci;
      ci.kind = CheckKind::LoadOv;
      ci.ops = {addr};
      ci.w = W;
      ci.align = W;
      ExprRef bad = eb::lor(
          {eb::lnot(sem::is_aligned_intrvl(sc, addr, W, W)),
           eb::set_ov({sem::sized_interval(sc, addr, W), sem::forbidden_load_set(sc)})});
      err_check(bad, ErrCode::U, pc, ci);
      step(GInstr::assign({names::reg(ins.regs[i]), names::ghost("rdAcc")},
                          {eb::select(M(), addr, W),
                           eb::set_union(eb::var(names::ghost("rdAcc"), Type::set()),
                                         sem::sized_interval(sc, addr, W))}),
           pc);
    }
    ExprRef esp = reg("esp");
    ExprRef t = eb::add(esp, eb::bv(d, k * W));
    std::string tv = "v.__t." + pc;
    step(GInstr::assign({tv}, {t}), pc);
    ExprRef tvv = eb::var(tv, Type::bv(d));
    err_check(eb::lnot(sem::intrvl_in_set(sc, esp, eb::sub(tvv, eb::bv(d, 1)),
                                          sem::il(sc, rt().stk()))),
              ErrCode::U, pc);
    step(GInstr::assign({names::il(rt(), rt().stk())},
                        {eb::set_diff(sem::il(sc, rt().stk()),
                                      eb::mk_interval(esp, eb::sub(tvv, eb::bv(d, 1))))}),
         pc);
    step_to(GInstr::assign({names::reg("esp"), names::ghost("sp." + pc)},
                           {tvv, tvv}),
            next, pc);
    return;
  }
  case AsmInstr::K::Cmp: {
    ExprRef a = fix(ins.expr), b = fix(ins.val);
    ub_guard(a, pc);
    ub_guard(b, pc);
    auto b1 = [&](ExprRef c) { return eb::ite(c, eb::bv(1, 1), eb::bv(1, 0)); };
    step_to(GInstr::assign({names::reg("zf"), names::reg("slf"), names::reg("ulf")},
                           {b1(eb::eq(a, b)), b1(eb::slt(a, b)), b1(eb::ult(a, b))}),
            next, pc);
    return;
  }
  case AsmInstr::K::CondJmp: {
    ExprRef c = fix(ins.expr);
    g.add_edge(cur, label_entry(ins.target), GInstr::guard(c), pc);
    g.add_edge(cur, next, GInstr::guard(eb::lnot(c)), pc);
    return;
  }
  case AsmInstr::K::Jmp:
    step_to(GInstr::assign({}, {}), label_entry(ins.target), pc);
    return;
  case AsmInstr::K::Call: {
    GInstr stub;
    stub.k = GiKind::CallStub;
    stub.callee = ins.target;
    step_to(std::move(stub), next, pc, io_ctr++);
    return;
  }
  case AsmInstr::K::Ret: {
    CheckInfo ci;
    ci.kind = CheckKind::RetPreserve;
    err_check(sem::ret_preserve_violation(sc), ErrCode::U, pc, ci);
    EvDesc ev;
    ev.kind = EvKind::Ret;
    if (proc.ret_size)
      ev.vals.push_back(sem::vret_val(sc, proc.ret_size));
    ev.set = sem::il_union(sc, rt().common());
    ev.mem = M();
    step(GInstr::write_io(ev), pc, io_ctr++);
    step_to(GInstr::halt(ErrCode::None), g.exit, pc);
    return;
  }
  }
}

TransitionGraph ALower::run() {
  for (auto &s : prog.symbols)
    sym_subst.emplace_back("$" + s.name, eb::bv(d, s.addr));
  for (auto gidx : rt().globals())
    sym_subst.emplace_back("$" + rt().get(gidx).name,
                           eb::set_lb(eb::var(names::il(rt(), gidx), Type::set()), d));

  g.add_node(NodeKind::Start, "entry");
  g.add_node(NodeKind::Exit, "exit");
  g.add_node(NodeKind::U, "U");
  g.add_node(NodeKind::W, "W");
  entry();
  for (size_t i = 0; i < proc.body.size(); i++)
    instr(i);
  g.check_guard_shape();
  return std::move(g);
}

} // namespace

TransitionGraph lower_asm(const AsmProgram &prog, const AsmProcedure &proc,
                          std::shared_ptr<RegionTable> rt, unsigned width,
                          SemFlags flags, AsmLowerConfig cfg) {
  for (auto &s : prog.symbols) {
    RegionId r{RegionKind::AsmOnly, s.name};
    r.read_only = s.read_only;
    r.decl_size = s.size;
    r.decl_align = s.align;
    r.fixed_addr = s.addr;
    r.ro_init = s.init;
    r.ro_init.resize(s.size, 0);
    rt->add(r);
  }
  ALower L(prog, proc, std::move(rt), width, flags, cfg);
  return L.run();
}

} // namespace tval
