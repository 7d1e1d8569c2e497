#include "ir/lower.h"

#include <cassert>
#include <sstream>

#include "core/semantics.h"
#include "core/state.h"

namespace tval {

std::shared_ptr<RegionTable> make_region_table(const IRProgram &prog,
                                               const IRProcedure &proc,
                                               unsigned wordsz) {
  auto rt = std::make_shared<RegionTable>();
  for (auto &g : prog.globals) {
    RegionId r{RegionKind::Global, g.name};
    r.read_only = g.read_only;
    r.decl_size = g.size;
    r.decl_align = g.align;
    if (g.read_only) {
      r.ro_init = g.init;
      r.ro_init.resize(g.size, 0);
    }
    rt->add(r);
  }
  for (auto &p : proc.params) {
    RegionId r{RegionKind::Param, p.name};
    r.decl_size = p.ty->size(wordsz);
    r.decl_align = p.ty->align(wordsz);
    rt->add(r);
  }
  if (proc.variadic) {
    RegionId r{RegionKind::Param, "vrdc"};
    r.decl_align = wordsz;
    rt->add(r);
  }
  for (auto &i : proc.body)
    if (i.k == IRInstr::K::Alloc) {
      RegionId r{RegionKind::AllocSite, i.label};
      r.zclass = i.site_is_za ? SiteClass::Za : SiteClass::Zl;
      rt->add(r);
    }
  return rt;
}

std::vector<RegionTable::Idx> entry_set_regions(const RegionTable &rt,
                                                const SemFlags &flags) {
  std::vector<RegionTable::Idx> rs;
  rs.push_back(rt.heap());
  rs.push_back(rt.cl());
  if (!flags.cv_smallest)
    rs.push_back(rt.cv());
  for (auto g : rt.globals())
    rs.push_back(g);
  for (auto y : rt.params())
    rs.push_back(y);
  return rs;
}

std::string entry_sets_kind(const RegionTable &rt, const SemFlags &flags) {
  std::ostringstream ss;
  ss << "esets";
  for (auto r : entry_set_regions(rt, flags)) {
    const RegionId &rid = rt.get(r);
    switch (rid.kind) {
    case RegionKind::Heap: ss << "|hp"; break;
    case RegionKind::Cl: ss << "|cl"; break;
    case RegionKind::Cv: ss << "|cv"; break;
    case RegionKind::Global:
      ss << "|g:" << rid.name << ":" << rid.decl_size << ":" << rid.decl_align;
      break;
    case RegionKind::Param:
      if (rid.name == "vrdc")
        ss << "|vrdc:" << rid.decl_align;
      else
        ss << "|y:" << rid.name << ":" << rid.decl_size << ":" << rid.decl_align;
      break;
    default:
      assert(false);
    }
  }
  return ss.str();
}

namespace {

struct Lower {
  const IRProgram &prog;
  const IRProcedure &proc;
  const PointsToResult &pt;
  TransitionGraph g;
  sem::Ctx sc;
  unsigned d, W;
  int io_ctr = 0;
  int cur = -1;
  std::map<std::string, int> label_node;
  std::map<std::string, unsigned> tmpw; // temp widths in bits

  Lower(const IRProgram &prog, const IRProcedure &proc, const PointsToResult &pt,
        std::shared_ptr<RegionTable> rt, unsigned width, SemFlags flags)
      : prog(prog), proc(proc), pt(pt),
        sc{*rt, Side::C, width, flags, sem::call_alignment(width)}, d(width),
        W(width / 8) {
    g.side = Side::C;
    g.width = width;
    g.flags = flags;
    g.regions = rt;
    g.proc_name = proc.name;
    g.variadic = proc.variadic;
    for (auto &p : proc.params) {
      g.param_sizes.push_back(p.ty->size(W));
      g.param_names.push_back(p.name);
    }
    g.ret_size = proc.ret_ty ? (unsigned)proc.ret_ty->size(W) : 0;
  }

  const RegionTable &rt() const { return sc.rt; }

  int node(const std::string &label) {
    return g.add_node(NodeKind::Plain, label);
  }

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
      return; // statically absent
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

  ExprRef opnd(const IROperand &o, unsigned width_bits = 0);
  std::vector<RegionTable::Idx> beta(const std::string &label,
                                     const IROperand &p, bool exclude_ro);
  void compute_tmp_widths();
  void entry();
  void instr(size_t idx);
  ExprRef op_expr(const IRInstr &ins);
  TransitionGraph run();
};

ExprRef Lower::opnd(const IROperand &o, unsigned width_bits) {
  unsigned w = width_bits ? width_bits : d;
  switch (o.k) {
  case IROperand::K::Const:
    return eb::bv(w, o.cval);
  case IROperand::K::Temp: {
    auto it = tmpw.find(o.name);
    unsigned tw = it == tmpw.end() ? d : it->second;
    return eb::var(names::var(o.name), Type::bv(tw));
  }
  case IROperand::K::ParamAddr:
    return sem::ghost_lb(sc, rt().find(RegionKind::Param, o.name));
  case IROperand::K::GlobalAddr:
    return sem::ghost_lb(sc, rt().find(RegionKind::Global, o.name));
  }
  return nullptr;
}

std::vector<RegionTable::Idx> Lower::beta(const std::string &label,
                                          const IROperand &p, bool exclude_ro) {
  RegionSet s = pt.beta_at(label, p, rt());
  std::vector<RegionTable::Idx> out;
  for (auto r : s) {
    if (exclude_ro && rt().get(r).kind == RegionKind::Global &&
        rt().get(r).read_only)
      continue;
    out.push_back(r);
  }
  return out;
}

void Lower::compute_tmp_widths() {
  for (auto &i : proc.body) {
    if (i.target.empty())
      continue;
    unsigned w = d;
    switch (i.k) {
    case IRInstr::K::Load:
      w = 8 * (unsigned)i.ty->size(W);
      break;
    case IRInstr::K::Call:
      w = i.ret_ty ? 8 * (unsigned)i.ret_ty->size(W) : d;
      break;
    case IRInstr::K::Op: {
      static const char *cmps[] = {"eq", "ne", "ult", "ule", "ugt", "uge",
                                   "slt", "sle", "sgt", "sge"};
      for (auto *cc : cmps)
        if (i.opname == cc)
          w = 1;
      if (i.opname.rfind("zext.", 0) == 0 || i.opname.rfind("sext.", 0) == 0)
        w = atoi(i.opname.c_str() + 5);
      if (i.opname.rfind("trunc.", 0) == 0)
        w = atoi(i.opname.c_str() + 6);
      break;
    }
    default:
      break;
    }
    tmpw[i.target] = w;
  }
}

void Lower::entry() {
  cur = g.start;
  const std::string pc = "entry";

  // read the input address sets from the world
  auto regions = entry_set_regions(rt(), g.flags);
  std::vector<std::string> tgts;
  std::vector<Type> tys;
  for (auto r : regions) {
    tgts.push_back(names::il(rt(), r));
    tys.push_back(Type::set());
  }
  int grp = io_ctr++;
  step(GInstr::read_io(tgts, tys, entry_sets_kind(rt(), g.flags)), pc, grp);

  // everything stack- or assembly-only starts empty on the C side
  {
    std::vector<std::string> zt = {names::il(rt(), rt().stk()),
                                   names::il(rt(), rt().cs()),
                                   names::ghost("rdAcc"), names::ghost("wrAcc")};
    std::vector<ExprRef> ze = {eb::emptyset(), eb::emptyset(), eb::emptyset(),
                               eb::emptyset()};
    if (g.flags.cv_smallest) {
      zt.push_back(names::il(rt(), rt().cv()));
      ze.push_back(eb::emptyset());
    }
    for (auto z : rt().sites()) {
      zt.push_back(names::il(rt(), z));
      ze.push_back(eb::emptyset());
    }
    step(GInstr::assign(zt, ze), pc);
  }

  // arbitrary defaults for ghosts that are conditionally initialized
  {
    std::vector<std::string> ct;
    std::vector<Type> cty;
    auto add = [&](const std::string &n, Type t) {
      ct.push_back(n);
      cty.push_back(t);
    };
    for (auto z : rt().sites()) {
      add(names::ghost("lb." + rt().name_of(z)), Type::bv(d));
      add(names::ghost("ub." + rt().name_of(z)), Type::bv(d));
      add(names::ghost("lsz." + rt().name_of(z)), Type::bv(d));
    }
    for (auto r : rt().globals())
      for (auto s : {"lb.", "ub."})
        add(names::ghost(s + rt().name_of(r)), Type::bv(d));
    for (auto r : rt().params())
      for (auto s : {"lb.", "ub."})
        add(names::ghost(s + rt().name_of(r)), Type::bv(d));
    if (!ct.empty())
      step(GInstr::choose(ct, cty), pc);
  }

  CheckInfo wfci;
  wfci.kind = CheckKind::EntryAddrSetsWF;
  err_check(eb::lnot(sem::addr_sets_wf(sc)), ErrCode::W, pc, wfci);

  // memory: arbitrary, then the accessible regions from the world
  step(GInstr::choose({names::mem()}, {Type::mem()}, ChooseHint::MemContents), pc);
  {
    int mg = io_ctr++;
    step(GInstr::read_io({"v.__m0"}, {Type::mem()}, "mem"), pc, mg);
    ExprRef b = sem::il_union(sc, rt().common());
    step(GInstr::assign({names::mem()},
                        {eb::mupd(b, eb::var(names::mem(), Type::mem()),
                                  eb::var("v.__m0", Type::mem()))}),
         pc, mg);
  }

  // read-only globals get their initializers
  for (auto gr : rt().globals_ro()) {
    ExprRef lbv = eb::set_lb(sem::il(sc, gr), d);
    ExprRef ro = eb::romem(gr, lbv, rt().get(gr).ro_init);
    step(GInstr::assign({names::mem()},
                        {eb::mupd(sem::il(sc, gr),
                                  eb::var(names::mem(), Type::mem()), ro)}),
         pc);
  }

  // ghost initialization
  {
    std::vector<std::string> ts;
    std::vector<ExprRef> es;
    for (auto z : rt().sites()) {
      ts.push_back(names::ghost("empty." + rt().name_of(z)));
      es.push_back(eb::btrue());
    }
    std::vector<RegionTable::Idx> gy = rt().globals();
    for (auto y : rt().params())
      gy.push_back(y);
    for (auto r : gy) {
      ExprRef set = sem::il(sc, r);
      ExprRef card = eb::set_size(set, d);
      ExprRef isempty = eb::eq(card, eb::bv(d, 0));
      ts.push_back(names::ghost("sz." + rt().name_of(r)));
      es.push_back(card);
      ts.push_back(names::ghost("empty." + rt().name_of(r)));
      es.push_back(isempty);
      ts.push_back(names::ghost("lb." + rt().name_of(r)));
      es.push_back(eb::ite(isempty, sem::ghost_lb(sc, r), eb::set_lb(set, d)));
      ts.push_back(names::ghost("ub." + rt().name_of(r)));
      es.push_back(eb::ite(isempty, sem::ghost_ub(sc, r), eb::set_ub(set, d)));
    }
    step(GInstr::assign(ts, es), pc);
  }

  // fall through to the first instruction
  assert(!proc.body.empty());
  step_to(GInstr::assign({}, {}), label_entry(proc.body.front().label), pc);
}

ExprRef Lower::op_expr(const IRInstr &ins) {
  auto a = [&](size_t i) { return opnd(ins.args[i]); };
  const std::string &o = ins.opname;
  if (o == "add") return eb::add(a(0), a(1));
  if (o == "sub") return eb::sub(a(0), a(1));
  if (o == "mul") return eb::mul(a(0), a(1));
  if (o == "udiv") return eb::binary(Op::UDiv, a(0), a(1));
  if (o == "sdiv") return eb::binary(Op::SDiv, a(0), a(1));
  if (o == "urem") return eb::binary(Op::URem, a(0), a(1));
  if (o == "srem") return eb::binary(Op::SRem, a(0), a(1));
  if (o == "and") return eb::binary(Op::And, a(0), a(1));
  if (o == "or") return eb::binary(Op::Or, a(0), a(1));
  if (o == "xor") return eb::binary(Op::Xor, a(0), a(1));
  if (o == "shl") return eb::binary(Op::Shl, a(0), a(1));
  if (o == "lshr") return eb::binary(Op::LShr, a(0), a(1));
  if (o == "ashr") return eb::binary(Op::AShr, a(0), a(1));
  if (o == "padd") return eb::add(a(0), a(1));
  if (o == "psub") return eb::sub(a(0), a(1));
  if (o == "neg") return eb::unary(Op::Neg, a(0));
  if (o == "not") return eb::unary(Op::Not, a(0));
  auto cmp = [&](Op op) {
    return eb::ite(eb::binary(op, a(0), a(1)), eb::bv(1, 1), eb::bv(1, 0));
  };
  if (o == "eq") return eb::ite(eb::eq(a(0), a(1)), eb::bv(1, 1), eb::bv(1, 0));
  if (o == "ne") return eb::ite(eb::ne(a(0), a(1)), eb::bv(1, 1), eb::bv(1, 0));
  if (o == "ult") return cmp(Op::Ult);
  if (o == "ule") return cmp(Op::Ule);
  if (o == "ugt") return cmp(Op::Ugt);
  if (o == "uge") return cmp(Op::Uge);
  if (o == "slt") return cmp(Op::Slt);
  if (o == "sle") return cmp(Op::Sle);
  if (o == "sgt") return cmp(Op::Sgt);
  if (o == "sge") return cmp(Op::Sge);
  if (o.rfind("zext.", 0) == 0) return eb::zext(a(0), atoi(o.c_str() + 5));
  if (o.rfind("sext.", 0) == 0) return eb::sext(a(0), atoi(o.c_str() + 5));
  if (o.rfind("trunc.", 0) == 0) return eb::extract(a(0), atoi(o.c_str() + 6) - 1, 0);
  assert(false && "unknown op");
  return nullptr;
}

void Lower::instr(size_t idx) {
  const IRInstr &ins = proc.body[idx];
  cur = label_entry(ins.label);
  int next = -1;
  bool has_next = true;
  if (ins.k == IRInstr::K::Ret || ins.k == IRInstr::K::Branch ||
      ins.k == IRInstr::K::Jmp)
    has_next = false;
  else {
    assert(idx + 1 < proc.body.size() && "fall off the end of procedure");
    next = label_entry(proc.body[idx + 1].label);
  }
  const std::string &pc = ins.label;

  switch (ins.k) {
  case IRInstr::K::Alloc: {
    RegionTable::Idx z = rt().find(RegionKind::AllocSite, ins.site);
    uint64_t elsz = ins.ty->size(W);
    ExprRef n = opnd(ins.addr);
    ExprRef size = eb::mul(n, eb::bv(d, elsz));
    if (!ins.site_is_za) {
      ExprRef pre = eb::lor({eb::sle(n, eb::bv(d, 0)),
                             sem::overflow_mul_expr(n, eb::bv(d, elsz))});
      err_check(pre, ErrCode::U, pc);
    }
    EvDesc begin;
    begin.kind = EvKind::AllocBegin;
    begin.site = z;
    begin.vals = {size};
    begin.align = ins.align;
    step(GInstr::write_io(begin), pc, io_ctr++);

    std::string ab = "v.__ab." + ins.site;
    std::string ae = "v.__ae." + ins.site;
    {
      GInstr ch = GInstr::choose({ab}, {Type::bv(d)}, ChooseHint::AllocAddr);
      ch.hint_size = size;
      ch.hint_align = ins.align;
      step(std::move(ch), pc);
    }
    ExprRef abv = eb::var(ab, Type::bv(d));
    step(GInstr::assign({ae}, {eb::sub(eb::add(abv, size), eb::bv(d, 1))}), pc);
    ExprRef aev = eb::var(ae, Type::bv(d));
    err_check(eb::lnot(sem::intrvl_in_set_aligned(sc, abv, aev,
                                                  sem::free_set(sc), ins.align)),
              ErrCode::W, pc);
    step(GInstr::assign({names::il(rt(), z)},
                        {eb::set_union(sem::il(sc, z), eb::mk_interval(abv, aev))}),
         pc);
    {
      GInstr ch = GInstr::choose({"v.__am." + ins.site}, {Type::mem()},
                                 ChooseHint::MemContents);
      step(std::move(ch), pc);
      ExprRef m = eb::var(names::mem(), Type::mem());
      ExprRef src = eb::var("v.__am." + ins.site, Type::mem());
      step(GInstr::assign({names::mem()},
                          {eb::mupd(eb::mk_interval(abv, aev), m, src)}),
           pc);
    }
    {
      ExprRef empty = sem::ghost_empty(sc, z);
      ExprRef lb = sem::ghost_lb(sc, z);
      ExprRef ub = sem::ghost_ub(sc, z);
      std::vector<std::string> ts = {
          names::ghost("lb." + rt().name_of(z)),
          names::ghost("ub." + rt().name_of(z)),
          names::ghost("lsz." + rt().name_of(z)),
          names::ghost("empty." + rt().name_of(z)),
          names::var(ins.target)};
      std::vector<ExprRef> es = {
          eb::ite(empty, abv, eb::ite(eb::ult(lb, abv), lb, abv)),
          eb::ite(empty, aev, eb::ite(eb::ult(ub, aev), aev, ub)),
          size, eb::bfalse(), abv};
      step(GInstr::assign(ts, es), pc);
    }
    EvDesc endv;
    endv.kind = EvKind::AllocEnd;
    endv.site = z;
    endv.vals = {abv, aev};
    endv.set = eb::mk_interval(abv, aev);
    endv.mem = eb::var(names::mem(), Type::mem());
    {
      GInstr w = GInstr::write_io(endv);
      int grp = io_ctr++;
      if (has_next)
        step_to(std::move(w), next, pc, grp);
      else
        step(std::move(w), pc, grp);
    }
    return;
  }
  case IRInstr::K::Dealloc: {
    RegionTable::Idx z = rt().find(RegionKind::AllocSite, ins.site);
    step(GInstr::assign({names::il(rt(), z),
                         names::ghost("empty." + rt().name_of(z))},
                        {eb::emptyset(), eb::btrue()}),
         pc);
    EvDesc ev;
    ev.kind = EvKind::Dealloc;
    ev.site = z;
    step_to(GInstr::write_io(ev), next, pc, io_ctr++);
    return;
  }
  case IRInstr::K::Load: {
    ExprRef p = opnd(ins.addr);
    uint64_t w = ins.ty->size(W);
    auto rs = beta(ins.label, ins.addr, false);
    err_check(eb::lnot(sem::access_is_safe_c(sc, p, w, ins.align, rs)),
              ErrCode::U, pc);
    ExprRef m = eb::var(names::mem(), Type::mem());
    ExprRef rd = eb::var(names::ghost("rdAcc"), Type::set());
    step_to(GInstr::assign(
                {names::var(ins.target), names::ghost("rdAcc")},
                {eb::select(m, p, (unsigned)w),
                 eb::set_union(rd, sem::sized_interval(sc, p, w))}),
            next, pc);
    return;
  }
  case IRInstr::K::Store: {
    ExprRef p = opnd(ins.addr);
    uint64_t w = ins.ty->size(W);
    ExprRef v = opnd(ins.val, 8 * (unsigned)w);
    auto rs = beta(ins.label, ins.addr, /*exclude_ro=*/true);
    err_check(eb::lnot(sem::access_is_safe_c(sc, p, w, ins.align, rs)),
              ErrCode::U, pc);
    ExprRef m = eb::var(names::mem(), Type::mem());
    ExprRef wr = eb::var(names::ghost("wrAcc"), Type::set());
    step_to(GInstr::assign(
                {names::mem(), names::ghost("wrAcc")},
                {eb::mstore(m, p, (unsigned)w, v),
                 eb::set_union(wr, sem::sized_interval(sc, p, w))}),
            next, pc);
    return;
  }
  case IRInstr::K::Op: {
    std::vector<ExprRef> args;
    for (auto &x : ins.args)
      args.push_back(opnd(x));
    ExprRef ub = sem::ub_op(sc, ins.opname, args);
    if (ub)
      err_check(ub, ErrCode::U, pc);
    step_to(GInstr::assign({names::var(ins.target)}, {op_expr(ins)}), next, pc);
    return;
  }
  case IRInstr::K::AssignConst: {
    step_to(GInstr::assign({names::var(ins.target)}, {eb::bv(d, ins.addr.cval)}),
            next, pc);
    return;
  }
  case IRInstr::K::Call: {
    auto it = pt.call_observable.find(ins.label);
    assert(it != pt.call_observable.end());
    std::vector<RegionTable::Idx> obs(it->second.begin(), it->second.end());
    {
      CallSiteInfo csi;
      csi.callee = ins.callee;
      csi.ret_bits = ins.ret_ty ? 8 * (unsigned)ins.ret_ty->size(W) : 0;
      csi.observable = obs;
      if (!ins.arg_sizes.empty()) {
        csi.arg_sizes = std::vector<uint64_t>(ins.arg_sizes.begin(),
                                              ins.arg_sizes.end());
      } else {
        const IRDeclare *decl = prog.find_declare(ins.callee);
        for (size_t ai = 0; ai < ins.args.size(); ai++) {
          uint64_t sz = 0;
          if (decl && ai < decl->params.size()) {
            sz = decl->params[ai]->size(W);
          } else {
            // variadic or undeclared: take the size from the unique
            // constant-sized allocation site the argument points to
            RegionSet bs = pt.beta_at(ins.label, ins.args[ai], rt());
            if (bs.size() == 1 && rt().get(*bs.begin()).is_site()) {
              for (auto &bi : proc.body)
                if (bi.k == IRInstr::K::Alloc && bi.label == rt().get(*bs.begin()).name &&
                    bi.addr.k == IROperand::K::Const)
                  sz = bi.addr.cval * bi.ty->size(W);
            }
          }
          csi.arg_sizes.push_back(sz);
        }
      }
      g.callsites[ins.label] = std::move(csi);
    }
    EvDesc ev;
    ev.kind = EvKind::Call;
    ev.callee = ins.callee;
    for (auto &a : ins.args)
      ev.vals.push_back(opnd(a));
    ev.regions = obs;
    ev.set = sem::il_union(sc, obs);
    ev.mem = eb::var(names::mem(), Type::mem());
    step(GInstr::write_io(ev), pc, io_ctr++);

    std::vector<RegionTable::Idx> writable;
    for (auto r : obs)
      if (!(rt().get(r).kind == RegionKind::Global && rt().get(r).read_only))
        writable.push_back(r);
    int mg = io_ctr++;
    step(GInstr::read_io({"v.__cm." + ins.label}, {Type::mem()}, "mem"), pc, mg);
    step(GInstr::assign({names::mem()},
                        {eb::mupd(sem::il_union(sc, writable),
                                  eb::var(names::mem(), Type::mem()),
                                  eb::var("v.__cm." + ins.label, Type::mem()))}),
         pc, mg);
    if (ins.ret_ty) {
      unsigned bits = 8 * (unsigned)ins.ret_ty->size(W);
      GInstr rd = GInstr::read_io({names::var(ins.target)}, {Type::bv(bits)},
                                  "bv" + std::to_string(bits));
      step_to(std::move(rd), next, pc, io_ctr++);
    } else {
      step_to(GInstr::assign({}, {}), next, pc);
    }
    return;
  }
  case IRInstr::K::Ret: {
    EvDesc ev;
    ev.kind = EvKind::Ret;
    if (ins.retval) {
      unsigned bits = proc.ret_ty ? 8 * (unsigned)proc.ret_ty->size(W) : d;
      ev.vals.push_back(opnd(*ins.retval, bits));
    }
    ev.set = sem::il_union(sc, rt().common());
    ev.mem = eb::var(names::mem(), Type::mem());
    step(GInstr::write_io(ev), pc, io_ctr++);
    step_to(GInstr::halt(ErrCode::None), g.exit, pc);
    return;
  }
  case IRInstr::K::Branch: {
    ExprRef c = eb::eq(opnd(ins.addr, 1), eb::bv(1, 1));
    g.add_edge(cur, label_entry(ins.t1), GInstr::guard(c), pc);
    g.add_edge(cur, label_entry(ins.t2), GInstr::guard(eb::lnot(c)), pc);
    return;
  }
  case IRInstr::K::Jmp: {
    step_to(GInstr::assign({}, {}), label_entry(ins.t1), pc);
    return;
  }
  case IRInstr::K::VaStartPtr: {
    if (!rt().has_vrdc()) {
      step_to(GInstr::assign({names::var(ins.target)}, {eb::bv(d, 0)}), next, pc);
      return;
    }
    ExprRef v = sem::il(sc, rt().vrdc());
    int e1n = node(pc + "'");
    g.add_edge(cur, e1n, GInstr::guard(eb::set_is_empty(v)), pc);
    int e2n = node(pc + "'");
    g.add_edge(cur, e2n, GInstr::guard(eb::lnot(eb::set_is_empty(v))), pc);
    g.add_edge(e1n, next,
               GInstr::assign({names::var(ins.target)}, {eb::bv(d, 0)}), pc);
    g.add_edge(e2n, next,
               GInstr::assign({names::var(ins.target)},
                              {sem::ghost_lb(sc, rt().vrdc())}),
               pc);
    return;
  }
  default:
    assert(false && "sugar must be expanded before lowering");
  }
}

TransitionGraph Lower::run() {
  compute_tmp_widths();
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

TransitionGraph lower_ir(const IRProgram &prog, const IRProcedure &proc,
                         const PointsToResult &pt,
                         std::shared_ptr<RegionTable> rt, unsigned width,
                         SemFlags flags) {
  Lower L(prog, proc, pt, std::move(rt), width, flags);
  return L.run();
}

} // namespace tval
