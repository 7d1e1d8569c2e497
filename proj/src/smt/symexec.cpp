#include "smt/symexec.h"

#include <cassert>
#include <sstream>

#include "core/semantics.h"

namespace tval {

namespace {

struct Jctx {
  std::map<std::string, ExprRef> env;
  std::map<std::string, Type> *symbols;
  std::map<std::string, Type> *ufs;
  std::vector<ExprRef> pathcond;
  int *fresh = nullptr; // shared across branch copies
};

class SideExec {
public:
  SideExec(const TransitionGraph &g, std::string prefix, Jctx &j)
      : m_g(g), m_pfx(std::move(prefix)), m_j(j) {}

  ExprRef lookup(const std::string &name, Type ty) {
    std::string k = m_pfx + name;
    auto it = m_j.env.find(k);
    if (it != m_j.env.end())
      return it->second;
    ExprRef v = eb::var(k, ty);
    m_j.env.emplace(k, v);
    m_j.symbols->emplace(k, ty);
    return v;
  }

  void bind(const std::string &name, ExprRef v) { m_j.env[m_pfx + name] = v; }

  ExprRef omega() { return lookup(names::omega(), Type::world()); }

  // substitute machine names by their current terms
  ExprRef ev(const ExprRef &e) {
    std::map<const Expr *, ExprRef> memo;
    return ev_rec(e, memo);
  }

  // evaluate an expression over another side's environment snapshot
  // (used for deterministic choice expressions)
  static ExprRef ev_snapshot(const ExprRef &e, SideExec &snap) { return snap.ev(e); }

  ExprRef fresh(const std::string &hint, Type ty) {
    std::string k = m_pfx + "th" + std::to_string((*m_j.fresh)++) + "." + hint;
    ExprRef v = eb::var(k, ty);
    m_j.symbols->emplace(k, ty);
    return v;
  }

  ExprRef uf(const std::string &fn, Type ret, std::vector<ExprRef> args) {
    m_j.ufs->emplace(fn, ret);
    return eb::apply(fn, ret, std::move(args));
  }

  // returns false when a guard is statically false (path infeasible)
  void exec_edge(int eid, const DetChoiceMap *dmap, int x_edge,
                 std::map<int, int> *occ, SideExec *a_final);

private:
  ExprRef ev_rec(const ExprRef &e, std::map<const Expr *, ExprRef> &memo) {
    if (e->op == Op::Const)
      return e;
    if (e->op == Op::Var)
      return lookup(e->name, e->ty);
    auto it = memo.find(e.get());
    if (it != memo.end())
      return it->second;
    Expr ne = *e;
    bool changed = false;
    for (auto &a : ne.args) {
      ExprRef na = ev_rec(a, memo);
      if (na.get() != a.get()) {
        a = na;
        changed = true;
      }
    }
    ExprRef r = changed ? ExprCtx::g().intern(std::move(ne)) : e;
    memo.emplace(e.get(), r);
    return r;
  }

  const TransitionGraph &m_g;
  std::string m_pfx;
  Jctx &m_j;
};

std::string regions_sig(const std::vector<RegionTable::Idx> &rs) {
  std::ostringstream ss;
  for (auto r : rs)
    ss << "_" << r;
  return ss.str();
}

void SideExec::exec_edge(int eid, const DetChoiceMap *dmap, int x_edge,
                     std::map<int, int> *occ, SideExec *a_final) {
  const GEdge &e = m_g.edges[eid];
  const GInstr &in = e.instr;
  switch (in.k) {
  case GiKind::Assign: {
    std::vector<ExprRef> vals;
    for (auto &x : in.exprs)
      vals.push_back(ev(x));
    for (size_t i = 0; i < in.targets.size(); i++)
      bind(in.targets[i], vals[i]);
    break;
  }
  case GiKind::Guard:
    m_j.pathcond.push_back(ev(in.cond));
    break;
  case GiKind::Choose: {
    // determinized when the choice map covers this occurrence
    std::vector<ExprRef> mapped;
    if (dmap && occ) {
      int n = ++(*occ)[eid];
      auto dit = dmap->find(DetKey{x_edge, eid, n});
      if (dit != dmap->end()) {
        assert(a_final && "determinized choose needs the assembly snapshot");
        for (auto &ex : dit->second)
          mapped.push_back(a_final->ev(ex));
      }
    }
    if (!mapped.empty()) {
      assert(mapped.size() == in.targets.size());
      for (size_t i = 0; i < in.targets.size(); i++)
        bind(in.targets[i], mapped[i]);
    } else {
      for (size_t i = 0; i < in.targets.size(); i++)
        bind(in.targets[i], fresh(in.targets[i], in.types[i]));
    }
    break;
  }
  case GiKind::ReadIO: {
    ExprRef om = omega();
    std::vector<ExprRef> vals;
    for (size_t i = 0; i < in.targets.size(); i++) {
      ExprRef v = uf("rd!" + in.iokind + "!" + std::to_string(i), in.types[i], {om});
      vals.push_back(v);
      bind(in.targets[i], v);
    }
    std::vector<ExprRef> ioargs = {om};
    ioargs.insert(ioargs.end(), vals.begin(), vals.end());
    bind(names::omega(), uf("io!r!" + in.iokind, Type::world(), std::move(ioargs)));
    break;
  }
  case GiKind::WriteIO: {
    const EvDesc &ev_ = in.ev;
    std::ostringstream fn;
    fn << "io!w!" << (int)ev_.kind << "!z" << ev_.site << "!al" << ev_.align;
    if (!ev_.callee.empty())
      fn << "!" << ev_.callee;
    fn << regions_sig(ev_.regions);
    std::vector<ExprRef> args = {omega()};
    for (auto &v : ev_.vals)
      args.push_back(ev(v));
    if (ev_.set && ev_.mem) {
      ExprRef s = ev(ev_.set);
      args.push_back(s);
      args.push_back(eb::mproj(s, ev(ev_.mem)));
    }
    bind(names::omega(), uf(fn.str(), Type::world(), std::move(args)));
    break;
  }
  case GiKind::Halt:
    break;
  case GiKind::CallStub:
    assert(false && "call stub reached during symbolic execution");
  }
}

} // namespace

void compute_path_aggregates(const TransitionGraph &ga, const Path &xi_a,
                             ExprRef *sp_min, ExprRef *zlv_u) {
  Jctx j;
  std::map<std::string, Type> syms, ufs;
  int fresh = 0;
  j.symbols = &syms;
  j.ufs = &ufs;
  j.fresh = &fresh;
  SideExec A(ga, "a.", j);
  unsigned d = ga.width;

  auto esp_term = [&] { return A.lookup(names::reg("esp"), Type::bv(d)); };
  auto zlv_term = [&] {
    std::vector<ExprRef> xs;
    for (auto z : ga.regions->sites(SiteClass::Zl))
      xs.push_back(A.lookup(names::ilzv(*ga.regions, z), Type::set()));
    return eb::set_union(std::move(xs));
  };

  ExprRef mn = esp_term();
  ExprRef zu = zlv_term();
  for (int eid : xi_a) {
    A.exec_edge(eid, nullptr, -1, nullptr, nullptr);
    ExprRef cur = esp_term();
    mn = eb::ite(eb::ule(cur, mn), cur, mn);
    zu = eb::set_union(zu, zlv_term());
  }
  if (sp_min)
    *sp_min = mn;
  if (zlv_u)
    *zlv_u = zu;
}

ExprRef SymExec::build_formula(const HoareTriple &t, SymInfo *info) {
  Jctx j;
  std::map<std::string, Type> syms, ufs;
  int fresh = 0;
  j.symbols = &syms;
  j.ufs = &ufs;
  j.fresh = &fresh;

  SideExec A(*m_ga, "a.", j);
  SideExec C(*m_gc, "c.", j);

  // assembly path first
  bool a_io_free = !m_ga->path_has_io(t.xi_a);
  for (int eid : t.xi_a)
    A.exec_edge(eid, nullptr, -1, nullptr, nullptr);

  // snapshot of the assembly state for determinized choices
  Jctx a_snapshot = j; // copy of env after xi_a
  SideExec Asnap(*m_ga, "a.", a_snapshot);

  std::vector<ExprRef> conj;
  if (t.pre)
    conj.push_back(t.pre);

  if (t.post_is_cover) {
    // pathconds of xi_a so far plus OR over determinized cover paths
    for (auto &pcnd : j.pathcond)
      conj.push_back(pcnd);
    std::vector<ExprRef> disj;
    for (auto &[cp, xe] : t.cpaths) {
      Jctx branch = j;
      branch.symbols = &syms;
      branch.ufs = &ufs;
      SideExec Cb(*m_gc, "c.", branch);
      std::map<int, int> occ;
      size_t base = branch.pathcond.size();
      for (int eid : cp)
        Cb.exec_edge(eid, m_dmap, xe, &occ, &Asnap);
      std::vector<ExprRef> guards(branch.pathcond.begin() + base,
                                  branch.pathcond.end());
      disj.push_back(eb::land(std::move(guards)));
    }
    conj.push_back(eb::lnot(eb::lor(std::move(disj))));
  } else {
    assert(t.cpaths.size() <= 1);
    if (!t.cpaths.empty()) {
      std::map<int, int> occ;
      for (int eid : t.cpaths[0].first)
        C.exec_edge(eid, m_dmap, t.cpaths[0].second, &occ, &Asnap);
    }
    for (auto &pcnd : j.pathcond)
      conj.push_back(pcnd);
    if (t.post) {
      std::vector<std::pair<std::string, ExprRef>> sub(j.env.begin(), j.env.end());
      conj.push_back(eb::lnot(subst_vars(t.post, sub)));
    }
  }

  // register every remaining free variable (pre/post mention state the
  // paths never touched)
  ExprRef formula = eb::land(std::move(conj));
  {
    std::set<std::string> vs;
    collect_vars(formula, vs);
    std::function<void(const ExprRef &)> reg = [&](const ExprRef &e) {
      if (e->op == Op::Var && !syms.count(e->name))
        syms.emplace(e->name, e->ty);
      for (auto &a : e->args)
        reg(a);
    };
    reg(formula);
  }

  if (info) {
    info->symbols = std::move(syms);
    info->uf_returns = std::move(ufs);
    info->a_io_free = a_io_free;
    if (!t.xi_a.empty())
      compute_path_aggregates(*m_ga, t.xi_a, &info->sp_min, &info->zlv_u);
  }
  return formula;
}

} // namespace tval
