#include "core/exec.h"

#include <cassert>

namespace tval {

uint64_t RandomResolver::next() {
  m_st += 0x9e3779b97f4a7c15ull;
  uint64_t z = m_st;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

static AddrSet env_union(const MachineState &st, const std::string &prefix) {
  AddrSet s;
  for (auto &[k, v] : st.env)
    if (k.rfind(prefix, 0) == 0 && v.is_set())
      s = s.unite(v.set());
  return s;
}

static AddrSet all_allocated(const MachineState &st) {
  AddrSet s;
  for (auto &[k, v] : st.env)
    if (v.is_set() &&
        (k.rfind("il.", 0) == 0 || k.rfind("ilzs.", 0) == 0 ||
         k.rfind("ilzv.", 0) == 0))
      s = s.unite(v.set());
  return s;
}

std::vector<Value> RandomResolver::resolve(const TransitionGraph &g, int edge,
                                           const GInstr &in, MachineState &st) {
  unsigned w = g.width;
  unsigned wordsz = w / 8;
  std::vector<Value> out;
  switch (in.hint) {
  case ChooseHint::EntryRegs: {
    AddrSet params = env_union(st, "il.y.");
    for (auto &t : in.targets) {
      if (t == names::reg("esp")) {
        uint64_t esp;
        if (!params.is_empty()) {
          esp = BitVec::mask(w, params.lb() - wordsz);
        } else {
          uint64_t space = uint64_t(1) << w;
          uint64_t base = space - space / 4 + (next() % 4) * 16;
          esp = BitVec::mask(w, (base / 16) * 16 - wordsz);
        }
        out.push_back(Value(BitVec(w, esp)));
      } else {
        out.push_back(Value(BitVec(w, next())));
      }
    }
    return out;
  }
  case ChooseHint::CsE: {
    uint64_t stk_e = 0;
    if (auto *v = st.find(names::ghost("stk_e")))
      stk_e = v->bv().uval();
    AddrSet cl = env_union(st, "il.cl");
    uint64_t cse = stk_e + 1 + wordsz * (next() % 3);
    if (!cl.is_empty() && cl.ub() > cse)
      cse = cl.ub();
    if (cse < stk_e + 1)
      cse = stk_e + 1;
    out.push_back(Value(BitVec(w, cse)));
    return out;
  }
  case ChooseHint::AllocAddr: {
    Eval ev(st.env, w);
    uint64_t size = 1;
    if (in.hint_size)
      size = ev(in.hint_size).bv().uval();
    unsigned align = in.hint_align ? in.hint_align : 1;
    AddrSet freeset = all_allocated(st).complement(w).subtract(AddrSet::point(0));
    std::vector<uint64_t> starts;
    if (size >= 1) {
      for (auto &iv : freeset.intervals()) {
        uint64_t a = (iv.lb + align - 1) / align * align;
        while (a >= iv.lb && a + size - 1 <= iv.ub && a + size - 1 >= a) {
          starts.push_back(a);
          a += align;
          if (starts.size() > 64)
            break;
        }
        if (starts.size() > 64)
          break;
      }
    }
    uint64_t pick = starts.empty() ? BitVec::mask(w, next())
                                   : starts[next() % starts.size()];
    out.push_back(Value(BitVec(w, pick)));
    return out;
  }
  default:
    break;
  }
  for (auto &t : in.types) {
    switch (t.sort) {
    case Sort::BV:
      out.push_back(Value(BitVec(t.width, next())));
      break;
    case Sort::Mem: {
      MemArray m(0);
      unsigned k = next() % 9;
      for (unsigned i = 0; i < k; i++)
        m.store1(BitVec::mask(w, next()), (uint8_t)next());
      out.push_back(Value(std::move(m)));
      break;
    }
    case Sort::Set: {
      uint64_t lo = BitVec::mask(w, next());
      out.push_back(Value(AddrSet::interval(lo, lo + next() % 4)));
      break;
    }
    case Sort::Bool:
      out.push_back(Value((next() & 1) != 0));
      break;
    case Sort::World:
      assert(false);
    }
  }
  return out;
}

static uint64_t event_digest(const TraceEvent &ev) {
  uint64_t h = (uint64_t)ev.kind * 0x9e3779b1 + ev.site * 131;
  for (char c : ev.callee)
    h = h * 31 + (uint8_t)c;
  h = h * 0x100000001b3ull + values_digest(ev.vals);
  for (auto r : ev.regions)
    h = h * 257 + r;
  if (ev.has_mem) {
    h = h * 0x100000001b3ull + ev.mset.hash();
    h = h * 0x100000001b3ull + ev.mproj.hash();
  }
  return h;
}

void exec_instr(const TransitionGraph &g, int edge, MachineState &st,
                ChooseResolver &res) {
  const GEdge &e = g.edges[edge];
  const GInstr &in = e.instr;
  st.trace.push_back(TraceEvent{}); // silent
  switch (in.k) {
  case GiKind::Assign: {
    Eval ev(st.env, g.width);
    std::vector<Value> vals;
    vals.reserve(in.exprs.size());
    for (auto &x : in.exprs)
      vals.push_back(ev(x));
    for (size_t i = 0; i < in.targets.size(); i++)
      st.set(in.targets[i], std::move(vals[i]));
    break;
  }
  case GiKind::Guard:
    break;
  case GiKind::Choose: {
    std::vector<Value> vals = res.resolve(g, edge, in, st);
    assert(vals.size() == in.targets.size());
    for (size_t i = 0; i < in.targets.size(); i++)
      st.set(in.targets[i], std::move(vals[i]));
    break;
  }
  case GiKind::ReadIO: {
    std::vector<Value> vals = st.world.read(in.iokind, in.types, g.width);
    TraceEvent tev;
    tev.kind = EvKind::RawIO;
    tev.vals = vals;
    st.trace.push_back(tev);
    for (size_t i = 0; i < in.targets.size(); i++)
      st.set(in.targets[i], vals[i]);
    break;
  }
  case GiKind::WriteIO: {
    Eval ev(st.env, g.width);
    TraceEvent tev;
    tev.kind = in.ev.kind;
    tev.site = in.ev.site;
    tev.callee = in.ev.callee;
    tev.regions = in.ev.regions;
    for (auto &x : in.ev.vals)
      tev.vals.push_back(ev(x));
    if (in.ev.set && in.ev.mem) {
      tev.has_mem = true;
      tev.mset = ev(in.ev.set).set();
      tev.mproj = ev(in.ev.mem).mem().project(tev.mset, g.width);
    }
    st.world.write_digest(event_digest(tev));
    st.trace.push_back(std::move(tev));
    break;
  }
  case GiKind::Halt: {
    TraceEvent tev;
    if (in.err == ErrCode::None) {
      tev.kind = EvKind::Exit;
    } else {
      tev.kind = EvKind::Error;
      tev.err = in.err;
    }
    st.trace.push_back(std::move(tev));
    break;
  }
  case GiKind::CallStub:
    assert(false && "call stub must be annotated before execution");
  }
}

ExecResult exec_path(const TransitionGraph &g, int start, MachineState &st,
                     ChooseResolver &res, int stop_at, size_t max_steps) {
  ExecResult r;
  int n = start;
  while (r.steps < max_steps) {
    if (n == stop_at || g.is_terminating(n))
      break;
    const auto &outs = g.out_edges(n);
    int taken = -1;
    if (outs.size() == 1 && g.edges[outs[0]].instr.k != GiKind::Guard) {
      taken = outs[0];
    } else {
      Eval ev(st.env, g.width);
      for (int e : outs) {
        assert(g.edges[e].instr.k == GiKind::Guard);
        if (ev.truth(g.edges[e].instr.cond)) {
          if (taken != -1) {
            r.error = ExecError{ExecError::NoEnabledGuard, n,
                                "guards not mutually exclusive"};
            r.final_node = n;
            return r;
          }
          taken = e;
        }
      }
      if (taken == -1) {
        r.error = ExecError{ExecError::NoEnabledGuard, n, "no enabled guard"};
        r.final_node = n;
        return r;
      }
    }
    exec_instr(g, taken, st, res);
    n = g.edges[taken].to;
    r.steps++;
  }
  r.final_node = n;
  return r;
}

bool exec_edges(const TransitionGraph &g, const Path &p, MachineState &st,
                ChooseResolver &res, std::optional<ExecError> *err) {
  for (int eid : p) {
    const GEdge &e = g.edges[eid];
    if (e.instr.k == GiKind::Guard) {
      Eval ev(st.env, g.width);
      if (!ev.truth(e.instr.cond))
        return false;
    }
    exec_instr(g, eid, st, res);
  }
  (void)err;
  return true;
}

MachineState initial_state(const TransitionGraph &g, uint64_t world_seed) {
  MachineState st;
  st.world = WorldState(world_seed);
  return st;
}

} // namespace tval
