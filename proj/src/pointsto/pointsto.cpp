#include "pointsto/pointsto.h"

#include <cassert>

namespace tval {

bool BetaState::join(const BetaState &o) {
  bool changed = false;
  for (auto &[k, v] : o.beta) {
    auto &dst = beta[k];
    for (auto r : v)
      changed |= dst.insert(r).second;
  }
  for (auto &[k, v] : o.betaM) {
    auto &dst = betaM[k];
    for (auto r : v)
      changed |= dst.insert(r).second;
  }
  return changed;
}

RegionSet BetaState::beta_of(const std::string &var) const {
  auto it = beta.find(var);
  return it == beta.end() ? RegionSet{} : it->second;
}

RegionSet BetaState::betaM_of(const RegionSet &rs) const {
  RegionSet out;
  for (auto r : rs) {
    auto it = betaM.find(r);
    if (it != betaM.end())
      out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

RegionSet transfer_op(const std::string &opname,
                      const std::vector<RegionSet> &args) {
  auto unite = [&] {
    RegionSet s;
    for (auto &a : args)
      s.insert(a.begin(), a.end());
    return s;
  };
  if (opname == "neg" || opname == "not")
    return args.empty() ? RegionSet{} : args[0];
  if (opname == "add" || opname == "sub" || opname == "padd" ||
      opname == "psub" || opname == "shl" || opname == "lshr" ||
      opname == "ashr" || opname == "and" || opname == "or" ||
      opname == "xor" || opname.rfind("zext.", 0) == 0 ||
      opname.rfind("sext.", 0) == 0 || opname.rfind("trunc.", 0) == 0)
    return unite();
  // mul/div/rem/relational and anything else
  return {};
}

RegionSet closure(const std::map<RegionTable::Idx, RegionSet> &betaM,
                  const RegionSet &seeds) {
  RegionSet out = seeds;
  std::vector<RegionTable::Idx> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    auto r = work.back();
    work.pop_back();
    auto it = betaM.find(r);
    if (it == betaM.end())
      continue;
    for (auto n : it->second)
      if (out.insert(n).second)
        work.push_back(n);
  }
  return out;
}

RegionSet operand_regions(const BetaState &st, const IROperand &op,
                          const RegionTable &rt) {
  switch (op.k) {
  case IROperand::K::Const:
    return {};
  case IROperand::K::Temp:
    return st.beta_of(op.name);
  case IROperand::K::ParamAddr:
    return {rt.find(RegionKind::Param, op.name)};
  case IROperand::K::GlobalAddr:
    return {rt.find(RegionKind::Global, op.name)};
  }
  return {};
}

RegionSet PointsToResult::beta_at(const std::string &label, const IROperand &op,
                                  const RegionTable &rt) const {
  auto it = before.find(label);
  assert(it != before.end());
  return operand_regions(it->second, op, rt);
}

PointsToResult analyze(const IRProcedure &proc, const RegionTable &rt) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < proc.body.size(); i++)
    index[proc.body[i].label] = i;

  auto successors = [&](size_t i) {
    std::vector<size_t> out;
    const IRInstr &ins = proc.body[i];
    if (ins.k == IRInstr::K::Ret)
      return out;
    if (ins.k == IRInstr::K::Jmp) {
      out.push_back(index.at(ins.t1));
      return out;
    }
    if (ins.k == IRInstr::K::Branch) {
      out.push_back(index.at(ins.t1));
      out.push_back(index.at(ins.t2));
      return out;
    }
    if (i + 1 < proc.body.size())
      out.push_back(i + 1);
    return out;
  };

  // entry seeding per the procedure-entry translation
  BetaState entry;
  RegionSet gset;
  for (auto g : rt.globals())
    gset.insert(g);
  RegionSet ghpcl = gset;
  ghpcl.insert(rt.heap());
  ghpcl.insert(rt.cl());
  for (auto r : rt.common()) {
    const RegionId &rid = rt.get(r);
    if (rid.kind == RegionKind::AllocSite)
      entry.betaM[r] = {};
    else
      entry.betaM[r] = ghpcl;
  }

  std::vector<BetaState> in(proc.body.size());
  if (!proc.body.empty())
    in[0] = entry;
  std::vector<char> dirty(proc.body.size(), 0);
  if (!proc.body.empty())
    dirty[0] = 1;
  PointsToResult res;

  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < proc.body.size(); i++) {
      if (!dirty[i])
        continue;
      dirty[i] = 0;
      const IRInstr &ins = proc.body[i];
      BetaState out = in[i];
      switch (ins.k) {
      case IRInstr::K::Alloc:
        out.beta[ins.target] = {rt.find(RegionKind::AllocSite, ins.site)};
        break;
      case IRInstr::K::Load:
        out.beta[ins.target] =
            out.betaM_of(operand_regions(out, ins.addr, rt));
        break;
      case IRInstr::K::Store: {
        RegionSet pv = operand_regions(out, ins.addr, rt);
        RegionSet vv = operand_regions(out, ins.val, rt);
        for (auto r : pv) {
          auto &dst = out.betaM[r];
          dst.insert(vv.begin(), vv.end());
        }
        break;
      }
      case IRInstr::K::Op: {
        std::vector<RegionSet> as;
        for (auto &a : ins.args)
          as.push_back(operand_regions(out, a, rt));
        out.beta[ins.target] = transfer_op(ins.opname, as);
        break;
      }
      case IRInstr::K::AssignConst:
        out.beta[ins.target] = {};
        break;
      case IRInstr::K::Call: {
        RegionSet seeds = gset;
        seeds.insert(rt.heap());
        for (auto &a : ins.args) {
          RegionSet s = operand_regions(out, a, rt);
          seeds.insert(s.begin(), s.end());
        }
        RegionSet star = closure(out.betaM, seeds);
        auto ro = rt.globals_ro();
        for (auto r : star) {
          bool is_ro = false;
          for (auto g : ro)
            if (g == r)
              is_ro = true;
          if (!is_ro)
            out.betaM[r] = star;
        }
        if (!ins.target.empty())
          out.beta[ins.target] = star;
        // record the closure used at this call site (grows monotonically)
        auto &obs = res.call_observable[ins.label];
        obs.insert(star.begin(), star.end());
        break;
      }
      case IRInstr::K::VaStartPtr:
        out.beta[ins.target] =
            rt.has_vrdc() ? RegionSet{rt.vrdc()} : RegionSet{};
        break;
      default:
        break;
      }
      for (size_t s : successors(i)) {
        if (in[s].join(out)) {
          dirty[s] = 1;
          progress = true;
        }
      }
    }
  }

  for (size_t i = 0; i < proc.body.size(); i++)
    res.before[proc.body[i].label] = in[i];
  return res;
}

} // namespace tval
