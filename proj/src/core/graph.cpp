#include "core/graph.h"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace tval {

GInstr GInstr::assign(std::vector<std::string> tgts, std::vector<ExprRef> es) {
  GInstr g;
  g.k = GiKind::Assign;
  g.targets = std::move(tgts);
  g.exprs = std::move(es);
  assert(g.targets.size() == g.exprs.size());
  return g;
}

GInstr GInstr::guard(ExprRef c) {
  GInstr g;
  g.k = GiKind::Guard;
  g.cond = std::move(c);
  return g;
}

GInstr GInstr::choose(std::vector<std::string> tgts, std::vector<Type> tys,
                      ChooseHint h) {
  GInstr g;
  g.k = GiKind::Choose;
  g.targets = std::move(tgts);
  g.types = std::move(tys);
  g.hint = h;
  return g;
}

GInstr GInstr::read_io(std::vector<std::string> tgts, std::vector<Type> tys,
                       std::string kind) {
  GInstr g;
  g.k = GiKind::ReadIO;
  g.targets = std::move(tgts);
  g.types = std::move(tys);
  g.iokind = std::move(kind);
  return g;
}

GInstr GInstr::write_io(EvDesc ev) {
  GInstr g;
  g.k = GiKind::WriteIO;
  g.ev = std::move(ev);
  return g;
}

GInstr GInstr::halt(ErrCode e) {
  GInstr g;
  g.k = GiKind::Halt;
  g.err = e;
  return g;
}

std::string GInstr::str() const {
  std::ostringstream ss;
  switch (k) {
  case GiKind::Assign:
    for (size_t i = 0; i < targets.size(); i++) {
      if (i)
        ss << ", ";
      ss << targets[i];
    }
    ss << " := ";
    for (size_t i = 0; i < exprs.size(); i++) {
      if (i)
        ss << ", ";
      ss << exprs[i]->str();
    }
    break;
  case GiKind::Guard:
    ss << cond->str() << "?";
    break;
  case GiKind::Choose:
    for (size_t i = 0; i < targets.size(); i++) {
      if (i)
        ss << ", ";
      ss << targets[i];
    }
    ss << " := choose";
    break;
  case GiKind::ReadIO:
    ss << "rd[" << iokind << "]";
    break;
  case GiKind::WriteIO:
    ss << "wr[" << (int)ev.kind << "]";
    break;
  case GiKind::Halt:
    ss << "halt(" << err_str(err) << ")";
    break;
  case GiKind::CallStub:
    ss << "callstub " << callee;
    break;
  }
  return ss.str();
}

int TransitionGraph::add_node(NodeKind k, const std::string &label) {
  nodes.push_back({k, label});
  m_out.clear();
  int id = (int)nodes.size() - 1;
  if (k == NodeKind::Start)
    start = id;
  else if (k == NodeKind::Exit)
    exit = id;
  else if (k == NodeKind::U)
    unode = id;
  else if (k == NodeKind::W)
    wnode = id;
  return id;
}

int TransitionGraph::add_edge(int from, int to, GInstr in, const std::string &pc,
                              int io_group) {
  GEdge e;
  e.from = from;
  e.to = to;
  e.instr = std::move(in);
  e.pc = pc;
  e.io_group = io_group;
  edges.push_back(std::move(e));
  m_out.clear();
  return (int)edges.size() - 1;
}

void TransitionGraph::refresh_adj() const {
  m_out.assign(nodes.size(), {});
  m_in.assign(nodes.size(), {});
  for (size_t i = 0; i < edges.size(); i++) {
    m_out[edges[i].from].push_back((int)i);
    m_in[edges[i].to].push_back((int)i);
  }
}

const std::vector<int> &TransitionGraph::out_edges(int node) const {
  if (m_out.size() != nodes.size())
    refresh_adj();
  return m_out[node];
}

const std::vector<int> &TransitionGraph::in_edges(int node) const {
  if (m_out.size() != nodes.size())
    refresh_adj();
  return m_in[node];
}

bool TransitionGraph::path_has_io(const Path &p) const {
  for (int e : p)
    if (edges[e].instr.k == GiKind::ReadIO || edges[e].instr.k == GiKind::WriteIO)
      return true;
  return false;
}

std::string TransitionGraph::path_str(const Path &p) const {
  std::ostringstream ss;
  if (p.empty())
    return "eps";
  ss << nodes[path_src(p)].label;
  for (int e : p)
    ss << "->" << nodes[edges[e].to].label;
  return ss.str();
}

std::vector<int> TransitionGraph::rpo() const {
  std::vector<int> order;
  std::vector<char> seen(nodes.size(), 0);
  std::function<void(int)> dfs = [&](int n) {
    seen[n] = 1;
    for (int e : out_edges(n))
      if (!seen[edges[e].to])
        dfs(edges[e].to);
    order.push_back(n);
  };
  if (start >= 0)
    dfs(start);
  std::reverse(order.begin(), order.end());
  return order;
}

void TransitionGraph::check_guard_shape() const {
  for (size_t n = 0; n < nodes.size(); n++) {
    auto &outs = out_edges((int)n);
    if (outs.size() <= 1)
      continue;
    for (int e : outs) {
      assert(edges[e].instr.k == GiKind::Guard &&
             "branching node must use guard edges");
      (void)e;
    }
  }
}

} // namespace tval
