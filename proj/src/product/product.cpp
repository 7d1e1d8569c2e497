#include "product/product.h"

#include <cassert>
#include <sstream>

namespace tval {

ExprRef InvariantNetwork::node_conj(int n) const {
  std::vector<ExprRef> xs;
  auto it = at.find(n);
  if (it != at.end())
    for (auto &p : it->second)
      xs.push_back(p.e);
  return eb::land(std::move(xs));
}

ExprRef InvariantNetwork::full_pre(int n) const {
  std::vector<ExprRef> xs;
  for (auto &p : globals)
    xs.push_back(p.e);
  xs.push_back(node_conj(n));
  return eb::land(std::move(xs));
}

bool InvariantNetwork::has_pinned_equiv(int n) const {
  auto it = at.find(n);
  if (it == at.end())
    return false;
  for (auto &p : it->second)
    if (p.pinned_equiv)
      return true;
  return false;
}

bool InvariantNetwork::has_pinned_memeq(int n) const {
  auto it = at.find(n);
  if (it == at.end())
    return false;
  for (auto &p : it->second)
    if (p.pinned_memeq)
      return true;
  return false;
}

int ProductGraph::find_node(int na, int nc) const {
  for (size_t i = 0; i < nodes.size(); i++)
    if (nodes[i].na == na && nodes[i].nc == nc)
      return (int)i;
  return -1;
}

int ProductGraph::add_node(int na, int nc) {
  int i = find_node(na, nc);
  if (i >= 0)
    return i;
  nodes.push_back({na, nc});
  return (int)nodes.size() - 1;
}

int ProductGraph::add_edge(int from, int to, Path xi_a, Path xi_c) {
  edges.push_back({from, to, std::move(xi_a), std::move(xi_c)});
  return (int)edges.size() - 1;
}

std::vector<int> ProductGraph::out_edges(int n) const {
  std::vector<int> out;
  for (size_t i = 0; i < edges.size(); i++)
    if (edges[i].from == n)
      out.push_back((int)i);
  return out;
}

bool ProductGraph::is_error_node(int n) const {
  const PNode &p = nodes[n];
  return ga->is_error_node(p.na) || gc->is_error_node(p.nc);
}

std::string ProductGraph::node_str(int n) const {
  std::ostringstream ss;
  ss << "(" << ga->nodes[nodes[n].na].label << "," << gc->nodes[nodes[n].nc].label
     << ")";
  return ss.str();
}

HoareTriple path_cover_obligation(const ProductGraph &X, int n, const Path &xi_a,
                                  const std::vector<std::pair<Path, int>> &covers,
                                  const InvariantNetwork &inv) {
  HoareTriple t;
  t.xnode = n;
  t.xi_a = xi_a;
  t.cpaths = covers;
  t.post_is_cover = true;
  t.pre = inv.full_pre(n);
  t.tag = covers.empty() ? "infeasible" : "coverC";
  return t;
}

static ExprRef joint(const std::string &side, const std::string &name, Type ty) {
  return eb::var(side + "." + name, ty);
}

std::pair<HoareTriple, HoareTriple> mac_obligations(const ProductGraph &X,
                                                    int edge,
                                                    const InvariantNetwork &inv) {
  const PEdge &e = X.edges[edge];
  unsigned d = X.ga->width;
  const RegionTable &rt = *X.ga->regions;

  auto mk = [&](const char *acc, bool wr_) {
    HoareTriple t;
    t.xnode = e.from;
    t.xi_a = e.xi_a;
    t.cpaths = {{e.xi_c, edge}};
    ExprRef reset = eb::land({eb::set_is_empty(joint("a", names::ghost(acc), Type::set())),
                              eb::set_is_empty(joint("c", names::ghost(acc), Type::set()))});
    t.pre = eb::land({inv.full_pre(e.from), reset});
    // (acc_A \ acc_C) subset il_A[G u F] u [esp, stk_e]  (reads)
    //                  subset il_A[Gw u Fw] u [esp, stk_e] (writes)
    std::vector<ExprRef> sets;
    auto gs = wr_ ? rt.globals_rw() : rt.globals();
    auto fs = wr_ ? rt.asm_only_rw() : rt.asm_only();
    for (auto r : gs)
      sets.push_back(joint("a", names::il(rt, r), Type::set()));
    for (auto r : fs)
      sets.push_back(joint("a", names::il(rt, r), Type::set()));
    ExprRef esp = joint("a", names::reg("esp"), Type::bv(d));
    ExprRef stke = joint("a", names::ghost("stk_e"), Type::bv(d));
    sets.push_back(eb::mk_interval(esp, stke));
    ExprRef target = eb::set_union(std::move(sets));
    ExprRef diff = eb::set_diff(joint("a", names::ghost(acc), Type::set()),
                                joint("c", names::ghost(acc), Type::set()));
    t.post = eb::subset(diff, target);
    t.tag = wr_ ? "mac-write" : "mac-read";
    return t;
  };
  return {mk("rdAcc", false), mk("wrAcc", true)};
}

HoareTriple inductive_obligation(const ProductGraph &X, int edge,
                                 const InvariantNetwork &inv) {
  const PEdge &e = X.edges[edge];
  HoareTriple t;
  t.xnode = e.from;
  t.xi_a = e.xi_a;
  t.cpaths = {{e.xi_c, edge}};
  t.pre = inv.full_pre(e.from);
  t.post = inv.node_conj(e.to);
  t.tag = "inductive";
  return t;
}

} // namespace tval
