#pragma once

#include <map>
#include <set>
#include <string>

#include "product/product.h"

namespace tval {

// Free symbols and uninterpreted functions of a built formula.
struct SymInfo {
  std::map<std::string, Type> symbols;     // initial-state constants
  std::map<std::string, Type> uf_returns;  // applied function name -> return sort
  ExprRef sp_min;  // minimum esp over the nodes of xi_a (null if no esp use)
  ExprRef zlv_u;   // union of virtually-allocated sets over xi_a's nodes
  bool a_io_free = true;
};

// Symbolic strongest-postcondition execution of correlated paths.
// Produces the satisfiability formula pre /\ pathconds /\ not post over
// the initial-state symbols "a.<var>" / "c.<var>".
class SymExec {
public:
  SymExec(const TransitionGraph *ga, const TransitionGraph *gc,
          const DetChoiceMap *dmap)
      : m_ga(ga), m_gc(gc), m_dmap(dmap) {}

  ExprRef build_formula(const HoareTriple &t, SymInfo *info);

  // Execute one side symbolically along a path; used by the encoder
  // and by invariant inference for counterexample propagation.
  struct SideRun {
    std::map<std::string, ExprRef> env; // joint names -> terms
    std::vector<ExprRef> pathcond;
  };

private:
  const TransitionGraph *m_ga;
  const TransitionGraph *m_gc;
  const DetChoiceMap *m_dmap;
};

// Aggregates of an assembly path per the interval-encoding theorem:
// symbolic min of esp over visited nodes and the union of the
// virtually-allocated sets observed along the path.
void compute_path_aggregates(const TransitionGraph &ga, const Path &xi_a,
                             ExprRef *sp_min, ExprRef *zlv_u);

} // namespace tval
