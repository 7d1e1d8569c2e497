#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "core/graph.h"
#include "core/state.h"

namespace tval {

// Product node: a pair of assembly / source nodes.
struct PNode {
  int na = -1, nc = -1;
  bool operator==(const PNode &o) const = default;
};

// Product edge: correlated paths (either side may be the empty path).
struct PEdge {
  int from = -1, to = -1;
  Path xi_a, xi_c;
};

// Deterministic choice map entry: the n-th occurrence of a C-side
// choose edge within the edge's xi_c is replaced by expressions over
// the assembly state at the end of xi_a.
struct DetKey {
  int x_edge = -1;
  int c_edge = -1;
  int occurrence = 1;
  auto operator<=>(const DetKey &) const = default;
};

using DetChoiceMap = std::map<DetKey, std::vector<ExprRef>>;

// Invariant predicates are expressions over joint names: "a.<v>" for
// the assembly side, "c.<v>" for the source side.
struct Predicate {
  std::string shape;
  ExprRef e;
  bool pinned_equiv = false; // the (Equivalence) conjunct Omega_A = Omega_C
  bool pinned_memeq = false; // the (MemEq) conjunct
};

struct InvariantNetwork {
  std::map<int, std::vector<Predicate>> at; // per non-error product node
  std::vector<Predicate> globals;           // assumed, hold by construction

  ExprRef node_conj(int n) const;
  ExprRef full_pre(int n) const; // node conjunction plus globals
  bool has_pinned_equiv(int n) const;
  bool has_pinned_memeq(int n) const;
};

class ProductGraph {
public:
  const TransitionGraph *ga = nullptr; // annotated assembly
  const TransitionGraph *gc = nullptr;
  std::vector<PNode> nodes;
  std::vector<PEdge> edges;
  DetChoiceMap detmap;
  int start = -1;

  int find_node(int na, int nc) const;
  int add_node(int na, int nc);
  int add_edge(int from, int to, Path xi_a, Path xi_c);
  std::vector<int> out_edges(int n) const;
  bool is_error_node(int n) const;
  bool is_nonerror(int n) const { return !is_error_node(n); }
  std::string node_str(int n) const;
};

// Hoare triple obligation over a product node.  When post_is_cover is
// set the postcondition is the disjunction of the (determinized) path
// conditions of cpaths; an empty cpaths list is the infeasibility
// obligation.
struct HoareTriple {
  int xnode = -1;
  Path xi_a;
  std::vector<std::pair<Path, int>> cpaths; // (xi_c, x_edge id or -1)
  bool post_is_cover = false;
  ExprRef pre;  // over joint initial names
  ExprRef post; // over joint final names, when !post_is_cover
  std::string tag;
};

enum class Verdict { Valid, Invalid, Unknown };

struct Counterexample {
  std::map<std::string, Value> env; // joint initial-state assignment
};

struct DischargeResult {
  Verdict v = Verdict::Unknown;
  std::optional<Counterexample> model;
  double seconds = 0;
};

using DischargeFn = std::function<DischargeResult(const HoareTriple &)>;

// Path-cover obligation {phi}(xi_a; eps){OR pathcond(xi_c^j down D)}.
HoareTriple path_cover_obligation(const ProductGraph &X, int n, const Path &xi_a,
                                  const std::vector<std::pair<Path, int>> &covers,
                                  const InvariantNetwork &inv);

// The two (MAC) obligations for an edge.
std::pair<HoareTriple, HoareTriple> mac_obligations(const ProductGraph &X,
                                                    int edge,
                                                    const InvariantNetwork &inv);

// The inductiveness obligation for an edge into a non-error node.
HoareTriple inductive_obligation(const ProductGraph &X, int edge,
                                 const InvariantNetwork &inv);

} // namespace tval
