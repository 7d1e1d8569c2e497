#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/expr.h"
#include "core/region.h"
#include "core/trace.h"

namespace tval {

enum class Side : uint8_t { C, A };

// Semantics variants applied to a graph (sec. well-formedness /
// safety-relaxed transforms flip these and rebuild tagged checks).
struct SemFlags {
  bool cv_smallest = false;
  bool safety_relaxed = false; // assembly only
};

// Tags identifying rebuildable guard checks, so the semantics
// transforms can regenerate the guard condition from operands.
enum class CheckKind : uint8_t {
  None,
  EntryAddrSetsWF, // C and A entry
  EntryStkWF,      // A entry
  LoadOv,          // A load forbidden-region overlap
  StoreOv,         // A store forbidden-region overlap
  PushContained,   // A esp decrement target interval
  RetPreserve,     // A ret callee-save / cs preservation
  AllocSContained, // alloc_s target within stk
  AllocSOv,        // alloc_s overlap with cv u Zlv
  AllocVContained, // alloc_v separation
};

struct CheckInfo {
  CheckKind kind = CheckKind::None;
  bool polarity = true; // true: guard is the error condition
  std::vector<ExprRef> ops;
  unsigned w = 0;
  unsigned align = 0;
  RegionTable::Idx site = 0;
};

// Hints for the structured random choose-resolver.
enum class ChooseHint : uint8_t {
  None,
  EntryRegs,  // registers incl. esp at assembly entry
  CsE,        // ghost cs_e at assembly entry
  AllocAddr,  // alloc start address (C alloc / alloc_v)
  MemContents // arbitrary memory contents
};

enum class GiKind : uint8_t { Assign, Guard, Choose, ReadIO, WriteIO, Halt, CallStub };

// Payload of a write-I/O instruction: the observable event constructor
// with unevaluated argument expressions.
struct EvDesc {
  EvKind kind = EvKind::RawIO;
  RegionTable::Idx site = 0;
  std::string callee;
  std::vector<ExprRef> vals;
  std::vector<RegionTable::Idx> regions;
  ExprRef set;  // Set-typed: projection domain (AllocEnd/Call/Ret)
  ExprRef mem;  // Mem-typed: projection source
  unsigned align = 0;
};

struct GInstr {
  GiKind k = GiKind::Assign;
  // Assign / Choose / ReadIO
  std::vector<std::string> targets;
  std::vector<ExprRef> exprs; // Assign only
  std::vector<Type> types;    // Choose / ReadIO
  // Guard
  ExprRef cond;
  // Choose
  ChooseHint hint = ChooseHint::None;
  ExprRef hint_size; // AllocAddr: size expression
  unsigned hint_align = 1;
  // ReadIO
  std::string iokind;
  // WriteIO
  EvDesc ev;
  // Halt
  ErrCode err = ErrCode::None;
  // CallStub
  std::string callee;

  static GInstr assign(std::vector<std::string> tgts, std::vector<ExprRef> es);
  static GInstr guard(ExprRef c);
  static GInstr choose(std::vector<std::string> tgts, std::vector<Type> tys,
                       ChooseHint h = ChooseHint::None);
  static GInstr read_io(std::vector<std::string> tgts, std::vector<Type> tys,
                        std::string kind);
  static GInstr write_io(EvDesc ev);
  static GInstr halt(ErrCode e);
  std::string str() const;
};

enum class NodeKind : uint8_t { Plain, Start, Exit, U, W };

struct GNode {
  NodeKind kind = NodeKind::Plain;
  std::string label; // pc-derived, for reporting
};

struct GEdge {
  int from = -1, to = -1;
  GInstr instr;
  int io_group = -1;   // contiguous edges of one I/O path share a group
  std::string pc;      // source-instruction label
  CheckInfo check;
  bool from_annot = false;
};

using Path = std::vector<int>; // edge ids

// Per call-site facts the annotation search needs: by-value slot sizes
// of the arguments and the callee-observable regions of the correlated
// source call.
struct CallSiteInfo {
  std::string callee;
  unsigned ret_bits = 0; // 0 = void
  std::vector<uint64_t> arg_sizes;
  std::vector<RegionTable::Idx> observable;
};

// A procedure as a transition graph.  Nodes carry structural roles;
// every edge is labeled with exactly one graph instruction.
class TransitionGraph {
public:
  Side side = Side::C;
  unsigned width = 32;
  SemFlags flags;
  std::shared_ptr<RegionTable> regions;
  std::string proc_name;
  std::vector<unsigned> param_sizes; // by-value slot sizes (cc order)
  std::vector<std::string> param_names;
  bool variadic = false;
  unsigned ret_size = 0; // 0 = void

  std::vector<GNode> nodes;
  std::vector<GEdge> edges;
  std::map<std::string, CallSiteInfo> callsites; // by pc label

  int start = -1, exit = -1, unode = -1, wnode = -1;

  int add_node(NodeKind k = NodeKind::Plain, const std::string &label = "");
  int add_edge(int from, int to, GInstr in, const std::string &pc = "",
               int io_group = -1);
  const std::vector<int> &out_edges(int node) const;
  const std::vector<int> &in_edges(int node) const;

  bool is_terminating(int node) const { return out_edges(node).empty(); }
  bool is_error_node(int node) const { return node == unode || node == wnode; }

  int path_src(const Path &p) const { return edges[p.front()].from; }
  int path_sink(const Path &p) const { return edges[p.back()].to; }
  bool path_has_io(const Path &p) const;
  std::string path_str(const Path &p) const;

  // reverse postorder from start
  std::vector<int> rpo() const;
  void check_guard_shape() const; // asserts guard mutual-exclusion shape

private:
  mutable std::vector<std::vector<int>> m_out, m_in;
  void refresh_adj() const;
};

} // namespace tval
