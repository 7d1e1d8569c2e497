#pragma once

#include <functional>
#include <optional>

#include "core/eval.h"
#include "core/graph.h"
#include "core/state.h"

namespace tval {

// Supplies values for choose instructions.  The structured random
// resolver consults the edge's hint to produce plausible machine
// layouts; a fixed resolver replays scripted values; the product
// executor installs a resolver that evaluates the deterministic choice
// map over the captured assembly state.
class ChooseResolver {
public:
  virtual ~ChooseResolver() = default;
  virtual std::vector<Value> resolve(const TransitionGraph &g, int edge,
                                     const GInstr &in, MachineState &st) = 0;
};

class RandomResolver : public ChooseResolver {
public:
  explicit RandomResolver(uint64_t seed) : m_st(seed * 0x9e3779b97f4a7c15ull + 1) {}
  std::vector<Value> resolve(const TransitionGraph &g, int edge, const GInstr &in,
                             MachineState &st) override;

private:
  uint64_t next();
  uint64_t m_st;
};

struct ExecError {
  enum K { NoEnabledGuard, UnboundVar, CallStubHit } kind;
  int node;
  std::string msg;
};

struct ExecResult {
  int final_node = -1;
  std::optional<ExecError> error;
  size_t steps = 0;
};

// Concrete interpretation: follows the unique enabled guard at each
// node, appending one silent event per executed instruction plus the
// instruction's own observable events.  Stops at a terminating node,
// at `stop_at` (if >= 0), or after max_steps.
ExecResult exec_path(const TransitionGraph &g, int start, MachineState &st,
                     ChooseResolver &res, int stop_at = -1,
                     size_t max_steps = 100000);

// Execute exactly the given edge sequence; returns false (state
// restored by caller) if some guard on the path does not hold.
bool exec_edges(const TransitionGraph &g, const Path &p, MachineState &st,
                ChooseResolver &res, std::optional<ExecError> *err = nullptr);

// Single-instruction step used by both drivers.
void exec_instr(const TransitionGraph &g, int edge, MachineState &st,
                ChooseResolver &res);

// Entry state: binds parameters' and machine's initial variables before
// the entry sequence runs (registers on the A side are chosen inside
// the graph; the C side takes parameter addresses from the entry reads).
MachineState initial_state(const TransitionGraph &g, uint64_t world_seed);

} // namespace tval
