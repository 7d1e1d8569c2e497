#pragma once

#include <optional>

#include "core/eval.h"
#include "core/region.h"
#include "smt/symexec.h"

namespace tval {

// Model finder over closed formulas: searches for an assignment to the
// free symbols (and implicit uninterpreted functions) that satisfies
// the formula.  Structured trials synthesize coherent machine layouts
// so preconditions built from the global invariants are satisfiable;
// random trials cover the rest.  "Unsat" is reported after the trial
// budget is exhausted, which suits the desk-scale obligations this
// project discharges; it is not a decision procedure.
struct SolveOptions {
  uint64_t seed = 1;
  int trials = 160;
  double timeout_sec = 0; // 0 = no limit
};

struct Model {
  std::map<std::string, Value> env;
  uint64_t uf_salt = 0; // reproduces the uninterpreted-function fallback
};

struct SolveOutcome {
  Verdict v = Verdict::Unknown;
  std::optional<Model> model;
  int trials_used = 0;
};

SolveOutcome solve_formula(const ExprRef &formula,
                           const std::map<std::string, Type> &symbols,
                           const RegionTable *rt, unsigned width,
                           const SolveOptions &opts);

// Checks a parsed model against a formula (used both for the model
// soundness gate and for counterexample screening).
bool model_satisfies(const ExprRef &formula, const Model &m, unsigned width);

// Deterministic fallback interpretation for uninterpreted functions.
Value uf_default_value(const std::string &fn, const std::vector<Value> &args,
                       Type ret, unsigned width, uint64_t salt);

} // namespace tval
