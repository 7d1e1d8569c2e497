#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/region.h"
#include "ir/ast.h"

namespace tval {

using RegionSet = std::set<RegionTable::Idx>;

// Flow-sensitive over-approximation of the points-to maps:
// beta: var -> regions it may point to; betaM: region -> regions some
// pointer stored in that region may point to.
struct BetaState {
  std::map<std::string, RegionSet> beta;
  std::map<RegionTable::Idx, RegionSet> betaM;

  bool join(const BetaState &o); // set union; returns true if changed
  RegionSet beta_of(const std::string &var) const;
  RegionSet betaM_of(const RegionSet &rs) const;
};

// Abstract transfer for v := op(xs): identity for neg/complement,
// union for additive/shift/bitwise/extension ops, empty otherwise.
RegionSet transfer_op(const std::string &opname,
                      const std::vector<RegionSet> &args);

// Reflexive-transitive closure of betaM from the seed regions.
RegionSet closure(const std::map<RegionTable::Idx, RegionSet> &betaM,
                  const RegionSet &seeds);

struct PointsToResult {
  std::map<std::string, BetaState> before; // per instruction label
  std::map<std::string, RegionSet> call_observable; // per call label: beta*
  RegionSet beta_at(const std::string &label, const IROperand &op,
                    const RegionTable &rt) const;
};

// Least fixed point over the procedure body (run after sugar expansion).
PointsToResult analyze(const IRProcedure &proc, const RegionTable &rt);

RegionSet operand_regions(const BetaState &st, const IROperand &op,
                          const RegionTable &rt);

} // namespace tval
