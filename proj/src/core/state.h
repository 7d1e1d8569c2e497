#pragma once

#include <map>
#include <memory>
#include <string>

#include "core/region.h"
#include "core/trace.h"
#include "core/value.h"
#include "core/world.h"

namespace tval {

// Variable naming scheme shared by machine states, symbolic envs and
// SMT scripts:
//   reg.<r>      hardware register / flag pseudo-register
//   v.<name>     IR pseudo-variable
//   M            data memory
//   il.<region>  address set of a region (region printed per RegionTable)
//   ilzs.<site> / ilzv.<site>  split address sets of a Zl site (asm side)
//   g.<name>     ghost variable (lb.<r>, ub.<r>, sz.<r>, lsz.<z>, empty.<r>,
//                sp.<pc>, sp.entry, stk_e, cs_e, Mcs, save.<reg>, eip,
//                rdAcc, wrAcc)
//   Omega        the outside world (symbolic contexts only)
namespace names {
std::string reg(const std::string &r);
std::string var(const std::string &v);
std::string il(const RegionTable &rt, RegionTable::Idx r);
std::string ilzs(const RegionTable &rt, RegionTable::Idx z);
std::string ilzv(const RegionTable &rt, RegionTable::Idx z);
std::string ghost(const std::string &g);
inline std::string mem() { return "M"; }
inline std::string omega() { return "Omega"; }
} // namespace names

// Concrete machine state: a uniform environment of named values plus
// the outside world and the observable trace.
struct MachineState {
  std::map<std::string, Value> env;
  WorldState world;
  Trace trace;

  const Value *find(const std::string &n) const {
    auto it = env.find(n);
    return it == env.end() ? nullptr : &it->second;
  }
  Value get(const std::string &n) const;
  void set(const std::string &n, Value v) { env[n] = std::move(v); }

  const AddrSet &aset(const std::string &n) const;
  const BitVec &bv(const std::string &n) const;
  const MemArray &mem() const;
};

} // namespace tval
