#include "core/state.h"

#include <cassert>

namespace tval {

namespace names {
std::string reg(const std::string &r) { return "reg." + r; }
std::string var(const std::string &v) { return "v." + v; }
std::string il(const RegionTable &rt, RegionTable::Idx r) {
  return "il." + rt.name_of(r);
}
std::string ilzs(const RegionTable &rt, RegionTable::Idx z) {
  return "ilzs." + rt.get(z).name;
}
std::string ilzv(const RegionTable &rt, RegionTable::Idx z) {
  return "ilzv." + rt.get(z).name;
}
std::string ghost(const std::string &g) { return "g." + g; }
} // namespace names

Value MachineState::get(const std::string &n) const {
  auto it = env.find(n);
  assert(it != env.end() && "unbound variable");
  return it->second;
}

const AddrSet &MachineState::aset(const std::string &n) const {
  auto it = env.find(n);
  assert(it != env.end());
  return it->second.set();
}

const BitVec &MachineState::bv(const std::string &n) const {
  auto it = env.find(n);
  assert(it != env.end());
  return it->second.bv();
}

const MemArray &MachineState::mem() const {
  auto it = env.find("M");
  assert(it != env.end());
  return it->second.mem();
}

} // namespace tval
