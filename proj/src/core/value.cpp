#include "core/value.h"

#include <sstream>

namespace tval {

std::string Type::str() const {
  switch (sort) {
  case Sort::Bool: return "bool";
  case Sort::BV: return "bv" + std::to_string(width);
  case Sort::Set: return "set";
  case Sort::Mem: return "mem";
  case Sort::World: return "world";
  }
  return "?";
}

Type Value::type() const {
  if (is_bool())
    return Type::boolean();
  if (is_bv())
    return Type::bv(bv().width());
  if (is_set())
    return Type::set();
  if (is_mem())
    return Type::mem();
  return Type::world();
}

bool Value::operator==(const Value &o) const { return m_v == o.m_v; }

size_t Value::hash() const {
  if (is_bool())
    return b() ? 0x9e37 : 0x79b9;
  if (is_bv())
    return std::hash<uint64_t>()(bv().uval() * 64 + bv().width());
  if (is_set())
    return set().hash();
  if (is_mem())
    return mem().hash();
  return std::hash<uint64_t>()(world_id() ^ 0xabcdef);
}

std::string Value::str() const {
  if (is_bool())
    return b() ? "true" : "false";
  if (is_bv())
    return bv().str();
  if (is_set())
    return set().str();
  if (is_mem())
    return mem().str();
  std::ostringstream ss;
  ss << "world#" << world_id();
  return ss.str();
}

} // namespace tval
