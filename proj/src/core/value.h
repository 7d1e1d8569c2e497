#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "core/addrset.h"
#include "core/bitvec.h"
#include "core/mem.h"

namespace tval {

// Sorts of the expression language.
enum class Sort : uint8_t { Bool, BV, Set, Mem, World };

struct Type {
  Sort sort = Sort::BV;
  unsigned width = 0; // BV width; Mem index width tracked globally

  static Type boolean() { return {Sort::Bool, 0}; }
  static Type bv(unsigned w) { return {Sort::BV, w}; }
  static Type set() { return {Sort::Set, 0}; }
  static Type mem() { return {Sort::Mem, 0}; }
  static Type world() { return {Sort::World, 0}; }

  bool operator==(const Type &o) const { return sort == o.sort && width == o.width; }
  std::string str() const;
};

// A concrete runtime value.  Worlds are opaque ids: two worlds compare
// equal iff they have consumed/produced identical I/O sequences.
class Value {
public:
  Value() : m_v(false) {}
  explicit Value(bool b) : m_v(b) {}
  explicit Value(BitVec bv) : m_v(bv) {}
  explicit Value(AddrSet s) : m_v(std::move(s)) {}
  explicit Value(MemArray m) : m_v(std::move(m)) {}
  static Value world(uint64_t id) {
    Value v;
    v.m_v = WorldId{id};
    return v;
  }

  bool is_bool() const { return std::holds_alternative<bool>(m_v); }
  bool is_bv() const { return std::holds_alternative<BitVec>(m_v); }
  bool is_set() const { return std::holds_alternative<AddrSet>(m_v); }
  bool is_mem() const { return std::holds_alternative<MemArray>(m_v); }
  bool is_world() const { return std::holds_alternative<WorldId>(m_v); }

  bool b() const { return std::get<bool>(m_v); }
  const BitVec &bv() const { return std::get<BitVec>(m_v); }
  const AddrSet &set() const { return std::get<AddrSet>(m_v); }
  const MemArray &mem() const { return std::get<MemArray>(m_v); }
  uint64_t world_id() const { return std::get<WorldId>(m_v).id; }

  Type type() const;
  bool operator==(const Value &o) const;
  bool operator!=(const Value &o) const { return !(*this == o); }
  size_t hash() const;
  std::string str() const;

private:
  struct WorldId {
    uint64_t id;
    bool operator==(const WorldId &o) const = default;
  };
  std::variant<bool, BitVec, AddrSet, MemArray, WorldId> m_v;
};

} // namespace tval
