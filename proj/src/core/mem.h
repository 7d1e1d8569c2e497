#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "core/addrset.h"
#include "core/bitvec.h"

namespace tval {

// Byte-addressed memory, default byte plus a finite override map.
// Multi-byte select/store use little-endian byte order.
class MemArray {
public:
  MemArray() : m_default(0) {}
  explicit MemArray(uint8_t def) : m_default(def) {}

  uint8_t load1(uint64_t addr) const {
    auto it = m_over.find(addr);
    return it == m_over.end() ? m_default : it->second;
  }
  void store1(uint64_t addr, uint8_t v) {
    if (v == m_default)
      m_over.erase(addr);
    else
      m_over[addr] = v;
  }

  // little-endian concatenation of sz bytes starting at addr (wraps mod 2^aw)
  BitVec select(const BitVec &addr, unsigned sz) const;
  MemArray store(const BitVec &addr, unsigned sz, const BitVec &v) const;

  // projection: bytes inside s kept, outside s zeroed
  MemArray project(const AddrSet &s, unsigned width) const;
  // updation: bytes inside s from src, outside from *this
  MemArray update(const AddrSet &s, const MemArray &src, unsigned width) const;

  bool equal_on(const AddrSet &s, const MemArray &o) const;
  bool operator==(const MemArray &o) const;

  uint8_t default_byte() const { return m_default; }
  const std::map<uint64_t, uint8_t> &overrides() const { return m_over; }
  size_t hash() const;
  std::string str() const;

private:
  uint8_t m_default;
  std::map<uint64_t, uint8_t> m_over;
};

} // namespace tval
