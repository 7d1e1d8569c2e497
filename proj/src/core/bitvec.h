#pragma once

#include <cassert>
#include <cstdint>
#include <string>

namespace tval {

// Fixed-width bitvector with two's complement arithmetic mod 2^w.
// Widths up to 64 bits; the machine word width d is a run-time
// configuration (default 32), addresses and registers are d bits wide.
class BitVec {
public:
  BitVec() : m_width(0), m_val(0) {}
  BitVec(unsigned width, uint64_t val) : m_width(width), m_val(mask(width, val)) {
    assert(width >= 1 && width <= 64);
  }

  unsigned width() const { return m_width; }
  uint64_t uval() const { return m_val; }
  int64_t sval() const;
  bool is_zero() const { return m_val == 0; }

  static uint64_t mask(unsigned w, uint64_t v) {
    return w >= 64 ? v : (v & ((uint64_t(1) << w) - 1));
  }

  BitVec add(const BitVec &o) const { return bin(o, m_val + o.m_val); }
  BitVec sub(const BitVec &o) const { return bin(o, m_val - o.m_val); }
  BitVec mul(const BitVec &o) const { return bin(o, m_val * o.m_val); }
  BitVec udiv(const BitVec &o) const; // div-by-zero yields all-ones (SMT-LIB)
  BitVec urem(const BitVec &o) const;
  BitVec sdiv(const BitVec &o) const;
  BitVec srem(const BitVec &o) const;
  BitVec band(const BitVec &o) const { return bin(o, m_val & o.m_val); }
  BitVec bor(const BitVec &o) const { return bin(o, m_val | o.m_val); }
  BitVec bxor(const BitVec &o) const { return bin(o, m_val ^ o.m_val); }
  BitVec bnot() const { return BitVec(m_width, ~m_val); }
  BitVec neg() const { return BitVec(m_width, ~m_val + 1); }
  BitVec shl(const BitVec &o) const;
  BitVec lshr(const BitVec &o) const;
  BitVec ashr(const BitVec &o) const;

  bool eq(const BitVec &o) const { return m_width == o.m_width && m_val == o.m_val; }
  bool ult(const BitVec &o) const { chk(o); return m_val < o.m_val; }
  bool ule(const BitVec &o) const { chk(o); return m_val <= o.m_val; }
  bool slt(const BitVec &o) const { chk(o); return sval() < o.sval(); }
  bool sle(const BitVec &o) const { chk(o); return sval() <= o.sval(); }

  BitVec zext(unsigned w) const { assert(w >= m_width); return BitVec(w, m_val); }
  BitVec sext(unsigned w) const;
  BitVec extract(unsigned hi, unsigned lo) const;
  BitVec concat(const BitVec &lsb) const; // this = msb part

  bool aligned(uint64_t n) const { return n == 0 || (m_val % n) == 0; }

  bool operator==(const BitVec &o) const { return eq(o); }
  bool operator!=(const BitVec &o) const { return !eq(o); }

  std::string str() const;

private:
  BitVec bin(const BitVec &o, uint64_t raw) const {
    chk(o);
    return BitVec(m_width, raw);
  }
  void chk(const BitVec &o) const {
    assert(m_width == o.m_width && "width mismatch");
    (void)o;
  }

  unsigned m_width;
  uint64_t m_val;
};

// Signed multiplication overflow, per the obligations on alloc counts.
bool overflow_mul(const BitVec &a, const BitVec &b);

} // namespace tval
