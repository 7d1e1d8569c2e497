#include "core/bitvec.h"

#include <sstream>

namespace tval {

int64_t BitVec::sval() const {
  if (m_width >= 64)
    return (int64_t)m_val;
  uint64_t sign = uint64_t(1) << (m_width - 1);
  if (m_val & sign)
    return (int64_t)(m_val | ~((sign << 1) - 1));
  return (int64_t)m_val;
}

BitVec BitVec::udiv(const BitVec &o) const {
  chk(o);
  if (o.m_val == 0)
    return BitVec(m_width, ~uint64_t(0));
  return BitVec(m_width, m_val / o.m_val);
}

BitVec BitVec::urem(const BitVec &o) const {
  chk(o);
  if (o.m_val == 0)
    return *this;
  return BitVec(m_width, m_val % o.m_val);
}

BitVec BitVec::sdiv(const BitVec &o) const {
  chk(o);
  if (o.m_val == 0)
    return BitVec(m_width, ~uint64_t(0));
  int64_t a = sval(), b = o.sval();
  if (b == -1 && a == INT64_MIN)
    return BitVec(m_width, (uint64_t)a);
  return BitVec(m_width, (uint64_t)(a / b));
}

BitVec BitVec::srem(const BitVec &o) const {
  chk(o);
  if (o.m_val == 0)
    return *this;
  int64_t a = sval(), b = o.sval();
  if (b == -1)
    return BitVec(m_width, 0);
  return BitVec(m_width, (uint64_t)(a % b));
}

BitVec BitVec::shl(const BitVec &o) const {
  chk(o);
  if (o.m_val >= m_width)
    return BitVec(m_width, 0);
  return BitVec(m_width, m_val << o.m_val);
}

BitVec BitVec::lshr(const BitVec &o) const {
  chk(o);
  if (o.m_val >= m_width)
    return BitVec(m_width, 0);
  return BitVec(m_width, m_val >> o.m_val);
}

BitVec BitVec::ashr(const BitVec &o) const {
  chk(o);
  uint64_t sh = o.m_val >= m_width ? m_width - 1 : o.m_val;
  return BitVec(m_width, (uint64_t)(sval() >> sh));
}

BitVec BitVec::sext(unsigned w) const {
  assert(w >= m_width);
  return BitVec(w, (uint64_t)sval());
}

BitVec BitVec::extract(unsigned hi, unsigned lo) const {
  assert(hi < m_width && lo <= hi);
  return BitVec(hi - lo + 1, m_val >> lo);
}

BitVec BitVec::concat(const BitVec &lsb) const {
  assert(m_width + lsb.m_width <= 64);
  return BitVec(m_width + lsb.m_width, (m_val << lsb.m_width) | lsb.m_val);
}

std::string BitVec::str() const {
  std::ostringstream ss;
  ss << m_val << "<" << m_width << ">";
  return ss.str();
}

bool overflow_mul(const BitVec &a, const BitVec &b) {
  // widen to 2w and compare against the signed range of w bits
  assert(a.width() == b.width() && a.width() <= 32);
  int64_t prod = a.sval() * b.sval();
  int64_t lo = -(int64_t(1) << (a.width() - 1));
  int64_t hi = (int64_t(1) << (a.width() - 1)) - 1;
  return prod < lo || prod > hi;
}

} // namespace tval
