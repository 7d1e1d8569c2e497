#include "core/mem.h"

#include <cassert>
#include <sstream>

namespace tval {

BitVec MemArray::select(const BitVec &addr, unsigned sz) const {
  assert(sz >= 1 && sz <= 8);
  uint64_t v = 0;
  for (unsigned i = 0; i < sz; i++) {
    uint64_t a = BitVec::mask(addr.width(), addr.uval() + i);
    v |= uint64_t(load1(a)) << (8 * i);
  }
  return BitVec(8 * sz, v);
}

MemArray MemArray::store(const BitVec &addr, unsigned sz, const BitVec &v) const {
  assert(sz >= 1 && sz <= 8 && v.width() == 8 * sz);
  MemArray m = *this;
  for (unsigned i = 0; i < sz; i++) {
    uint64_t a = BitVec::mask(addr.width(), addr.uval() + i);
    m.store1(a, (uint8_t)(v.uval() >> (8 * i)));
  }
  return m;
}

MemArray MemArray::project(const AddrSet &s, unsigned width) const {
  MemArray m(0); // sentinel 0 outside s
  if (m_default == 0) {
    // sparse walk: only overridden bytes can be non-zero
    for (auto &[a, b] : m_over)
      if (s.contains(a))
        m.store1(a, b);
    return m;
  }
  for (auto &iv : s.intervals())
    for (uint64_t a = iv.lb;; a++) {
      m.store1(a, load1(a));
      if (a == iv.ub)
        break;
    }
  (void)width;
  return m;
}

MemArray MemArray::update(const AddrSet &s, const MemArray &src, unsigned width) const {
  MemArray m = *this;
  if (src.m_default == m_default) {
    // clear stale overrides inside s, then merge src's
    for (auto it = m.m_over.begin(); it != m.m_over.end();) {
      if (s.contains(it->first))
        it = m.m_over.erase(it);
      else
        ++it;
    }
    for (auto &[a, b] : src.m_over)
      if (s.contains(a))
        m.store1(a, b);
    return m;
  }
  for (auto &iv : s.intervals())
    for (uint64_t a = iv.lb;; a++) {
      m.store1(a, src.load1(a));
      if (a == iv.ub)
        break;
    }
  (void)width;
  return m;
}

bool MemArray::equal_on(const AddrSet &s, const MemArray &o) const {
  if (m_default == o.m_default) {
    for (auto &[a, b] : m_over)
      if (s.contains(a) && o.load1(a) != b)
        return false;
    for (auto &[a, b] : o.m_over)
      if (s.contains(a) && load1(a) != b)
        return false;
    return true;
  }
  for (auto &iv : s.intervals())
    for (uint64_t a = iv.lb;; a++) {
      if (load1(a) != o.load1(a))
        return false;
      if (a == iv.ub)
        break;
    }
  return true;
}

bool MemArray::operator==(const MemArray &o) const {
  if (m_default == o.m_default)
    return m_over == o.m_over;
  // differing defaults: equal only if every address is overridden in the
  // sparser map, which we never produce in practice
  return false;
}

size_t MemArray::hash() const {
  size_t h = 0x9e3779b97f4a7c15ull ^ m_default;
  for (auto &[a, b] : m_over)
    h = (h ^ (a * 131 + b)) * 0x100000001b3ull;
  return h;
}

std::string MemArray::str() const {
  std::ostringstream ss;
  ss << "[def=" << (int)m_default;
  size_t n = 0;
  for (auto &[a, b] : m_over) {
    ss << " " << a << ":" << (int)b;
    if (++n > 16) {
      ss << " ...";
      break;
    }
  }
  ss << "]";
  return ss.str();
}

} // namespace tval
