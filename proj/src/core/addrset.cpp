#include "core/addrset.h"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tval {

AddrSet AddrSet::full(unsigned width) {
  uint64_t top = width >= 64 ? ~uint64_t(0) : (uint64_t(1) << width) - 1;
  return interval(0, top);
}

AddrSet AddrSet::interval(uint64_t lb, uint64_t ub) {
  AddrSet s;
  if (lb <= ub)
    s.m_ivs.push_back({lb, ub});
  return s;
}

bool AddrSet::contains(uint64_t a) const {
  for (auto &iv : m_ivs)
    if (iv.lb <= a && a <= iv.ub)
      return true;
  return false;
}

bool AddrSet::contains_interval(uint64_t lb, uint64_t ub) const {
  if (lb > ub)
    return true; // empty query interval
  for (auto &iv : m_ivs)
    if (iv.lb <= lb && ub <= iv.ub)
      return true;
  return false;
}

uint64_t AddrSet::size() const {
  uint64_t n = 0;
  for (auto &iv : m_ivs)
    n += iv.ub - iv.lb + 1;
  return n;
}

uint64_t AddrSet::lb() const {
  assert(!m_ivs.empty());
  return m_ivs.front().lb;
}

uint64_t AddrSet::ub() const {
  assert(!m_ivs.empty());
  return m_ivs.back().ub;
}

void AddrSet::normalize() {
  if (m_ivs.empty())
    return;
  std::sort(m_ivs.begin(), m_ivs.end(),
            [](const Interval &a, const Interval &b) { return a.lb < b.lb; });
  std::vector<Interval> out;
  out.push_back(m_ivs.front());
  for (size_t i = 1; i < m_ivs.size(); i++) {
    Interval &last = out.back();
    const Interval &cur = m_ivs[i];
    // merge overlapping or adjacent intervals
    if (cur.lb <= last.ub || (last.ub != ~uint64_t(0) && cur.lb == last.ub + 1))
      last.ub = std::max(last.ub, cur.ub);
    else
      out.push_back(cur);
  }
  m_ivs = std::move(out);
}

AddrSet AddrSet::unite(const AddrSet &o) const {
  AddrSet s;
  s.m_ivs = m_ivs;
  s.m_ivs.insert(s.m_ivs.end(), o.m_ivs.begin(), o.m_ivs.end());
  s.normalize();
  return s;
}

AddrSet AddrSet::intersect(const AddrSet &o) const {
  AddrSet s;
  for (auto &a : m_ivs)
    for (auto &b : o.m_ivs) {
      uint64_t lb = std::max(a.lb, b.lb), ub = std::min(a.ub, b.ub);
      if (lb <= ub)
        s.m_ivs.push_back({lb, ub});
    }
  s.normalize();
  return s;
}

AddrSet AddrSet::subtract(const AddrSet &o) const {
  std::vector<Interval> cur = m_ivs;
  for (auto &b : o.m_ivs) {
    std::vector<Interval> next;
    for (auto &a : cur) {
      if (b.ub < a.lb || b.lb > a.ub) {
        next.push_back(a);
        continue;
      }
      if (a.lb < b.lb)
        next.push_back({a.lb, b.lb - 1});
      if (b.ub < a.ub)
        next.push_back({b.ub + 1, a.ub});
    }
    cur = std::move(next);
  }
  AddrSet s;
  s.m_ivs = std::move(cur);
  s.normalize();
  return s;
}

AddrSet AddrSet::complement(unsigned width) const {
  return full(width).subtract(*this);
}

bool AddrSet::overlaps(const AddrSet &o) const {
  for (auto &a : m_ivs)
    for (auto &b : o.m_ivs)
      if (std::max(a.lb, b.lb) <= std::min(a.ub, b.ub))
        return true;
  return false;
}

bool AddrSet::subset_of(const AddrSet &o) const {
  for (auto &a : m_ivs)
    if (!o.contains_interval(a.lb, a.ub))
      return false;
  return true;
}

std::string AddrSet::str() const {
  if (m_ivs.empty())
    return "{}";
  std::ostringstream ss;
  ss << "{";
  for (size_t i = 0; i < m_ivs.size(); i++) {
    if (i)
      ss << ",";
    ss << "[" << m_ivs[i].lb << "," << m_ivs[i].ub << "]";
  }
  ss << "}";
  return ss.str();
}

size_t AddrSet::hash() const {
  size_t h = 0xcbf29ce484222325ull;
  for (auto &iv : m_ivs) {
    h = (h ^ iv.lb) * 0x100000001b3ull;
    h = (h ^ iv.ub) * 0x100000001b3ull;
  }
  return h;
}

bool addrset_ov(const std::vector<AddrSet> &sets) {
  assert(sets.size() >= 2);
  for (size_t i = 0; i < sets.size(); i++)
    for (size_t j = i + 1; j < sets.size(); j++)
      if (sets[i].overlaps(sets[j]))
        return true;
  return false;
}

} // namespace tval
