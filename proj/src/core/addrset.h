#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tval {

// A set of addresses in the 2^d address space, kept as a normalized
// (sorted, disjoint, non-adjacent) list of closed intervals [lb, ub].
// All sets arising in the execution semantics are unions of a handful
// of intervals, so complement and difference stay cheap.
class AddrSet {
public:
  struct Interval {
    uint64_t lb, ub; // inclusive, lb <= ub
    bool operator==(const Interval &o) const = default;
  };

  AddrSet() = default;
  static AddrSet empty() { return AddrSet(); }
  static AddrSet full(unsigned width);
  // [lb, ub] if lb <=u ub, else the empty set
  static AddrSet interval(uint64_t lb, uint64_t ub);
  static AddrSet point(uint64_t a) { return interval(a, a); }

  bool is_empty() const { return m_ivs.empty(); }
  bool contains(uint64_t a) const;
  bool contains_interval(uint64_t lb, uint64_t ub) const;
  // number of addresses, mod 2^64 (full 32-bit space fits in 64 bits)
  uint64_t size() const;
  uint64_t lb() const; // smallest address; set must be non-empty
  uint64_t ub() const; // largest address; set must be non-empty
  bool is_interval() const { return m_ivs.size() == 1; }

  AddrSet unite(const AddrSet &o) const;
  AddrSet intersect(const AddrSet &o) const;
  AddrSet subtract(const AddrSet &o) const;
  AddrSet complement(unsigned width) const;

  bool overlaps(const AddrSet &o) const;
  bool subset_of(const AddrSet &o) const;

  bool operator==(const AddrSet &o) const { return m_ivs == o.m_ivs; }
  bool operator!=(const AddrSet &o) const { return !(*this == o); }

  const std::vector<Interval> &intervals() const { return m_ivs; }
  std::string str() const;
  size_t hash() const;

private:
  void normalize();
  std::vector<Interval> m_ivs;
};

// ov(S1, ..., Sm): true iff some pair intersects
bool addrset_ov(const std::vector<AddrSet> &sets);

} // namespace tval
