#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tval {

enum class RegionKind : uint8_t {
  Global,    // g in G
  Param,     // y in Y, including vrdc
  AllocSite, // z in Z (Zl or Za)
  AsmOnly,   // f in F
  Heap,
  Cl,  // callers' locals
  Cv,  // callers' virtual
  Stk, // assembly stack frame
  Cs,  // callers' stack
  Free,
};

enum class SiteClass : uint8_t { Zl, Za };

struct RegionId {
  RegionKind kind;
  std::string name;         // global/param/asm-only name or alloc-site pc label
  SiteClass zclass = SiteClass::Zl;
  bool read_only = false;   // for Global/AsmOnly
  uint64_t decl_size = 0;   // declared object size (Global/Param/AsmOnly)
  uint64_t decl_align = 1;  // declared alignment
  uint64_t fixed_addr = 0;  // AsmOnly: address from the symbol table
  std::vector<uint8_t> ro_init; // read-only initializer bytes

  bool is_site() const { return kind == RegionKind::AllocSite; }
  bool operator==(const RegionId &o) const {
    return kind == o.kind && name == o.name;
  }
};

// Interning table shared by both sides of a validation run.  Region
// indices key address sets in machine states and encode the codomain
// of the allocation state array.  Index 0 is reserved for `free`.
class RegionTable {
public:
  using Idx = uint16_t;
  static constexpr Idx kFree = 0;

  RegionTable();

  Idx add(const RegionId &r);
  Idx find(RegionKind kind, const std::string &name) const; // asserts presence
  bool has(RegionKind kind, const std::string &name) const;
  const RegionId &get(Idx i) const { return m_regions[i]; }
  size_t count() const { return m_regions.size(); }

  Idx heap() const { return m_heap; }
  Idx cl() const { return m_cl; }
  Idx cv() const { return m_cv; }
  Idx stk() const { return m_stk; }
  Idx cs() const { return m_cs; }

  std::vector<Idx> globals() const;        // G
  std::vector<Idx> globals_ro() const;     // Gr
  std::vector<Idx> globals_rw() const;     // Gw
  std::vector<Idx> params() const;         // Y (vrdc last if present)
  std::vector<Idx> sites() const;          // Z
  std::vector<Idx> sites(SiteClass c) const;
  std::vector<Idx> asm_only() const;       // F
  std::vector<Idx> asm_only_ro() const;
  std::vector<Idx> asm_only_rw() const;
  std::vector<Idx> common() const;         // B = G u Y u Z u {heap, cl}
  bool has_vrdc() const;
  Idx vrdc() const;

  std::string name_of(Idx i) const;

private:
  std::vector<RegionId> m_regions;
  std::map<std::pair<RegionKind, std::string>, Idx> m_index;
  Idx m_heap, m_cl, m_cv, m_stk, m_cs;
};

} // namespace tval
