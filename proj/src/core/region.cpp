#include "core/region.h"

namespace tval {

RegionTable::RegionTable() {
  add({RegionKind::Free, "free"});
  m_heap = add({RegionKind::Heap, "hp"});
  m_cl = add({RegionKind::Cl, "cl"});
  m_cv = add({RegionKind::Cv, "cv"});
  m_stk = add({RegionKind::Stk, "stk"});
  m_cs = add({RegionKind::Cs, "cs"});
}

RegionTable::Idx RegionTable::add(const RegionId &r) {
  auto key = std::make_pair(r.kind, r.name);
  auto it = m_index.find(key);
  if (it != m_index.end())
    return it->second;
  Idx i = (Idx)m_regions.size();
  m_regions.push_back(r);
  m_index.emplace(key, i);
  return i;
}

RegionTable::Idx RegionTable::find(RegionKind kind, const std::string &name) const {
  auto it = m_index.find({kind, name});
  assert(it != m_index.end() && "unknown region");
  return it->second;
}

bool RegionTable::has(RegionKind kind, const std::string &name) const {
  return m_index.count({kind, name}) != 0;
}

static void collect(const std::vector<RegionId> &rs, RegionKind k,
                    std::vector<RegionTable::Idx> &out) {
  for (size_t i = 0; i < rs.size(); i++)
    if (rs[i].kind == k)
      out.push_back((RegionTable::Idx)i);
}

std::vector<RegionTable::Idx> RegionTable::globals() const {
  std::vector<Idx> v;
  collect(m_regions, RegionKind::Global, v);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::globals_ro() const {
  std::vector<Idx> v;
  for (Idx i : globals())
    if (m_regions[i].read_only)
      v.push_back(i);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::globals_rw() const {
  std::vector<Idx> v;
  for (Idx i : globals())
    if (!m_regions[i].read_only)
      v.push_back(i);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::params() const {
  std::vector<Idx> v, vr;
  for (size_t i = 0; i < m_regions.size(); i++)
    if (m_regions[i].kind == RegionKind::Param) {
      if (m_regions[i].name == "vrdc")
        vr.push_back((Idx)i);
      else
        v.push_back((Idx)i);
    }
  v.insert(v.end(), vr.begin(), vr.end());
  return v;
}

std::vector<RegionTable::Idx> RegionTable::sites() const {
  std::vector<Idx> v;
  collect(m_regions, RegionKind::AllocSite, v);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::sites(SiteClass c) const {
  std::vector<Idx> v;
  for (Idx i : sites())
    if (m_regions[i].zclass == c)
      v.push_back(i);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::asm_only() const {
  std::vector<Idx> v;
  collect(m_regions, RegionKind::AsmOnly, v);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::asm_only_ro() const {
  std::vector<Idx> v;
  for (Idx i : asm_only())
    if (m_regions[i].read_only)
      v.push_back(i);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::asm_only_rw() const {
  std::vector<Idx> v;
  for (Idx i : asm_only())
    if (!m_regions[i].read_only)
      v.push_back(i);
  return v;
}

std::vector<RegionTable::Idx> RegionTable::common() const {
  std::vector<Idx> v = globals();
  auto y = params();
  v.insert(v.end(), y.begin(), y.end());
  auto z = sites();
  v.insert(v.end(), z.begin(), z.end());
  v.push_back(m_heap);
  v.push_back(m_cl);
  return v;
}

bool RegionTable::has_vrdc() const { return has(RegionKind::Param, "vrdc"); }

RegionTable::Idx RegionTable::vrdc() const {
  return find(RegionKind::Param, "vrdc");
}

std::string RegionTable::name_of(Idx i) const {
  const RegionId &r = m_regions[i];
  switch (r.kind) {
  case RegionKind::Global: return "g." + r.name;
  case RegionKind::Param: return "y." + r.name;
  case RegionKind::AllocSite: return "z." + r.name;
  case RegionKind::AsmOnly: return "f." + r.name;
  default: return r.name;
  }
}

} // namespace tval
