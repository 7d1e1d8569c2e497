#include "core/world.h"

#include <cassert>
#include <sstream>

namespace tval {

static uint64_t splitmix(uint64_t &x) {
  x += 0x9e3779b97f4a7c15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

static uint64_t fnv(const std::string &s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s)
    h = (h ^ (uint8_t)c) * 0x100000001b3ull;
  return h;
}

uint64_t value_digest(const Value &v) {
  return 0x1234567 ^ v.hash();
}

uint64_t values_digest(const std::vector<Value> &vs) {
  uint64_t h = 0x85ebca6b;
  for (auto &v : vs)
    h = h * 0xc2b2ae35 + value_digest(v);
  return h;
}

uint64_t WorldState::rng() { return splitmix(m_hist); }

namespace {

struct RegionReq {
  char cls; // 'h'=heap, 'c'=cl, 'v'=cv, 'g'=global, 'y'=param, 'r'=vrdc
  uint64_t size = 0;
  uint64_t align = 1;
};

std::vector<RegionReq> parse_layout(const std::string &kind) {
  std::vector<RegionReq> out;
  std::stringstream ss(kind);
  std::string tok;
  std::getline(ss, tok, '|'); // skip the "esets ..." prefix
  while (std::getline(ss, tok, '|')) {
    if (tok.empty())
      continue;
    RegionReq r;
    std::stringstream ts(tok);
    std::string f;
    std::getline(ts, f, ':');
    if (f == "hp") r.cls = 'h';
    else if (f == "cl") r.cls = 'c';
    else if (f == "cv") r.cls = 'v';
    else if (f == "g") r.cls = 'g';
    else if (f == "y") r.cls = 'y';
    else if (f == "vrdc") r.cls = 'r';
    else continue;
    if (r.cls == 'g' || r.cls == 'y')
      std::getline(ts, f, ':'); // skip the region name
    if (r.cls != 'r' && std::getline(ts, f, ':'))
      r.size = strtoull(f.c_str(), nullptr, 0);
    if (std::getline(ts, f, ':'))
      r.align = strtoull(f.c_str(), nullptr, 0);
    out.push_back(r);
  }
  return out;
}

} // namespace

// Entry address-set synthesis.  Produces a plausible layout most of the
// time; a fraction of seeds yield corrupted (overlapping) layouts so
// the well-formedness checks stay exercised.  The window
// [space/32, space/8) is left free for assembly-only globals, whose
// addresses come from the symbol table.
static std::vector<Value> synth_entry_sets(uint64_t &st, const std::string &kind,
                                           unsigned width) {
  std::vector<RegionReq> reqs = parse_layout(kind);
  uint64_t space = width >= 64 ? ~uint64_t(0) : (uint64_t(1) << width);
  uint64_t wordsz = width / 8;
  assert(wordsz >= 1);
  auto roundup = [&](uint64_t v, uint64_t m) { return (v + m - 1) / m * m; };

  bool corrupt = (splitmix(st) & 7) == 0;

  // parameters: contiguous block at a 16-aligned base in the upper part
  uint64_t psz = 0;
  for (auto &r : reqs)
    if (r.cls == 'y')
      psz += roundup(r.size, wordsz);
  uint64_t vrdcsz = 0;
  for (auto &r : reqs)
    if (r.cls == 'r') {
      uint64_t els = splitmix(st) % 4; // 0..3 variadic words
      vrdcsz = els * wordsz;
      r.size = vrdcsz;
    }

  uint64_t hi_end = space - wordsz; // keep the very top clear
  uint64_t pbase = hi_end - roundup(psz + vrdcsz + 16 * wordsz, 16);
  pbase = pbase / 16 * 16;
  pbase -= 16 * (splitmix(st) % 3);

  std::vector<Value> out;
  uint64_t pcur = pbase;
  uint64_t glo = space / 8;                  // globals band start
  uint64_t ghi = space / 2;
  uint64_t gcur = glo + (splitmix(st) % 8) * wordsz;
  uint64_t heap_base = 0, heap_end = 0;

  // first pass computes positions per class in request order
  uint64_t param_end = pbase;
  for (auto &r : reqs)
    if (r.cls == 'y' || r.cls == 'r')
      param_end += roundup(r.size, wordsz);

  uint64_t clbase = param_end + wordsz * (1 + splitmix(st) % 3);

  for (auto &r : reqs) {
    switch (r.cls) {
    case 'y': {
      out.push_back(Value(AddrSet::interval(pcur, pcur + r.size - 1)));
      pcur += roundup(r.size, wordsz);
      break;
    }
    case 'r': {
      if (r.size == 0)
        out.push_back(Value(AddrSet()));
      else {
        out.push_back(Value(AddrSet::interval(pcur, pcur + r.size - 1)));
        pcur += roundup(r.size, wordsz);
      }
      break;
    }
    case 'g': {
      gcur = roundup(gcur, r.align ? r.align : 1);
      if (gcur == 0)
        gcur = r.align;
      out.push_back(Value(AddrSet::interval(gcur, gcur + r.size - 1)));
      gcur += r.size + (splitmix(st) % 2) * wordsz;
      break;
    }
    case 'h': {
      uint64_t hsz = (1 + splitmix(st) % 8) * wordsz * 2;
      heap_base = roundup(gcur + wordsz, wordsz);
      heap_end = heap_base + hsz - 1;
      if (corrupt && gcur > glo)
        heap_base = glo; // overlap the globals band
      out.push_back(Value(AddrSet::interval(heap_base, heap_end)));
      gcur = heap_end + 1;
      break;
    }
    case 'c': {
      uint64_t csz = (splitmix(st) % 6) * wordsz;
      if (csz == 0)
        out.push_back(Value(AddrSet()));
      else
        out.push_back(Value(AddrSet::interval(clbase, clbase + csz - 1)));
      clbase += csz;
      break;
    }
    case 'v': {
      uint64_t vsz = (splitmix(st) % 4 == 0) ? wordsz * 2 : 0;
      if (vsz == 0)
        out.push_back(Value(AddrSet()));
      else {
        uint64_t vbase = clbase + wordsz;
        out.push_back(Value(AddrSet::interval(vbase, vbase + vsz - 1)));
        clbase = vbase + vsz;
      }
      break;
    }
    default:
      out.push_back(Value(AddrSet()));
    }
  }
  (void)ghi;
  return out;
}

std::vector<Value> WorldState::read(const std::string &kind,
                                    const std::vector<Type> &tys, unsigned width) {
  uint64_t st = m_hist ^ (m_seed * 0x2545f4914f6cdd1dull) ^ fnv(kind);
  std::vector<Value> out;
  if (kind.rfind("esets", 0) == 0) {
    out = synth_entry_sets(st, kind, width);
    assert(out.size() == tys.size());
  } else {
    for (auto &t : tys) {
      switch (t.sort) {
      case Sort::BV:
        out.push_back(Value(BitVec(t.width, splitmix(st))));
        break;
      case Sort::Mem: {
        MemArray m(0);
        unsigned k = splitmix(st) % 17;
        for (unsigned i = 0; i < k; i++) {
          uint64_t a = BitVec::mask(width, splitmix(st));
          m.store1(a, (uint8_t)splitmix(st));
        }
        out.push_back(Value(std::move(m)));
        break;
      }
      case Sort::Set: {
        uint64_t lo = BitVec::mask(width, splitmix(st));
        uint64_t len = splitmix(st) % 8;
        out.push_back(Value(AddrSet::interval(lo, lo + len)));
        break;
      }
      case Sort::Bool:
        out.push_back(Value((splitmix(st) & 1) != 0));
        break;
      case Sort::World:
        assert(false && "cannot read a world");
      }
    }
  }
  m_hist = m_hist * 0x100000001b3ull + values_digest(out) + fnv(kind);
  return out;
}

void WorldState::write_digest(uint64_t digest) {
  m_hist = m_hist * 0x100000001b3ull + digest + 0x5bd1e995;
}

} // namespace tval
