#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bitset>
#include <random>

#include "core/addrset.h"
#include "core/bitvec.h"
#include "core/eval.h"
#include "core/expr.h"
#include "core/mem.h"
#include "core/trace.h"
#include "core/world.h"

using namespace tval;

TEST_CASE("bitvec arithmetic wraps mod 2^w") {
  BitVec a(8, 0xff), b(8, 1);
  CHECK(a.add(b).uval() == 0);
  CHECK(a.sval() == -1);
  CHECK(BitVec(8, 0x80).sval() == -128);
  CHECK(BitVec(8, 200).ult(BitVec(8, 201)));
  CHECK(BitVec(8, 200).slt(BitVec(8, 100))); // -56 < 100
}

TEST_CASE("overflow_mul per signed widen-and-compare") {
  CHECK(overflow_mul(BitVec(32, 2147483647), BitVec(32, 2)));
  CHECK(!overflow_mul(BitVec(32, 0), BitVec(32, 123456)));
  // 2^(d-2) * 2 = 2^(d-1) overflows (max is 2^(d-1)-1); * 1 does not
  CHECK(!overflow_mul(BitVec(8, 1u << 6), BitVec(8, 1)));
  CHECK(overflow_mul(BitVec(8, 1u << 6), BitVec(8, 2)));
  CHECK(overflow_mul(BitVec(8, 1u << 6), BitVec(8, 4)));
}

TEST_CASE("addrset_ov examples") {
  AddrSet a = AddrSet::interval(0, 3);
  AddrSet b = AddrSet::interval(4, 7);
  AddrSet c = AddrSet::interval(3, 7);
  CHECK(!addrset_ov({a, b}));
  CHECK(addrset_ov({a, c}));
  AddrSet x = AddrSet::interval(0, 1), y = AddrSet::interval(4, 5),
          z = AddrSet::interval(5, 6);
  CHECK(addrset_ov({x, y, z})); // pairwise over m sets
}

TEST_CASE("addrset complement examples") {
  unsigned d = 8;
  CHECK(AddrSet().complement(d) == AddrSet::full(d));
  CHECK(AddrSet::full(d).complement(d) == AddrSet());
  AddrSet s = AddrSet::interval(0, (1u << d) - 2);
  AddrSet expect = AddrSet::point((1u << d) - 1);
  CHECK(s.complement(d) == expect);
}

namespace {
AddrSet random_set(std::mt19937_64 &rng) {
  AddrSet s;
  unsigned n = rng() % 4;
  for (unsigned i = 0; i < n; i++) {
    uint64_t lo = rng() & 0xff;
    uint64_t hi = lo + (rng() % 16);
    s = s.unite(AddrSet::interval(lo, std::min<uint64_t>(hi, 0xff)));
  }
  return s;
}

std::bitset<256> to_bits(const AddrSet &s) {
  std::bitset<256> b;
  for (unsigned a = 0; a < 256; a++)
    if (s.contains(a))
      b.set(a);
  return b;
}
} // namespace

TEST_CASE("addrset boolean algebra vs bitset oracle at d=8") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; i++) {
    AddrSet a = random_set(rng), b = random_set(rng);
    std::bitset<256> ba = to_bits(a), bb = to_bits(b);
    CHECK(to_bits(a.unite(b)) == (ba | bb));
    CHECK(to_bits(a.intersect(b)) == (ba & bb));
    CHECK(to_bits(a.subtract(b)) == (ba & ~bb));
    CHECK(to_bits(a.complement(8)) == ~ba);
    // De Morgan
    CHECK(to_bits(a.unite(b).complement(8)) ==
          (to_bits(a.complement(8)) & to_bits(b.complement(8))));
    CHECK(a.subset_of(b) == ((ba & ~bb).none()));
    CHECK(a.overlaps(b) == ((ba & bb).any()));
    // normalization is canonical
    AddrSet c = a.unite(b).subtract(b).unite(a.intersect(b));
    std::bitset<256> bc = ((ba | bb) & ~bb) | (ba & bb);
    CHECK(to_bits(c) == bc);
    AddrSet c2;
    for (unsigned x = 0; x < 256; x++)
      if (bc.test(x))
        c2 = c2.unite(AddrSet::point(x));
    CHECK(c == c2);
  }
}

TEST_CASE("mem select/store little endian round trip") {
  MemArray m;
  MemArray m2 = m.store(BitVec(32, 0x10), 2, BitVec(16, 0xBEEF));
  CHECK(m2.select(BitVec(32, 0x10), 1).uval() == 0xEF);
  CHECK(m2.select(BitVec(32, 0x11), 1).uval() == 0xBE);
  MemArray m3 = m.store(BitVec(32, 0x40), 4, BitVec(32, 0x01020304));
  CHECK(m3.select(BitVec(32, 0x40), 4).uval() == 0x01020304);
  // frame: store_1 leaves the neighbour byte alone
  MemArray m4 = m3.store(BitVec(32, 0x40), 1, BitVec(8, 0xaa));
  CHECK(m4.select(BitVec(32, 0x41), 1) == m3.select(BitVec(32, 0x41), 1));
}

TEST_CASE("mem project / update per the projection laws") {
  MemArray m;
  m.store1(5, 9);
  AddrSet s5 = AddrSet::point(5);
  MemArray p = m.project(s5, 8);
  CHECK(p.load1(5) == 9);
  CHECK(p.load1(6) == 0);
  CHECK(m.project(AddrSet(), 8) == MemArray());
  CHECK(m.project(AddrSet::full(8), 8) == m);

  MemArray src;
  src.store1(0, 7);
  MemArray base;
  base.store1(0, 1);
  base.store1(1, 2);
  MemArray u = base.update(AddrSet::point(0), src, 8);
  CHECK(u.load1(0) == 7);
  CHECK(u.load1(1) == 2);
  CHECK(base.update(AddrSet(), src, 8) == base);
  MemArray full = base.update(AddrSet::full(8), src, 8);
  CHECK(full == src);
}

TEST_CASE("projection laws on random triples at d=8") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; i++) {
    AddrSet s = random_set(rng);
    MemArray m, src;
    for (int j = 0; j < 8; j++) {
      m.store1(rng() & 0xff, (uint8_t)rng());
      src.store1(rng() & 0xff, (uint8_t)rng());
    }
    MemArray u = m.update(s, src, 8);
    CHECK(u.project(s, 8) == src.project(s, 8));
    CHECK(u.project(s.complement(8), 8) == m.project(s.complement(8), 8));
  }
}

namespace {
TraceEvent ev_exit() {
  TraceEvent e;
  e.kind = EvKind::Exit;
  return e;
}
TraceEvent ev_dealloc(RegionTable::Idx z) {
  TraceEvent e;
  e.kind = EvKind::Dealloc;
  e.site = z;
  return e;
}
TraceEvent silent() { return TraceEvent{}; }
} // namespace

TEST_CASE("stuttering equivalence and prefix") {
  TraceEvent e1 = ev_dealloc(7), e2 = ev_dealloc(8);
  Trace a = {silent(), e1, silent(), silent(), e2};
  Trace b = {e1, e2, silent()};
  CHECK(trace_stutter_eq(a, b));
  Trace c = {e1};
  Trace d = {e1, e2};
  CHECK(trace_stutter_prefix(c, d));
  CHECK(!trace_stutter_eq(c, d));
  Trace x = {e1, e2}, y = {e2, e1};
  CHECK(!trace_stutter_eq(x, y));
  CHECK(!trace_stutter_prefix(x, y));
  CHECK(trace_stutter_eq(Trace{ev_exit()}, Trace{silent(), ev_exit()}));
}

TEST_CASE("world reads are pure in (seed, history)") {
  WorldState w1(42), w2(42);
  auto v1 = w1.read("bv", {Type::bv(8)}, 8);
  auto v2 = w2.read("bv", {Type::bv(8)}, 8);
  CHECK(v1 == v2);
  CHECK(w1 == w2);
  auto v3 = w1.read("bv", {Type::bv(8)}, 8);
  auto v4 = w2.read("bv", {Type::bv(8)}, 8);
  CHECK(v3 == v4);
  w1.write_digest(99);
  auto v5 = w1.read("bv", {Type::bv(8)}, 8);
  auto v6 = w2.read("bv", {Type::bv(8)}, 8);
  CHECK(!(w1 == w2));
  CHECK(!(v5 == v6)); // different histories
  WorldState w3(43);
  auto v7 = w3.read("bv", {Type::bv(8)}, 8);
  CHECK(!(v7 == v1));
}

TEST_CASE("expression evaluator basics") {
  std::map<std::string, Value> env;
  env["x"] = Value(BitVec(8, 3));
  env["s"] = Value(AddrSet::interval(4, 10));
  Eval ev(env, 8);
  auto x = eb::var("x", Type::bv(8));
  CHECK(ev(eb::add(x, eb::bv(8, 1))).bv().uval() == 4);
  auto s = eb::var("s", Type::set());
  CHECK(ev.truth(eb::contains(s, eb::bv(8, 7))));
  CHECK(!ev.truth(eb::contains(s, eb::bv(8, 3))));
  // forall a: a in s => 4 <= a <= 10
  auto a = eb::var("a", Type::bv(8));
  auto body = eb::implies(eb::contains(s, a),
                          eb::land({eb::ule(eb::bv(8, 4), a), eb::ule(a, eb::bv(8, 10))}));
  CHECK(ev.truth(eb::forall("a", 8, body)));
  auto body2 = eb::implies(eb::contains(s, a), eb::ule(a, eb::bv(8, 9)));
  CHECK(!ev.truth(eb::forall("a", 8, body2)));
}
