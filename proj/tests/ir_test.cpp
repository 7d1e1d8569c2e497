#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/exec.h"
#include "core/semantics.h"
#include "ir/lower.h"
#include "pointsto/pointsto.h"

using namespace tval;

// fib at d=8: ints are one byte, pointers one byte
static const char *kFib = R"(
declare i8 @printf(ptr, ...)
global S size 4 align 1 ro init 37 100 10 0

def i8 @fib(i8 %n, i8 %m) {
I1: %i = alloc 1, i8, 1
I1b: %t0 = load i8, 1, %n
I1c: %t1 = add %t0, 2
I2: %v = alloc %t1, i8, 1
I3: store i8, 1, 0, %v
I3b: %v1 = padd %v, 1
I3c: store i8, 1, 1, %v1
I3d: store i8, 1, 2, %i
I4: %ti = load i8, 1, %i
I4b: %tm = load i8, 1, %m
I4c: %c = sgt %ti, %tm
I4d: br %c, I7, I5
I5: %ti2 = load i8, 1, %i
I5b: %p2 = padd %v, %ti2
I5c: %pm1 = psub %p2, 1
I5d: %pm2 = psub %p2, 2
I5e: %a = load i8, 1, %pm1
I5f: %b = load i8, 1, %pm2
I5g: %s = add %a, %b
I5h: store i8, 1, %s, %p2
I6: %ti3 = load i8, 1, %i
I6b: %one = add %ti3, 1
I6c: store i8, 1, %one, %i
I6d: jmp I4
I7: %p7 = alloc 1, ptr, 1
I8: %p8 = alloc 1, {i8,i8}, 1
I9: store ptr, 1, @S, %p7
I9b: %tm2 = load i8, 1, %m
I9c: store i8, 1, %tm2, %p8
I9d: %pv = padd %p8, 1
I9e: %tm3 = load i8, 1, %m
I9f: %pvm = padd %v, %tm3
I9g: %vm = load i8, 1, %pvm
I9h: store i8, 1, %vm, %pv
I10: %t = call i8 @printf(%p7, %p8)
I11: dealloc I8
I12: dealloc I7
I13: %tm4 = load i8, 1, %m
I13b: %pr = padd %v, %tm4
I13c: %r = load i8, 1, %pr
I14: dealloc I2
I15: dealloc I1
I16: ret %r
}
)";

TEST_CASE("parse fib: sites and structure") {
  IRProgram prog = parse_ir(kFib);
  REQUIRE(prog.procs.size() == 1);
  const IRProcedure &p = prog.procs[0];
  CHECK(p.name == "fib");
  CHECK(p.params.size() == 2);
  auto rt = make_region_table(prog, p, 1);
  auto sites = rt->sites();
  REQUIRE(sites.size() == 4);
  std::vector<std::string> names;
  for (auto z : sites)
    names.push_back(rt->get(z).name);
  CHECK(names == std::vector<std::string>{"I1", "I2", "I7", "I8"});
  for (auto z : sites)
    CHECK(rt->get(z).zclass == SiteClass::Zl);
}

TEST_CASE("parse errors carry location") {
  CHECK_THROWS_AS(parse_ir("def i8 @f() {\nI1: ret 0\nI2: dealloc I9\n}"),
                  ParseError);
  CHECK_THROWS_AS(parse_ir("def i8 @f() {\nI1: %v = bogus 1\nI1: ret 0\n}"),
                  ParseError);
  // empty procedure parses and lowers to entry + ret only
  IRProgram p = parse_ir("def void @f() {\nI1: ret\n}");
  CHECK(p.procs[0].body.size() == 1);
}

TEST_CASE("pointsto: alloc, entry and transfer examples") {
  IRProgram prog = parse_ir(kFib);
  IRProcedure &p = prog.procs[0];
  auto rt = make_region_table(prog, p, 1);
  PointsToResult pt = analyze(p, *rt);
  auto zI2 = rt->find(RegionKind::AllocSite, "I2");
  // after alloc at I2, beta(v) = {I2}: check the "before" state of I3
  CHECK(pt.before.at("I3").beta_of("v") == RegionSet{zI2});
  // beta(&S) = {S}
  IROperand gs{IROperand::K::GlobalAddr, 0, "S"};
  CHECK(pt.beta_at("I9", gs, *rt) ==
        RegionSet{rt->find(RegionKind::Global, "S")});
  // transfer examples
  auto g1 = rt->find(RegionKind::Global, "S");
  CHECK(transfer_op("add", {{g1}, {zI2}}) == RegionSet{g1, zI2});
  CHECK(transfer_op("mul", {{g1}, {zI2}}) == RegionSet{});
  CHECK(transfer_op("neg", {{rt->heap()}}) == RegionSet{rt->heap()});
  // closure
  std::map<RegionTable::Idx, RegionSet> bm;
  bm[1] = {2};
  bm[2] = {3};
  CHECK(closure(bm, {1}) == RegionSet({1, 2, 3}));
  CHECK(closure({}, {5}) == RegionSet{5});
  std::map<RegionTable::Idx, RegionSet> cyc;
  cyc[1] = {1};
  CHECK(closure(cyc, {1}) == RegionSet{1});
  // printf observable regions contain S, heap, cl, I7, I8
  const RegionSet &obs = pt.call_observable.at("I10");
  CHECK(obs.count(g1));
  CHECK(obs.count(rt->heap()));
  CHECK(obs.count(rt->cl()));
  CHECK(obs.count(rt->find(RegionKind::AllocSite, "I7")));
  CHECK(obs.count(rt->find(RegionKind::AllocSite, "I8")));
  // analyze is a fixed point: rerunning yields the same result
  PointsToResult pt2 = analyze(p, *rt);
  for (auto &[k, v] : pt.before) {
    CHECK(pt2.before.at(k).beta == v.beta);
    CHECK(pt2.before.at(k).betaM == v.betaM);
  }
}

static int find_node(const TransitionGraph &g, const std::string &label) {
  for (size_t i = 0; i < g.nodes.size(); i++)
    if (g.nodes[i].label == label)
      return (int)i;
  return -1;
}

TEST_CASE("lowered fib: guard exhaustiveness and alloc event order") {
  IRProgram prog = parse_ir(kFib);
  IRProcedure &p = prog.procs[0];
  expand_variadic_macros(p, prog, 1);
  expand_call_sugar(p, prog, 1);
  auto rt = make_region_table(prog, p, 1);
  PointsToResult pt = analyze(p, *rt);
  TransitionGraph g = lower_ir(prog, p, pt, rt, 8);
  // guard shape holds by construction; make sure outgoing guards of
  // every branching node are negations of each other or a partition
  g.check_guard_shape();

  // run a few seeds to the I3 node and look for the alloc events
  int stop = find_node(g, "I3");
  REQUIRE(stop >= 0);
  auto zI1 = rt->find(RegionKind::AllocSite, "I1");
  auto zI2 = rt->find(RegionKind::AllocSite, "I2");
  int reached = 0;
  for (uint64_t seed = 0; seed < 40 && reached < 5; seed++) {
    MachineState st = initial_state(g, seed);
    RandomResolver rr(seed);
    ExecResult r = exec_path(g, g.start, st, rr, stop);
    REQUIRE(!r.error);
    if (r.final_node != stop)
      continue; // entry went to W on this seed
    reached++;
    std::vector<std::pair<EvKind, RegionTable::Idx>> evs;
    for (auto &ev : st.trace)
      if (ev.kind == EvKind::AllocBegin || ev.kind == EvKind::AllocEnd)
        evs.push_back({ev.kind, ev.site});
    REQUIRE(evs.size() == 4);
    CHECK(evs[0] == std::make_pair(EvKind::AllocBegin, zI1));
    CHECK(evs[1] == std::make_pair(EvKind::AllocEnd, zI1));
    CHECK(evs[2] == std::make_pair(EvKind::AllocBegin, zI2));
    CHECK(evs[3] == std::make_pair(EvKind::AllocEnd, zI2));
    // one silent event per executed instruction
    size_t silents = 0;
    for (auto &ev : st.trace)
      if (ev.is_silent())
        silents++;
    CHECK(silents == r.steps);
  }
  CHECK(reached >= 3);
}

TEST_CASE("exec is deterministic per seed") {
  IRProgram prog = parse_ir(kFib);
  IRProcedure &p = prog.procs[0];
  expand_variadic_macros(p, prog, 1);
  expand_call_sugar(p, prog, 1);
  auto rt = make_region_table(prog, p, 1);
  PointsToResult pt = analyze(p, *rt);
  TransitionGraph g = lower_ir(prog, p, pt, rt, 8);
  for (uint64_t seed : {3u, 9u, 23u}) {
    MachineState s1 = initial_state(g, seed), s2 = initial_state(g, seed);
    RandomResolver r1(seed), r2(seed);
    ExecResult a = exec_path(g, g.start, s1, r1, -1, 4000);
    ExecResult b = exec_path(g, g.start, s2, r2, -1, 4000);
    REQUIRE(!a.error);
    CHECK(a.final_node == b.final_node);
    CHECK(s1.env == s2.env);
    CHECK(trace_stutter_eq(s1.trace, s2.trace));
    CHECK(s1.trace.size() == s2.trace.size());
  }
}

TEST_CASE("variadic macro expansion shapes") {
  const char *src = R"(
def i8 @vsum(i8 %n, ...) {
I1: %ap = alloc 1, ptr, 1
I2: va_start %ap
I3: %x = va_arg i8, %ap
I4: va_end %ap
I5: dealloc I1
I6: ret %x
}
)";
  IRProgram prog = parse_ir(src);
  IRProcedure &p = prog.procs[0];
  expand_variadic_macros(p, prog, 1);
  // va_start -> va_start_ptr + store; va_arg -> load,load,padd,store;
  // va_end -> store
  std::vector<IRInstr::K> kinds;
  for (auto &i : p.body)
    kinds.push_back(i.k);
  using K = IRInstr::K;
  CHECK(kinds == std::vector<K>{K::Alloc, K::VaStartPtr, K::Store, K::Load,
                                K::Load, K::Op, K::Store, K::Store, K::Dealloc,
                                K::Ret});
  CHECK(p.body[5].opname == "padd");
  CHECK(p.body[5].args[1].cval == 1); // roundup_W(sz(i8)) = 1 at d=8
}

TEST_CASE("call sugar expansion per the by-value template") {
  const char *src = R"(
declare i8 @printf(ptr, ...)
def i8 @go(i8 %a) {
I1: %t = load i8, 1, %a
I2: calls i8 @printf(ptr 7, i8 %t, i8 5)
I3: ret %t
}
)";
  IRProgram prog = parse_ir(src);
  IRProcedure &p = prog.procs[0];
  expand_call_sugar(p, prog, 1);
  using K = IRInstr::K;
  std::vector<IRInstr::K> kinds;
  for (auto &i : p.body)
    kinds.push_back(i.k);
  // load; alloc p1, store; alloc pv; store,padd,store,padd; call;
  // dealloc pv; dealloc p1; ret
  CHECK(kinds == std::vector<K>{K::Load, K::Alloc, K::Store, K::Alloc, K::Store,
                                K::Op, K::Store, K::Op, K::Call, K::Dealloc,
                                K::Dealloc, K::Ret});
  // deallocs reverse the alloc order: variadic block first, then p1
  CHECK(p.body[9].site == p.body[3].label);
  CHECK(p.body[10].site == p.body[1].label);
  // the call records by-value slot sizes: ptr (1 byte) + struct{i8,i8} (2)
  CHECK(p.body[8].arg_sizes == std::vector<uint64_t>({1, 2}));

  // zero variadic actuals: the variadic region is omitted entirely
  const char *src2 = R"(
declare void @fn(i8, ...)
def void @go2() {
I1: calls void @fn(i8 3)
I2: ret
}
)";
  IRProgram prog2 = parse_ir(src2);
  IRProcedure &p2 = prog2.procs[0];
  expand_call_sugar(p2, prog2, 1);
  int allocs = 0;
  for (auto &i : p2.body)
    if (i.k == K::Alloc)
      allocs++;
  CHECK(allocs == 1); // only the named argument
}

TEST_CASE("is_push thresholds") {
  uint64_t k32 = default_push_threshold(32);
  CHECK(k32 == 0x7fffffffull);
  CHECK(is_push(BitVec(32, 0x64), BitVec(32, 0x60), k32));
  CHECK(!is_push(BitVec(32, 0x60), BitVec(32, 0x64), k32));
  CHECK(!is_push(BitVec(32, 0x60), BitVec(32, 0x60), k32));
  // boundary: D = 2^31-1 is a push, D = 2^31 is not
  CHECK(is_push(BitVec(32, 0x7fffffff), BitVec(32, 0), k32));
  CHECK(!is_push(BitVec(32, 0x80000000), BitVec(32, 0), k32));
}
