#include <gtest/gtest.h>

#include "fps/checker.hpp"
#include "fps/interpreter.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fps;

namespace {

const char* kDuplication = R"(dialect STR
vocab { e:0 @0, a:0 @0, b:0 @0, f0:1 @1, f1:1 @1, g0:1 @0, g1:1 @0, g0':1 @0, g1':1 @0 }
set a = e;
do [ ] [f0, f1] {
  if [def(f0(a))] {
    ext g0(a) = f0(a); ext g0'(a) = f0(a); ext b = f0(a); con f0(a); con a; ext a = b; con b
  } {
    ext g1(a) = f1(a); ext g1'(a) = f1(a); ext b = f1(a); con f1(a); con a; ext a = b; con b
  }
}
)";

Structure chain_structure(const std::vector<std::uint64_t>& ids) {
  std::vector<Atom> atoms;
  for (auto i : ids) atoms.push_back(Atom{i});
  return encode_chain(atoms, {"c", "f"});
}

SourceUnit random_unit(gen::Rng& rng, Dialect d) {
  SourceUnit u;
  u.dialect = d;
  Vocabulary v = gen::vocabulary(rng, 2, 3, 2);
  for (auto f : v.ids()) {
    if (d == Dialect::STR) f.rank = static_cast<unsigned>(gen::below(rng, 3));
    u.vocabulary.add(f);
  }
  u.program = gen::program(rng, u.vocabulary, d, 3, 3);
  return u;
}

// Follows `next` from `head`; returns the bits read by which pointer
// (f0/f1 style pair) leads on.
std::string read_bits(const Structure& s, const std::string& head, const std::string& p0, const std::string& p1) {
  std::string bits;
  Value cur = s.token(head);
  while (cur) {
    if (Value n = s.apply(p0, Tuple{*cur})) {
      bits += '0';
      cur = n;
    } else if (Value m = s.apply(p1, Tuple{*cur})) {
      bits += '1';
      cur = m;
    } else {
      break;
    }
  }
  return bits;
}

}  // namespace

TEST(ApplyUpdate, ExtensionIsInactiveWhenDefined) {
  Structure s = chain_structure({1, 2, 3});
  Allocator alloc(10);
  auto [t, act] = apply_update(s, Update::ext("f", {Term::app("c")}, Term::app("c")), alloc);
  EXPECT_FALSE(act.active);
  EXPECT_EQ(t, s);
  auto [u, act2] = apply_update(s, Update::ext("f", {Term::omega()}, Term::app("c")), alloc);
  EXPECT_FALSE(act2.active);
}

TEST(ApplyUpdate, ContractionTouchesOnlyItsId) {
  Structure s = chain_structure({1, 2, 3});
  Vocabulary w = s.vocabulary();
  w.add({"g", 1, {}});
  s = expand(s, w);
  s.insert("g", {Atom{1}}, Atom{2});
  Allocator alloc(10);
  auto [t, act] = apply_update(s, Update::con("f", {Term::app("c")}), alloc);
  EXPECT_TRUE(act.active);
  EXPECT_FALSE(act.added);
  EXPECT_EQ(t.component("f").size(), 1u);
  EXPECT_EQ(t.component("g"), s.component("g"));
  auto [u, act2] = apply_update(t, Update::con("f", {Term::app("c")}), alloc);
  EXPECT_FALSE(act2.active);
}

TEST(ApplyUpdate, InceptionTwice) {
  Structure s(Vocabulary({{"c", 0, {}}, {"d", 0, {}}}));
  s.set_token("d", Atom{5});
  Allocator alloc(6);
  auto [t, a1] = apply_update(s, Update::inception("c"), alloc);
  EXPECT_TRUE(a1.active && a1.added);
  ASSERT_TRUE(t.token("c"));
  EXPECT_FALSE(s.scope().count(*t.token("c")));
  auto [u, a2] = apply_update(t, Update::inception("c"), alloc);
  EXPECT_FALSE(a2.active);
  EXPECT_EQ(u, t);
}

TEST(EvalGuard, Conventions) {
  Structure s = chain_structure({1, 2});
  EXPECT_TRUE(eval_guard(s, Guard::eq(Term::omega(), Term::omega())));
  EXPECT_FALSE(eval_guard(s, Guard::def(Term::app("f", {Term::app("f", {Term::app("c")})}))));
  EXPECT_TRUE(eval_guard(s, Guard::def(Term::app("f", {Term::app("c")}))));
  EXPECT_TRUE(eval_guard(s, Guard::neq(Term::app("c"), Term::app("f", {Term::app("c")}))));
  EXPECT_TRUE(eval_guard(s, Guard::disj(Guard::falsity(), Guard::negate(Guard::falsity()))));
}

TEST(Run, NonShrinkingLoopRunsOnce) {
  SourceUnit u = parse_program("dialect STV vocab { c:0, f:1 } do [true][f] { ext f(c) = c }");
  for (bool filled : {false, true}) {
    Structure in(u.vocabulary);
    in.set_token("c", Atom{0});
    if (filled) in.insert("f", {Atom{0}}, Atom{0});
    RunResult r = run(u, in);
    ASSERT_EQ(r.metrics.loops.size(), 1u);
    EXPECT_EQ(r.metrics.loops[0].passes, 1u);
    EXPECT_EQ(r.metrics.loops[0].reason, ExitReason::VariantNotShrunk);
    EXPECT_EQ(r.metrics.steps, 3u);
  }
}

TEST(Run, GuardFalseOnEntry) {
  SourceUnit u = parse_program("dialect STV vocab { c:0, f:1 } do [def(c)][f] { con f(c) }");
  RunResult r = run(u, Structure(u.vocabulary));
  ASSERT_EQ(r.metrics.loops.size(), 1u);
  EXPECT_EQ(r.metrics.loops[0].passes, 0u);
  EXPECT_EQ(r.metrics.loops[0].reason, ExitReason::GuardFalse);
  EXPECT_EQ(r.metrics.steps, 1u);
}

TEST(Run, DuplicationCopiesStrings) {
  SourceUnit u = parse_program(kDuplication);
  ASSERT_TRUE(check(u).accepted());
  for (std::string bits : {"", "0", "110", "0101110", "1111"}) {
    Structure in = encode_string(bits);
    RunResult r = run(u, in);
    // Strings are built outward from e, so walking from e reads them reversed.
    std::string walked(bits.rbegin(), bits.rend());
    EXPECT_EQ(read_bits(r.output, "e", "g0", "g1"), walked);
    EXPECT_EQ(read_bits(r.output, "e", "g0'", "g1'"), walked);
    EXPECT_EQ(r.output.size({"f0", "f1"}), 0u);
    const LoopRun& l = r.metrics.loops.at(0);
    EXPECT_EQ(l.entry_variant_size, bits.size());
    EXPECT_EQ(l.shrinking_passes, bits.size());
    EXPECT_EQ(l.passes, bits.size() + 1);
    EXPECT_EQ(l.reason, ExitReason::VariantDepleted);
  }
}

TEST(Run, RankGrowthStopsTheLoop) {
  SourceUnit u = parse_program(
      "dialect STR vocab { c:0 @0, d:0 @1, f:1 @1, g:1 @1 } do [][f] { con f(c); new d; ext g(d) = d; con d }");
  Structure in(u.vocabulary);
  in.set_token("c", Atom{0});
  in.insert("f", {Atom{0}}, Atom{0});
  in.insert("f", {Atom{1}}, Atom{1});
  RunResult r = run(u, in, {.trace = TraceLevel::Loops});
  ASSERT_EQ(r.metrics.loops.size(), 1u);
  EXPECT_EQ(r.metrics.loops[0].reason, ExitReason::VariantNotShrunk);
  // Second pass: f(c) already gone, variant unchanged.
  SourceUnit v = parse_program(
      "dialect STR vocab { c:0 @0, d:0 @1, f:1 @1, g:1 @1 } do [][f] { con f(c); new d; ext g(d) = d; ext g(c) = c; con d }");
  RunResult s = run(v, in, {.trace = TraceLevel::Loops});
  EXPECT_EQ(s.metrics.loops[0].reason, ExitReason::RankGrew);
  EXPECT_EQ(s.metrics.loops[0].grew_rank, 1u);
  EXPECT_EQ(s.metrics.loops[0].passes, 1u);
  EXPECT_NE(format_trace_event(s.trace.back()).find("reason=rank-grew(1)"), std::string::npos);
}

TEST(Run, FuelStopsDivergentWhileLoop) {
  SourceUnit u = parse_program("dialect ST vocab { c:0 } do [true] { new c; con c }");
  EXPECT_THROW(run(u, Structure(u.vocabulary), {.fuel = 1000}), FuelExhausted);
  EXPECT_THROW(run(u, Structure(u.vocabulary), {.fuel = 0}), Error);
}

TEST(Run, TraceFormat) {
  SourceUnit u = parse_program("dialect STV vocab { c:0, f:1 }\ndo [][f] { con f(c) }");
  Structure in(u.vocabulary);
  in.set_token("c", Atom{0});
  in.insert("f", {Atom{0}}, Atom{0});
  RunResult r = run(u, in, {.trace = TraceLevel::Full});
  std::vector<std::string> lines;
  for (const auto& e : r.trace) lines.push_back(format_trace_event(e));
  std::vector<std::string> expect = {
      "enter 2:1 size=2 loop=0 variant=1",
      "guard 2:1 size=2 true",
      "update 2:12 size=1 f",
      "pass 2:1 size=1 loop=0 pass=1 variant=0 f[+0,-1,1->0]",
      "guard 2:1 size=1 true",
      "skip 2:12 size=1 f",
      "pass 2:1 size=1 loop=0 pass=2 variant=0",
      "guard 2:1 size=1 true",
      "exit 2:1 size=1 loop=0 passes=2 reason=variant-depleted",
  };
  EXPECT_EQ(lines, expect);
  EXPECT_EQ(format_metrics(r.metrics), "steps=5 max_size=2 high_water=[] loops=[0:2:variant-depleted]");
}

TEST(Run, SelfAssignmentIsIdentity) {
  SourceUnit u = parse_program("dialect ST vocab { t0:0, t1:0, p0:1 } set t0 = t0; set p0(t1) = p0(t1)");
  gen::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    Structure in = gen::structure(rng, Vocabulary({{"t0", 0, {}}, {"t1", 0, {}}, {"p0", 1, {}}}), 4, 6);
    Structure out = run_transducer(u, in, in.vocabulary());
    EXPECT_EQ(out, in);
  }
}

TEST(Run, EmptyProgramIsIdentity) {
  SourceUnit u = parse_program("dialect STR vocab { }");
  Structure in = encode_numeral(4);
  EXPECT_EQ(run_transducer(u, in, in.vocabulary()), in);
  EXPECT_EQ(run(u, in).metrics.steps, 0u);
}

TEST(Run, InputArityClashRejected) {
  SourceUnit u = parse_program("dialect ST vocab { s:0 } skip");
  EXPECT_THROW(run(u, encode_numeral(1)), VocabularyError);
}

// Per pass: extensions minus contractions equals the size delta, for every id.
TEST(Properties, LedgerAgreesWithSizes) {
  gen::Rng rng(41);
  std::size_t passes = 0;
  for (int i = 0; i < 300; ++i) {
    SourceUnit u = random_unit(rng, gen::coin(rng) ? Dialect::STV : Dialect::STR);
    Structure in = gen::structure(rng, u.vocabulary, 5, 12);
    RunResult r = run(u, in, {.trace = TraceLevel::Loops});
    for (const auto& e : r.trace) {
      if (e.kind != TraceEvent::Kind::Pass) continue;
      ++passes;
      for (const auto& l : e.ledger)
        EXPECT_EQ(static_cast<long>(l.extensions) - static_cast<long>(l.contractions),
                  static_cast<long>(l.size_after) - static_cast<long>(l.size_before));
    }
  }
  EXPECT_GT(passes, 100u);
}

// Re-entered STR passes never grow a monitored rank and always shrink T.
TEST(Properties, RankMonitoringSoundness) {
  gen::Rng rng(42);
  std::size_t reentries = 0;
  for (int i = 0; i < 2000; ++i) {
    SourceUnit u = random_unit(rng, Dialect::STR);
    CheckReport rep = check(u);
    Structure in = gen::structure(rng, u.vocabulary, 4, 20);
    RunResult r = run(u, in, {.trace = TraceLevel::Loops});
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const auto& e = r.trace[k];
      if (e.kind != TraceEvent::Kind::Pass) continue;
      std::size_t n = k + 1;
      while (r.trace[n].loop != e.loop ||
             (r.trace[n].kind != TraceEvent::Kind::Pass && r.trace[n].kind != TraceEvent::Kind::Exit))
        ++n;
      if (r.trace[n].kind != TraceEvent::Kind::Pass) continue;
      ++reentries;
      const LoopInfo& info = rep.loops.at(static_cast<std::size_t>(e.loop));
      std::map<unsigned, long> delta;
      long t = 0;
      for (const auto& l : e.ledger) {
        long d = static_cast<long>(l.size_after) - static_cast<long>(l.size_before);
        delta[*u.vocabulary.at(l.id).rank] += d;
        if (std::find(info.variant.begin(), info.variant.end(), l.id) != info.variant.end()) t += d;
      }
      EXPECT_LE(t, -1);
      for (unsigned j : info.monitored) EXPECT_LE(delta[j], 0);
    }
  }
  EXPECT_GT(reentries, 50u);
}

TEST(Properties, PassCap) {
  gen::Rng rng(43);
  for (int i = 0; i < 400; ++i) {
    SourceUnit u = random_unit(rng, Dialect::STR);
    Structure in = gen::structure(rng, u.vocabulary, 5, 16);
    RunResult r = run(u, in);
    for (const auto& l : r.metrics.loops) {
      EXPECT_LE(l.shrinking_passes, l.entry_variant_size);
      EXPECT_LE(l.entry_variant_size, l.entry_rank_size);
      EXPECT_LE(l.passes, l.entry_rank_size + 1);
      EXPECT_LE(l.passes, l.entry_variant_size + l.variant_extensions + 1);
    }
  }
}

TEST(Properties, DeterminismAcrossSeeds) {
  gen::Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    SourceUnit u = random_unit(rng, gen::coin(rng) ? Dialect::STV : Dialect::STR);
    Structure in = gen::structure(rng, u.vocabulary, 5, 12);
    RunResult base = run(u, in, {.seed = 0});
    for (std::uint64_t seed : {1u, 2u, 77u}) {
      RunResult r = run(u, in, {.seed = seed});
      EXPECT_EQ(r.metrics, base.metrics);
      EXPECT_TRUE(isomorphic(r.output, base.output));
    }
  }
}
