#include <gtest/gtest.h>

#include "fps/bounds.hpp"
#include "fps/checker.hpp"
#include "generators.hpp"

using namespace fps;

namespace {

using Terms = std::vector<std::pair<std::uint64_t, std::vector<unsigned>>>;

Terms random_terms(gen::Rng& rng, unsigned vars, unsigned max_degree) {
  Terms t;
  std::size_t n = gen::below(rng, 5);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<unsigned> e(vars, 0);
    unsigned left = static_cast<unsigned>(gen::below(rng, max_degree + 1));
    while (left--) e[gen::below(rng, vars)]++;
    t.push_back({gen::below(rng, 10), e});
  }
  return t;
}

PositivePoly build(const Terms& t) {
  PositivePoly p;
  for (const auto& [c, e] : t) {
    PositivePoly m = PositivePoly::constant(c);
    for (unsigned j = 0; j < e.size(); ++j) m = m * pow(PositivePoly::var(j), e[j]);
    p += m;
  }
  return p;
}

// Naive evaluation straight from the term list.
BigInt direct(const Terms& t, const std::vector<std::uint64_t>& x) {
  BigInt sum = 0;
  for (const auto& [c, e] : t) {
    BigInt m = c;
    for (std::size_t j = 0; j < e.size(); ++j)
      for (unsigned k = 0; k < e[j]; ++k) m *= x[j];
    sum += m;
  }
  return sum;
}

SourceUnit random_str_unit(gen::Rng& rng) {
  SourceUnit u;
  u.dialect = Dialect::STR;
  std::size_t tokens = 1 + gen::below(rng, 3);
  Vocabulary v = gen::vocabulary(rng, tokens, 1 + gen::below(rng, 6 - tokens), 2);
  unsigned ranks = 1 + static_cast<unsigned>(gen::below(rng, 3));
  for (auto f : v.ids()) {
    f.rank = static_cast<unsigned>(gen::below(rng, ranks));
    u.vocabulary.add(f);
  }
  u.program = gen::program(rng, u.vocabulary, u.dialect, 3, 3);
  return u;
}

}  // namespace

TEST(Poly, Basics) {
  PositivePoly p = PositivePoly::var(0) + PositivePoly::constant(2);
  EXPECT_EQ(p.eval(std::vector<std::uint64_t>{3}), 5);
  EXPECT_EQ(PositivePoly{}.str(), "0");
  EXPECT_EQ(PositivePoly::constant(1).str(), "1");
  PositivePoly q = PositivePoly::constant(2) * pow(PositivePoly::var(0), 2) * PositivePoly::var(1) +
                   PositivePoly::var(0) + PositivePoly::constant(3) + PositivePoly::var(1) * PositivePoly::var(2);
  EXPECT_EQ(q.str(), "2*n0^2*n1 + n1*n2 + n0 + 3");
  EXPECT_EQ(q.degree(), 3u);
  EXPECT_EQ(q.degree_in(0), 2u);
  EXPECT_EQ(q.arity(), 3u);
  EXPECT_THROW(PositivePoly::constant(-1), std::invalid_argument);
}

TEST(Poly, SubstitutionDistributes) {
  PositivePoly n = PositivePoly::var(0), z = PositivePoly::var(1);
  PositivePoly p = n * (PositivePoly::constant(1) + PositivePoly::var(2));
  PositivePoly s = p.subst({{0, n + z}});
  EXPECT_EQ(s.str(), "n0*n2 + n1*n2 + n0 + n1");
  for (const auto& [m, c] : s.terms()) EXPECT_GT(c, 0);
}

TEST(Poly, RingLawsAgainstDirectEvaluation) {
  gen::Rng rng(51);
  for (int i = 0; i < 100; ++i) {
    Terms a = random_terms(rng, 3, 3), b = random_terms(rng, 3, 3);
    PositivePoly p = build(a), q = build(b);
    std::vector<std::uint64_t> x = {gen::below(rng, 20), gen::below(rng, 20), gen::below(rng, 20)};
    EXPECT_EQ(p.eval(x), direct(a, x));
    EXPECT_EQ((p * q).eval(x), direct(a, x) * direct(b, x));
    EXPECT_EQ((p + q).eval(x), direct(a, x) + direct(b, x));
    // Substituting n0 := q then evaluating equals evaluating p at q(x).
    std::vector<std::uint64_t> y = x;
    y[0] = static_cast<std::uint64_t>(direct(b, x));
    EXPECT_EQ(p.subst({{0, q}}).eval(x), direct(a, y));
  }
}

TEST(Poly, MonotoneEvaluation) {
  gen::Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    PositivePoly p = build(random_terms(rng, 3, 3));
    std::vector<std::uint64_t> x = {gen::below(rng, 10), gen::below(rng, 10), gen::below(rng, 10)};
    std::vector<std::uint64_t> y = x;
    y[gen::below(rng, 3)] += 1 + gen::below(rng, 5);
    EXPECT_LE(p.eval(x), p.eval(y));
  }
}

TEST(Bounds, SingleUpdate) {
  SourceUnit u = parse_program("dialect STR vocab { a:0 @0 } new a");
  EXPECT_EQ(time_bound(u).str(), "1");
  EXPECT_EQ(space_bound(u, 0).str(), "1");
  EXPECT_THROW(time_bound(parse_program("dialect STV vocab { a:0 } new a")), Error);
  EXPECT_THROW(space_bound(u, 1), Error);
}

TEST(Bounds, ContractionLoop) {
  SourceUnit u = parse_program("dialect STR vocab { a:0 @0, f:1 @0 } do [true][f] { con f(a) }");
  PositivePoly m = time_bound(u);
  EXPECT_EQ(m.str(), "2*n0 + 3");
  EXPECT_EQ(space_bound(u, 0).str(), "0");
  // One contraction per pass only shrinks f while a stays put, so run on
  // structures where f(a) is defined.
  for (std::uint64_t k = 0; k <= 10; ++k) {
    Structure in(u.vocabulary);
    in.set_token("a", Atom{0});
    for (std::uint64_t i = 0; i < k; ++i) in.insert("f", {Atom{i}}, Atom{i});
    RunResult r = run(u, in);
    EXPECT_LE(BigInt(r.metrics.steps), m.eval(std::vector<std::uint64_t>{k + 1}));
    EXPECT_TRUE(certify_run(u, in, r.metrics).pass);
  }
}

TEST(Bounds, LoopFreeExtensionsGiveConstants) {
  SourceUnit u = parse_program(
      "dialect STR vocab { a:0 @0, b:0 @1, f:1 @1 } new a; new b; ext f(a) = b; ext f(b) = a; con a");
  EXPECT_EQ(space_bound(u, 0).str(), "1");
  EXPECT_EQ(space_bound(u, 1).str(), "3");
  EXPECT_EQ(time_bound(u).str(), "5");
}

TEST(Bounds, TopRankUnderTopLoop) {
  SourceUnit u = parse_program(
      "dialect STR vocab { a:0 @0, f:1 @1, g:1 @0 } do [][f] { ext g(a) = a; con f(a) }");
  Certificate c = certify(u);
  EXPECT_EQ(c.space[1].str(), "0");
  EXPECT_EQ(c.space[0].str(), "n1 + 1");
  EXPECT_EQ(c.time.str(), "3*n1 + 4");
}

TEST(Bounds, NestingFollowsTheLoopRule) {
  SourceUnit inner = parse_program("dialect STR vocab { a:0 @0, f:1 @1, g:1 @0 } do [][g] { con g(a); new a }");
  SourceUnit outer = parse_program(
      "dialect STR vocab { a:0 @0, f:1 @1, g:1 @0 } do [][f] { do [][g] { con g(a); new a }; con f(a) }");
  Certificate ci = certify(inner);
  Certificate co = certify(outer);
  // Body of the outer loop: inner loop then one contraction.
  PositivePoly body_time = ci.time + PositivePoly::constant(1);
  PositivePoly passes = PositivePoly::var(1) + PositivePoly::constant(1);
  PositivePoly b0 = PositivePoly::var(0) + passes * ci.space[0];
  PositivePoly expect = PositivePoly::constant(1) +
                        passes * (PositivePoly::constant(1) + body_time.subst({{0, b0}}));
  EXPECT_EQ(co.time, expect);
  EXPECT_EQ(co.time.degree(), 2u);
  EXPECT_EQ(co.time.degree_in(1), 2u);
  EXPECT_EQ(ci.time.degree_in(0), 1u);
}

TEST(Certify, AdversarialMetricsFail) {
  SourceUnit u = parse_program("dialect STR vocab { a:0 @0 } new a");
  Structure in(u.vocabulary);
  Metrics m;
  m.steps = 2;
  m.high_water[0] = 1;
  Verdict v = certify_run(u, in, m);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.time_slack, -1);
  m.steps = 1;
  m.high_water[0] = 2;
  v = certify_run(u, in, m);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.ranks[0].slack, -1);
  EXPECT_EQ(v.str(), "FAIL steps=1 limit=1 slack=0 rank0=2/1(slack -1)");
}

TEST(Certify, EmptyProgram) {
  SourceUnit u = parse_program("dialect STR vocab { }");
  RunResult r = run(u, Structure{});
  Verdict v = certify_run(u, Structure{}, r.metrics);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.steps, 0);
}

TEST(Certify, FormatIsStable) {
  SourceUnit u = parse_program("dialect STR vocab { a:0 @0, f:1 @1 } do [][f] { con f(a) }");
  EXPECT_EQ(format_certificate(certify(u)),
            std::string("# ") + kCostModel + "\nM = 2*n1 + 3\nZ0 = 0\nZ1 = 0\n");
}

// Central soundness property on random ranked programs.
TEST(Soundness, RandomUnitsRandomInputs) {
  gen::Rng rng(53);
  std::size_t loops = 0;
  for (int i = 0; i < 600; ++i) {
    SourceUnit u = random_str_unit(rng);
    ASSERT_TRUE(check(u).accepted());
    Certificate cert = certify(u);
    for (const auto& m : {cert.time}) EXPECT_TRUE(!m.is_zero() || u.program == Program::skip());
    for (int k = 0; k < 8; ++k) {
      Structure in = gen::structure(rng, u.vocabulary, 1 + gen::below(rng, 8), 64);
      RunResult r = run(u, in);
      loops += r.metrics.loops.size();
      Verdict v = certify_run(cert, u, in, r.metrics);
      ASSERT_TRUE(v.pass) << v.str() << "\n" << print_program(u);
    }
  }
  EXPECT_GT(loops, 1000u);
}
