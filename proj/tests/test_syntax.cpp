#include <gtest/gtest.h>

#include "fps/syntax.hpp"
#include "generators.hpp"

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

std::size_t count_updates(const Program& p) {
  if (p.kind == Program::Kind::Update) return 1;
  std::size_t n = 0;
  for (const auto& k : p.kids) n += count_updates(k);
  return n;
}

void expect_parse_error(const std::string& text, const std::string& fragment) {
  try {
    parse_program(text);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Parse, Extension) {
  SourceUnit u = parse_program("dialect ST vocab { a:0, f:1, g:1 } ext g(a) = f(a)");
  ASSERT_EQ(u.program.kind, Program::Kind::Update);
  EXPECT_EQ(u.program.update, Update::ext("g", {Term::app("a")}, Term::app("f", {Term::app("a")})));
  EXPECT_EQ(u.program.update.pos.line, 1);
  EXPECT_EQ(u.program.update.pos.col, 36);
}

TEST(Parse, DuplicationListing) {
  SourceUnit u = parse_program(kDuplication);
  ASSERT_EQ(u.program.kind, Program::Kind::Seq);
  const Program& loop = u.program.kids.back();
  ASSERT_EQ(loop.kind, Program::Kind::Do);
  EXPECT_EQ(loop.guard, Guard::truth());
  EXPECT_EQ(loop.variant, (std::vector<std::string>{"f0", "f1"}));
  ASSERT_EQ(loop.body().kind, Program::Kind::If);
  EXPECT_EQ(loop_depth(u.program), 1u);
  EXPECT_EQ(count_updates(loop.body().then_branch()), 7u);
  EXPECT_EQ(count_updates(loop.body().else_branch()), 7u);
  // set a = e adds the scratch token at rank 0.
  ASSERT_TRUE(u.vocabulary.contains("$0"));
  EXPECT_EQ(u.vocabulary.at("$0").rank, 0u);
}

TEST(Parse, DialectRules) {
  expect_parse_error("dialect ST vocab { a:0, f:1 } do [true][f] { con f(a) }", "not allowed in the ST dialect");
  expect_parse_error("dialect STV vocab { a:0, f:1 } do [true] { con f(a) }", "need a variant");
  expect_parse_error("dialect STV vocab { a:0 @1 } skip", "outside STR");
  expect_parse_error("dialect STR vocab { a:0 } skip", "needs a rank");
  expect_parse_error("dialect ST vocab { a:0 } con b", "undeclared");
  expect_parse_error("dialect ST vocab { a:0, f:1 } con f(a, a)", "arity 1");
  expect_parse_error("dialect ST vocab { a:0, f:1 } new f", "needs a token");
  expect_parse_error("dialect ST vocab { a:0, f:1 } ext f(omega) = a", "omega");
  expect_parse_error("dialect ST vocab { a:0 }\n  con a;\n  con a %", "3:9");
  expect_parse_error("dialect XY vocab { } skip", "unknown dialect");
}

TEST(Parse, GuardsAndComments) {
  SourceUnit u = parse_program(R"(dialect ST # comment
vocab { a:0, f:1 }
if [!def(f(a)) || a == omega && true] { con a } { }  # trailing
)");
  ASSERT_EQ(u.program.kind, Program::Kind::If);
  Guard g = Guard::disj(Guard::negate(Guard::def(Term::app("f", {Term::app("a")}))),
                        Guard::conj(Guard::eq(Term::app("a"), Term::omega()), Guard::truth()));
  EXPECT_EQ(u.program.guard, g);
  EXPECT_EQ(u.program.else_branch(), Program::skip());
}

TEST(Desugar, Assignment) {
  SourceUnit u = parse_program("dialect ST vocab { a:0, q:0, f:1 } set f(a) = q");
  Program expect = Program::seq({Program::of(Update::ext("$0", {}, Term::app("q"))),
                                 Program::of(Update::con("f", {Term::app("a")})),
                                 Program::of(Update::ext("f", {Term::app("a")}, Term::app("$0"))),
                                 Program::of(Update::con("$0", {}))});
  EXPECT_EQ(u.program, expect);
  EXPECT_EQ(desugar_assignment("f", {Term::app("a")}, Term::app("q"), "$0"), expect);
}

TEST(Desugar, NewAssignment) {
  SourceUnit u = parse_program("dialect ST vocab { a:0, f:1 } set f(a) = new");
  Program expect = Program::seq({Program::of(Update::inception("$0")),
                                 Program::of(Update::ext("f", {Term::app("a")}, Term::app("$0"))),
                                 Program::of(Update::con("$0", {}))});
  EXPECT_EQ(u.program, expect);
}

TEST(Desugar, ScratchNameAvoidsDeclaredIds) {
  SourceUnit u = parse_program("dialect ST vocab { $0:0, a:0 } set a = $0; set a = a");
  EXPECT_TRUE(u.vocabulary.contains("$1"));
  EXPECT_EQ(u.vocabulary.size(), 3u);
}

TEST(Print, EmptyUnit) {
  SourceUnit u = parse_program("dialect ST vocab { }");
  EXPECT_EQ(print_program(u), "dialect ST\nvocab { }\n");
  EXPECT_EQ(parse_program(print_program(u)), u);
}

TEST(Print, Layout) {
  SourceUnit u = parse_program("dialect STV vocab { a:0, f:1 } do [][f] { if [true] { con f(a) } { } }; new a");
  EXPECT_EQ(print_program(u),
            "dialect STV\nvocab {\n  a:0,\n  f:1\n}\n"
            "do [true] [f] {\n  if [true] {\n    con f(a)\n  } { }\n};\nnew a\n");
}

TEST(Print, GuardParenthesisation) {
  Term a = Term::app("a"), b = Term::app("b");
  EXPECT_EQ(print_guard(Guard::negate(Guard::eq(a, b))), "!(a == b)");
  EXPECT_EQ(print_guard(Guard::conj(Guard::disj(Guard::truth(), Guard::falsity()), Guard::def(a))),
            "(true || false) && def(a)");
  EXPECT_EQ(print_guard(Guard::conj(Guard::truth(), Guard::conj(Guard::falsity(), Guard::truth()))),
            "true && (false && true)");
  EXPECT_EQ(print_guard(Guard::disj(Guard::conj(Guard::truth(), Guard::falsity()), Guard::truth())),
            "true && false || true");
}

TEST(RoundTrip, DuplicationListing) {
  SourceUnit u = parse_program(kDuplication);
  EXPECT_EQ(parse_program(print_program(u)), u);
  EXPECT_EQ(print_program(parse_program(print_program(u))), print_program(u));
}

TEST(RoundTrip, RandomAsts) {
  gen::Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    SourceUnit u;
    u.dialect = static_cast<Dialect>(gen::below(rng, 3));
    Vocabulary v = gen::vocabulary(rng, 1 + gen::below(rng, 3), gen::below(rng, 3));
    for (const auto& f : v.ids()) {
      FunctionId g = f;
      if (u.dialect == Dialect::STR) g.rank = static_cast<unsigned>(gen::below(rng, 3));
      u.vocabulary.add(g);
    }
    u.program = gen::program(rng, u.vocabulary, u.dialect, 3, 2);
    std::string text = print_program(u);
    SourceUnit back = parse_program(text);
    ASSERT_EQ(back, u) << text;
    ASSERT_EQ(print_program(back), text);
  }
}

TEST(Dialects, InclusionByErasure) {
  SourceUnit u = parse_program(kDuplication);
  SourceUnit v = u;
  v.dialect = Dialect::STV;
  Vocabulary unranked;
  for (auto f : u.vocabulary.ids()) {
    f.rank.reset();
    unranked.add(f);
  }
  v.vocabulary = unranked;
  EXPECT_EQ(parse_program(print_program(v)), v);
}
