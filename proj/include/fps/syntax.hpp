#pragma once

// Program ASTs for the ST, STV and STR dialects, with the ASCII grammar
// parser and canonical printer.

#include <string>
#include <vector>

#include "fps/core.hpp"

namespace fps {

struct Pos {
  int line = 0;
  int col = 0;
  friend bool operator==(const Pos&, const Pos&) = default;
};

enum class Dialect { ST, STV, STR };

std::string to_string(Dialect d);

class ParseError : public Error {
 public:
  ParseError(Pos pos, const std::string& message)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message), pos_(pos) {}
  Pos pos() const { return pos_; }

 private:
  Pos pos_;
};

struct Update {
  enum class Kind { Extension, Contraction, Inception };
  Kind kind = Kind::Extension;
  std::string head;
  std::vector<Term> args;
  Term value;  // extensions only
  Pos pos;

  static Update ext(std::string head, std::vector<Term> args, Term value) {
    return Update{Kind::Extension, std::move(head), std::move(args), std::move(value), {}};
  }
  static Update con(std::string head, std::vector<Term> args) {
    return Update{Kind::Contraction, std::move(head), std::move(args), {}, {}};
  }
  static Update inception(std::string token) { return Update{Kind::Inception, std::move(token), {}, {}, {}}; }
};

bool operator==(const Update& a, const Update& b);

struct Guard {
  enum class Kind { True, False, Eq, Neq, Def, Not, And, Or };
  Kind kind = Kind::True;
  Term lhs;
  Term rhs;
  std::vector<Guard> kids;
  Pos pos;

  static Guard truth() { return Guard{}; }
  static Guard falsity() { return Guard{Kind::False, {}, {}, {}, {}}; }
  static Guard eq(Term a, Term b) { return Guard{Kind::Eq, std::move(a), std::move(b), {}, {}}; }
  static Guard neq(Term a, Term b) { return Guard{Kind::Neq, std::move(a), std::move(b), {}, {}}; }
  static Guard def(Term a) { return Guard{Kind::Def, std::move(a), {}, {}, {}}; }
  static Guard negate(Guard g) { return Guard{Kind::Not, {}, {}, {std::move(g)}, {}}; }
  static Guard conj(Guard a, Guard b) { return Guard{Kind::And, {}, {}, {std::move(a), std::move(b)}, {}}; }
  static Guard disj(Guard a, Guard b) { return Guard{Kind::Or, {}, {}, {std::move(a), std::move(b)}, {}}; }
};

bool operator==(const Guard& a, const Guard& b);

// Seq nodes are n-ary and flat: no Seq child is itself a Seq. The empty Seq
// is the identity program.
struct Program {
  enum class Kind { Update, Seq, If, Do };
  Kind kind = Kind::Seq;
  Update update;
  std::vector<Program> kids;  // Seq: children; If: then, else; Do: body
  Guard guard;
  std::vector<std::string> variant;  // Do only; empty in the ST dialect
  Pos pos;

  static Program skip() { return Program{}; }
  static Program of(Update u) { return Program{Kind::Update, std::move(u), {}, {}, {}, {}}; }
  static Program seq(std::vector<Program> parts);
  static Program branch(Guard g, Program then_p, Program else_p) {
    return Program{Kind::If, {}, {std::move(then_p), std::move(else_p)}, std::move(g), {}, {}};
  }
  static Program loop(Guard g, std::vector<std::string> variant, Program body) {
    return Program{Kind::Do, {}, {std::move(body)}, std::move(g), std::move(variant), {}};
  }

  const Program& then_branch() const { return kids[0]; }
  const Program& else_branch() const { return kids[1]; }
  const Program& body() const { return kids[0]; }
};

bool operator==(const Program& a, const Program& b);

struct SourceUnit {
  Dialect dialect = Dialect::STR;
  Vocabulary vocabulary;
  Program program;
};

bool operator==(const SourceUnit& a, const SourceUnit& b);

SourceUnit parse_program(const std::string& text);
std::string print_program(const SourceUnit& unit);
std::string print_term(const Term& t);
std::string print_guard(const Guard& g);

// Assignment `head(args) := value` as four revisions through the scratch
// token `scratch`.
Program desugar_assignment(const std::string& head, std::vector<Term> args, Term value, const std::string& scratch);
// `head(args) := new` as inception of the scratch token, extension, release.
Program desugar_new_assignment(const std::string& head, std::vector<Term> args, const std::string& scratch);

// Smallest `$k` not declared in v.
std::string fresh_scratch_name(const Vocabulary& v);

// Loop nesting depth (0 for loop-free programs).
std::size_t loop_depth(const Program& p);

}  // namespace fps
