#include "fps/syntax.hpp"

#include <cctype>
#include <sstream>

namespace fps {

std::string to_string(Dialect d) {
  switch (d) {
    case Dialect::ST: return "ST";
    case Dialect::STV: return "STV";
    case Dialect::STR: return "STR";
  }
  return "?";
}

bool operator==(const Update& a, const Update& b) {
  return a.kind == b.kind && a.head == b.head && a.args == b.args && a.value == b.value;
}

bool operator==(const Guard& a, const Guard& b) {
  return a.kind == b.kind && a.lhs == b.lhs && a.rhs == b.rhs && a.kids == b.kids;
}

bool operator==(const Program& a, const Program& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Program::Kind::Update: return a.update == b.update;
    case Program::Kind::Seq: return a.kids == b.kids;
    case Program::Kind::If: return a.guard == b.guard && a.kids == b.kids;
    case Program::Kind::Do: return a.guard == b.guard && a.variant == b.variant && a.kids == b.kids;
  }
  return false;
}

bool operator==(const SourceUnit& a, const SourceUnit& b) {
  return a.dialect == b.dialect && a.vocabulary == b.vocabulary && a.program == b.program;
}

Program Program::seq(std::vector<Program> parts) {
  std::vector<Program> flat;
  for (auto& p : parts) {
    if (p.kind == Kind::Seq) {
      for (auto& k : p.kids) flat.push_back(std::move(k));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  Program out;
  out.kids = std::move(flat);
  return out;
}

std::string fresh_scratch_name(const Vocabulary& v) {
  for (std::size_t k = 0;; ++k) {
    std::string name = "$" + std::to_string(k);
    if (!v.contains(name)) return name;
  }
}

Program desugar_assignment(const std::string& head, std::vector<Term> args, Term value, const std::string& scratch) {
  Term b = Term::app(scratch);
  return Program::seq({Program::of(Update::ext(scratch, {}, std::move(value))),
                       Program::of(Update::con(head, args)),
                       Program::of(Update::ext(head, args, b)),
                       Program::of(Update::con(scratch, {}))});
}

Program desugar_new_assignment(const std::string& head, std::vector<Term> args, const std::string& scratch) {
  return Program::seq({Program::of(Update::inception(scratch)),
                       Program::of(Update::ext(head, std::move(args), Term::app(scratch))),
                       Program::of(Update::con(scratch, {}))});
}

std::size_t loop_depth(const Program& p) {
  std::size_t d = 0;
  for (const auto& k : p.kids) d = std::max(d, loop_depth(k));
  return p.kind == Program::Kind::Do ? d + 1 : d;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Name, Nat, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Pos pos;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Pos pos{line, col};
    if (name_start(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      out.push_back({Tok::Name, text.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Nat, text.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    std::string two = text.substr(i, 2);
    if (two == "==" || two == "!=" || two == "&&" || two == "||") {
      out.push_back({Tok::Punct, two, pos});
      advance(2);
      continue;
    }
    if (std::string("{}[](),;:@=!").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), pos});
      advance(1);
      continue;
    }
    throw ParseError(pos, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

const std::set<std::string> kKeywords = {"dialect", "vocab", "ext", "con", "new", "set", "if",
                                         "do",      "omega", "true", "false", "def", "skip"};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  SourceUnit unit() {
    SourceUnit u;
    expect_word("dialect");
    Token d = next();
    if (d.text == "ST")
      u.dialect = Dialect::ST;
    else if (d.text == "STV")
      u.dialect = Dialect::STV;
    else if (d.text == "STR")
      u.dialect = Dialect::STR;
    else
      throw ParseError(d.pos, "unknown dialect '" + d.text + "'");
    unit_ = &u;
    vocab(u);
    u.program = prog();
    if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
    return u;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at(const std::string& s) const { return peek().kind != Tok::End && peek().text == s; }
  bool accept(const std::string& s) {
    if (!at(s)) return false;
    ++pos_;
    return true;
  }
  Token expect(const std::string& s) {
    if (!at(s)) throw ParseError(peek().pos, "expected '" + s + "' but found '" + peek().text + "'");
    return next();
  }
  void expect_word(const std::string& s) { expect(s); }

  std::string name() {
    Token t = next();
    if (t.kind != Tok::Name || kKeywords.count(t.text))
      throw ParseError(t.pos, "expected identifier but found '" + t.text + "'");
    return t.text;
  }

  unsigned nat() {
    Token t = next();
    if (t.kind != Tok::Nat) throw ParseError(t.pos, "expected number but found '" + t.text + "'");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  void vocab(SourceUnit& u) {
    expect("vocab");
    expect("{");
    if (accept("}")) return;
    do {
      Pos p = peek().pos;
      FunctionId f;
      f.name = name();
      expect(":");
      f.arity = nat();
      if (accept("@")) {
        if (u.dialect != Dialect::STR) throw ParseError(p, "rank on identifier '" + f.name + "' outside STR");
        f.rank = nat();
      } else if (u.dialect == Dialect::STR) {
        throw ParseError(p, "identifier '" + f.name + "' needs a rank in STR");
      }
      if (u.vocabulary.contains(f.name)) throw ParseError(p, "duplicate identifier '" + f.name + "'");
      u.vocabulary.add(std::move(f));
    } while (accept(","));
    expect("}");
  }

  bool stmt_start() const {
    return at("ext") || at("con") || at("new") || at("set") || at("if") || at("do") || at("skip");
  }

  Program prog() {
    std::vector<Program> parts;
    if (!stmt_start()) return Program::skip();
    parts.push_back(stmt());
    while (accept(";")) parts.push_back(stmt());
    return Program::seq(std::move(parts));
  }

  Program block() {
    expect("{");
    Program p = prog();
    expect("}");
    return p;
  }

  const FunctionId& lookup(const std::string& n, Pos p) {
    auto i = unit_->vocabulary.index_of(n);
    if (!i) throw ParseError(p, "undeclared identifier '" + n + "'");
    return unit_->vocabulary[*i];
  }

  void check_arity(const std::string& n, std::size_t count, Pos p) {
    const FunctionId& f = lookup(n, p);
    if (f.arity != count)
      throw ParseError(p, "'" + n + "' has arity " + std::to_string(f.arity) + " but is applied to " +
                              std::to_string(count) + " argument(s)");
  }

  Term term() {
    Pos p = peek().pos;
    if (accept("omega")) return Term::omega();
    auto [head, args] = app();
    check_arity(head, args.size(), p);
    return Term::app(head, std::move(args));
  }

  std::pair<std::string, std::vector<Term>> app() {
    std::string head = name();
    std::vector<Term> args;
    if (accept("(")) {
      args.push_back(term());
      while (accept(",")) args.push_back(term());
      expect(")");
    }
    return {head, std::move(args)};
  }

  std::pair<std::string, std::vector<Term>> target(Pos p) {
    auto [head, args] = app();
    check_arity(head, args.size(), p);
    for (const auto& a : args)
      if (!a.is_standard()) throw ParseError(p, "update arguments must not mention omega");
    return {head, std::move(args)};
  }

  std::string scratch() {
    if (scratch_.empty()) {
      scratch_ = fresh_scratch_name(unit_->vocabulary);
      FunctionId f{scratch_, 0, std::nullopt};
      if (unit_->dialect == Dialect::STR) f.rank = 0;
      unit_->vocabulary.add(f);
    }
    return scratch_;
  }

  Program stmt() {
    Pos p = peek().pos;
    if (accept("skip")) return Program::skip();
    if (accept("ext")) {
      auto [head, args] = target(p);
      expect("=");
      Term v = term();
      if (!v.is_standard()) throw ParseError(p, "extension value must not mention omega");
      Program out = Program::of(Update::ext(head, std::move(args), std::move(v)));
      out.pos = out.update.pos = p;
      return out;
    }
    if (accept("con")) {
      auto [head, args] = target(p);
      Program out = Program::of(Update::con(head, std::move(args)));
      out.pos = out.update.pos = p;
      return out;
    }
    if (accept("new")) {
      std::string n = name();
      if (lookup(n, p).arity != 0) throw ParseError(p, "inception needs a token, '" + n + "' is a pointer");
      Program out = Program::of(Update::inception(n));
      out.pos = out.update.pos = p;
      return out;
    }
    if (accept("set")) {
      auto [head, args] = target(p);
      expect("=");
      if (accept("new")) return desugar_new_assignment(head, std::move(args), scratch());
      Term v = term();
      if (!v.is_standard()) throw ParseError(p, "assigned value must not mention omega");
      return desugar_assignment(head, std::move(args), std::move(v), scratch());
    }
    if (accept("if")) {
      expect("[");
      Guard g = guard();
      expect("]");
      Program t = block();
      Program e = block();
      Program out = Program::branch(std::move(g), std::move(t), std::move(e));
      out.pos = p;
      return out;
    }
    if (accept("do")) {
      expect("[");
      Guard g = at("]") ? Guard::truth() : guard();
      expect("]");
      std::vector<std::string> variant;
      if (accept("[")) {
        Pos vp = peek().pos;
        if (unit_->dialect == Dialect::ST) throw ParseError(vp, "variants are not allowed in the ST dialect");
        if (at("]")) throw ParseError(vp, "a variant must name at least one pointer");
        do {
          Pos np = peek().pos;
          std::string n = name();
          lookup(n, np);
          variant.push_back(n);
        } while (accept(","));
        expect("]");
      } else if (unit_->dialect != Dialect::ST) {
        throw ParseError(peek().pos, "loops need a variant in the " + to_string(unit_->dialect) + " dialect");
      }
      Program body = block();
      Program out = Program::loop(std::move(g), std::move(variant), std::move(body));
      out.pos = p;
      return out;
    }
    throw ParseError(p, "expected a statement but found '" + peek().text + "'");
  }

  // guard := disj ; disj := conj ("||" conj)* ; conj := unary ("&&" unary)*
  Guard guard() {
    Guard g = conj();
    while (at("||")) {
      Pos p = next().pos;
      g = Guard::disj(std::move(g), conj());
      g.pos = p;
    }
    return g;
  }

  Guard conj() {
    Guard g = unary();
    while (at("&&")) {
      Pos p = next().pos;
      g = Guard::conj(std::move(g), unary());
      g.pos = p;
    }
    return g;
  }

  Guard unary() {
    Pos p = peek().pos;
    Guard g;
    if (accept("!")) {
      g = Guard::negate(unary());
    } else if (accept("(")) {
      g = guard();
      expect(")");
      return g;
    } else if (accept("true")) {
      g = Guard::truth();
    } else if (accept("false")) {
      g = Guard::falsity();
    } else if (accept("def")) {
      expect("(");
      g = Guard::def(term());
      expect(")");
    } else {
      Term a = term();
      if (accept("=="))
        g = Guard::eq(std::move(a), term());
      else if (accept("!="))
        g = Guard::neq(std::move(a), term());
      else
        throw ParseError(peek().pos, "expected '==' or '!=' after term");
    }
    g.pos = p;
    return g;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourceUnit* unit_ = nullptr;
  std::string scratch_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::Or: return 1;
    case Guard::Kind::And: return 2;
    case Guard::Kind::Not: return 3;
    default: return 4;
  }
}

void print_guard(std::ostream& os, const Guard& g, int min_prec) {
  bool paren = precedence(g) < min_prec;
  if (paren) os << '(';
  switch (g.kind) {
    case Guard::Kind::True: os << "true"; break;
    case Guard::Kind::False: os << "false"; break;
    case Guard::Kind::Eq: os << print_term(g.lhs) << " == " << print_term(g.rhs); break;
    case Guard::Kind::Neq: os << print_term(g.lhs) << " != " << print_term(g.rhs); break;
    case Guard::Kind::Def: os << "def(" << print_term(g.lhs) << ")"; break;
    case Guard::Kind::Not: {
      const Guard& k = g.kids[0];
      os << '!';
      bool eq = k.kind == Guard::Kind::Eq || k.kind == Guard::Kind::Neq;
      print_guard(os, k, eq ? 5 : 3);
      break;
    }
    case Guard::Kind::And:
      print_guard(os, g.kids[0], 2);
      os << " && ";
      print_guard(os, g.kids[1], 3);
      break;
    case Guard::Kind::Or:
      print_guard(os, g.kids[0], 1);
      os << " || ";
      print_guard(os, g.kids[1], 2);
      break;
  }
  if (paren) os << ')';
}

std::string print_app(const std::string& head, const std::vector<Term>& args) {
  std::string s = head;
  if (!args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ", ";
      s += print_term(args[i]);
    }
    s += ')';
  }
  return s;
}

void print_prog(std::ostream& os, const Program& p, const std::string& indent, bool ranked_variants);

void print_block(std::ostream& os, const Program& p, const std::string& indent, bool rv) {
  if (p.kind == Program::Kind::Seq && p.kids.empty()) {
    os << "{ }";
    return;
  }
  os << "{\n" << indent << "  ";
  print_prog(os, p, indent + "  ", rv);
  os << "\n" << indent << "}";
}

void print_prog(std::ostream& os, const Program& p, const std::string& indent, bool rv) {
  switch (p.kind) {
    case Program::Kind::Update: {
      const Update& u = p.update;
      switch (u.kind) {
        case Update::Kind::Extension: os << "ext " << print_app(u.head, u.args) << " = " << print_term(u.value); break;
        case Update::Kind::Contraction: os << "con " << print_app(u.head, u.args); break;
        case Update::Kind::Inception: os << "new " << u.head; break;
      }
      break;
    }
    case Program::Kind::Seq:
      if (p.kids.empty()) {
        os << "skip";
        break;
      }
      for (std::size_t i = 0; i < p.kids.size(); ++i) {
        if (i) os << ";\n" << indent;
        print_prog(os, p.kids[i], indent, rv);
      }
      break;
    case Program::Kind::If:
      os << "if [" << print_guard(p.guard) << "] ";
      print_block(os, p.then_branch(), indent, rv);
      os << ' ';
      print_block(os, p.else_branch(), indent, rv);
      break;
    case Program::Kind::Do:
      os << "do [" << print_guard(p.guard) << "] ";
      if (!p.variant.empty()) {
        os << '[';
        for (std::size_t i = 0; i < p.variant.size(); ++i) os << (i ? ", " : "") << p.variant[i];
        os << "] ";
      }
      print_block(os, p.body(), indent, rv);
      break;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  if (t.is_omega()) return "omega";
  return print_app(t.head, t.args);
}

std::string print_guard(const Guard& g) {
  std::ostringstream os;
  print_guard(os, g, 0);
  return os.str();
}

SourceUnit parse_program(const std::string& text) { return Parser(text).unit(); }

std::string print_program(const SourceUnit& unit) {
  std::ostringstream os;
  os << "dialect " << to_string(unit.dialect) << "\n";
  os << "vocab {";
  const auto& ids = unit.vocabulary.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    os << (i ? ",\n  " : "\n  ") << ids[i].name << ':' << ids[i].arity;
    if (ids[i].rank) os << " @" << *ids[i].rank;
  }
  os << (ids.empty() ? " }\n" : "\n}\n");
  const Program& p = unit.program;
  if (!(p.kind == Program::Kind::Seq && p.kids.empty())) {
    print_prog(os, p, "", unit.dialect != Dialect::ST);
    os << "\n";
  }
  return os.str();
}

}  // namespace fps
