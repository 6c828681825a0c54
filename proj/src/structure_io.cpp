#include "fps/structure_io.hpp"

#include <cctype>
#include <sstream>

namespace fps {
namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '\'' || c == '.' || c == '-';
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  Structure read() {
    word("atoms");
    punct(':');
    std::map<std::string, Atom> atoms;
    std::vector<std::string> order;
    skip();
    while (i_ < text_.size() && text_[i_] != '\n' && !at_keyword()) {
      Pos p = pos();
      std::string n = name();
      if (!atoms.emplace(n, Atom{atoms.size()}).second) throw ParseError(p, "duplicate atom '" + n + "'");
      order.push_back(n);
      skip_inline();
    }
    Vocabulary v;
    struct Line {
      std::string id;
      std::vector<std::pair<Tuple, Atom>> entries;
    };
    std::vector<Line> lines;
    auto atom = [&](Pos p, const std::string& n) {
      auto it = atoms.find(n);
      if (it == atoms.end()) throw ParseError(p, "undeclared atom '" + n + "'");
      return it->second;
    };
    skip();
    while (i_ < text_.size()) {
      Pos p = pos();
      std::string kw = name();
      Line line;
      if (kw == "token") {
        line.id = name();
        declared(v, line.id, p);
        punct('=');
        Pos ap = pos();
        std::string a = name();
        if (a != "undef") line.entries.push_back({{}, atom(ap, a)});
        v.add({line.id, 0, std::nullopt});
      } else if (kw == "fn") {
        line.id = name();
        declared(v, line.id, p);
        punct('/');
        unsigned k = nat();
        if (k == 0) throw ParseError(p, "pointer '" + line.id + "' needs arity >= 1; use `token`");
        punct('{');
        skip();
        if (peek() != '}') {
          do {
            punct('(');
            Tuple t;
            do {
              Pos ap = pos();
              t.push_back(atom(ap, name()));
            } while (accept(','));
            punct(')');
            if (t.size() != k) throw ParseError(p, "entry of '" + line.id + "' has the wrong length");
            punct('-');
            punct('>');
            Pos ap = pos();
            line.entries.push_back({t, atom(ap, name())});
          } while (accept(';'));
        }
        punct('}');
        v.add({line.id, k, std::nullopt});
      } else {
        throw ParseError(p, "expected `token` or `fn` but found '" + kw + "'");
      }
      lines.push_back(std::move(line));
      skip();
    }
    Structure s(v);
    for (const auto& l : lines)
      for (const auto& [t, a] : l.entries)
        if (!s.insert(l.id, t, a)) throw ParseError({}, "duplicate entry in '" + l.id + "'");
    for (std::size_t k = 0; k < order.size(); ++k) s.set_atom_name(Atom{k}, order[k]);
    return s;
  }

 private:
  Pos pos() const {
    Pos p{1, 1};
    for (std::size_t k = 0; k < i_; ++k) {
      if (text_[k] == '\n') {
        ++p.line;
        p.col = 1;
      } else {
        ++p.col;
      }
    }
    return p;
  }

  char peek() const { return i_ < text_.size() ? text_[i_] : '\0'; }

  void skip() {
    while (i_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
        ++i_;
      } else if (text_[i_] == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  void skip_inline() {
    while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t' || text_[i_] == '\r')) ++i_;
  }

  bool at_keyword() const {
    for (const char* k : {"token ", "fn "})
      if (text_.compare(i_, std::string(k).size(), k) == 0) return true;
    return false;
  }

  static void declared(const Vocabulary& v, const std::string& id, Pos p) {
    if (v.contains(id)) throw ParseError(p, "duplicate identifier '" + id + "'");
  }

  std::string name() {
    skip();
    std::size_t j = i_;
    while (j < text_.size() && word_char(text_[j]) && !(text_[j] == '-' && j + 1 < text_.size() && text_[j + 1] == '>'))
      ++j;
    if (j == i_) throw ParseError(pos(), std::string("expected a name but found '") + peek() + "'");
    std::string n = text_.substr(i_, j - i_);
    i_ = j;
    return n;
  }

  unsigned nat() {
    skip();
    std::size_t j = i_;
    while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
    if (j == i_) throw ParseError(pos(), "expected a number");
    unsigned n = static_cast<unsigned>(std::stoul(text_.substr(i_, j - i_)));
    i_ = j;
    return n;
  }

  void word(const std::string& w) {
    Pos p = (skip(), pos());
    if (name() != w) throw ParseError(p, "expected '" + w + "'");
  }

  void punct(char c) {
    skip();
    if (peek() != c) throw ParseError(pos(), std::string("expected '") + c + "' but found '" + peek() + "'");
    ++i_;
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    ++i_;
    return true;
  }

  const std::string& text_;
  std::size_t i_ = 0;
};

}  // namespace

Structure parse_structure(const std::string& text) { return Reader(text).read(); }

std::string print_structure(const Structure& s) {
  std::map<Atom, std::string> label;
  std::set<std::string> used;
  for (Atom a : s.scope()) {
    auto it = s.atom_names().find(a.id);
    std::string n = it != s.atom_names().end() ? it->second : "";
    if (n.empty() || n == "undef" || used.count(n)) n = "a" + std::to_string(a.id);
    while (used.count(n)) n += "'";
    used.insert(n);
    label[a] = n;
  }
  std::ostringstream os;
  os << "atoms:";
  for (const auto& [a, n] : label) os << ' ' << n;
  os << '\n';
  const auto& v = s.vocabulary();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const FpFunction& f = s.component(i);
    if (v[i].is_token()) {
      Value x = f.apply({});
      os << "token " << v[i].name << " = " << (x ? label[*x] : "undef") << '\n';
      continue;
    }
    os << "fn " << v[i].name << '/' << v[i].arity << " {";
    bool first = true;
    for (const auto& [k, x] : f.entries()) {
      os << (first ? " (" : " ; (");
      for (std::size_t j = 0; j < k.size(); ++j) os << (j ? "," : "") << label[k[j]];
      os << ") -> " << label[x];
      first = false;
    }
    os << (first ? "}" : " }") << '\n';
  }
  return os.str();
}

}  // namespace fps
