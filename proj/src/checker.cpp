#include "fps/checker.hpp"

#include <set>
#include <sstream>

namespace fps {
namespace {

class Checker {
 public:
  explicit Checker(const SourceUnit& u) : u_(u) {
    for (const auto& f : u.vocabulary.ids())
      if (f.rank) ranks_.insert(*f.rank);
  }

  CheckReport run() {
    for (const auto& f : u_.vocabulary.ids()) {
      bool str = u_.dialect == Dialect::STR;
      if (str && !f.rank) error({}, "E_DIALECT", "identifier '" + f.name + "' has no rank in STR");
      if (!str && f.rank) error({}, "E_DIALECT", "identifier '" + f.name + "' is ranked outside STR");
    }
    program(u_.program, {});
    return std::move(report_);
  }

 private:
  void error(Pos p, std::string code, std::string msg) {
    report_.errors.push_back({p, std::move(code), std::move(msg)});
  }

  const FunctionId* lookup(const std::string& name, Pos p) {
    auto i = u_.vocabulary.index_of(name);
    if (!i) {
      error(p, "E_UNDECLARED", "undeclared identifier '" + name + "'");
      return nullptr;
    }
    return &u_.vocabulary[*i];
  }

  void app(const std::string& head, const std::vector<Term>& args, Pos p) {
    if (const FunctionId* f = lookup(head, p); f && f->arity != args.size())
      error(p, "E_ARITY",
            "'" + head + "' has arity " + std::to_string(f->arity) + ", applied to " + std::to_string(args.size()));
    for (const auto& a : args) term(a, p);
  }

  void term(const Term& t, Pos p) {
    if (!t.is_omega()) app(t.head, t.args, p);
  }

  void standard(const Term& t, Pos p) {
    if (!t.is_standard()) error(p, "E_NONSTANDARD", "update terms must not mention omega");
  }

  void guard(const Guard& g, Pos p) {
    term(g.lhs, p);
    term(g.rhs, p);
    for (const auto& k : g.kids) guard(k, p);
  }

  void program(const Program& prog, Pos outer) {
    Pos p = prog.pos.line ? prog.pos : outer;
    switch (prog.kind) {
      case Program::Kind::Update: {
        const Update& u = prog.update;
        Pos up = u.pos.line ? u.pos : p;
        if (u.kind == Update::Kind::Inception) {
          if (const FunctionId* f = lookup(u.head, up); f && !f->is_token())
            error(up, "E_ARITY", "inception needs a token, '" + u.head + "' is a pointer");
          return;
        }
        app(u.head, u.args, up);
        for (const auto& a : u.args) standard(a, up);
        if (u.kind == Update::Kind::Extension) {
          term(u.value, up);
          standard(u.value, up);
        }
        return;
      }
      case Program::Kind::Seq:
        for (const auto& k : prog.kids) program(k, p);
        return;
      case Program::Kind::If:
        guard(prog.guard, p);
        program(prog.then_branch(), p);
        program(prog.else_branch(), p);
        return;
      case Program::Kind::Do:
        guard(prog.guard, p);
        loop(prog, p);
        program(prog.body(), p);
        return;
    }
  }

  void loop(const Program& prog, Pos p) {
    LoopInfo info;
    info.pos = p;
    info.variant = prog.variant;
    if (u_.dialect == Dialect::ST) {
      if (!prog.variant.empty()) error(p, "E_DIALECT", "variants are not allowed in the ST dialect");
      report_.loops.push_back(std::move(info));
      return;
    }
    if (prog.variant.empty()) error(p, "E_DIALECT", "loops need a nonempty variant in " + to_string(u_.dialect));
    std::set<unsigned> seen;
    for (const auto& name : prog.variant) {
      const FunctionId* f = lookup(name, p);
      if (!f) continue;
      if (f->is_token()) error(p, "E_VARIANT_TOKEN", "variant member '" + name + "' is a token");
      if (f->rank) seen.insert(*f->rank);
    }
    if (u_.dialect == Dialect::STR) {
      if (seen.size() > 1) {
        error(p, "E_VARIANT_MIXED_RANK", "variant members have different ranks");
      } else if (seen.size() == 1) {
        info.rank = *seen.begin();
        for (unsigned r : ranks_)
          if (r >= *info.rank) info.monitored.push_back(r);
      }
    }
    report_.loops.push_back(std::move(info));
  }

  const SourceUnit& u_;
  std::set<unsigned> ranks_;
  CheckReport report_;
};

}  // namespace

std::string CheckReport::format(const std::string& file) const {
  std::ostringstream os;
  for (const auto& e : errors) os << file << ':' << e.pos.line << ':' << e.pos.col << ' ' << e.code << ' ' << e.message << '\n';
  return os.str();
}

CheckReport check(const SourceUnit& unit) { return Checker(unit).run(); }

unsigned max_rank(const SourceUnit& unit) {
  if (unit.dialect != Dialect::STR) throw Error("max_rank: unit is not in the STR dialect");
  return unit.vocabulary.max_rank();
}

}  // namespace fps
