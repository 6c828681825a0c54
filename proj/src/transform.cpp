// Generated units are written as program text and parsed, so every
// generator output goes through the same front end as hand-written source.

#include "fps/transform.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fps/checker.hpp"

namespace fps {
namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep = "; ") {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string call(const std::string& f, const std::vector<std::string>& args) {
  if (args.empty()) return f;
  return f + "(" + join(args, ", ") + ")";
}

class Builder {
 public:
  explicit Builder(Dialect d = Dialect::STR) : dialect_(d) {}

  // Declares an id; re-declaring with the same arity and rank is a no-op.
  void declare(const std::string& name, unsigned arity, std::optional<unsigned> rank) {
    if (auto i = vocab_.index_of(name)) {
      const FunctionId& f = vocab_[*i];
      if (f.arity != arity || f.rank != rank) throw Error("generator: conflicting declarations of '" + name + "'");
      return;
    }
    vocab_.add({name, arity, rank});
  }

  // Declares and returns `stem`, or `stem` plus the smallest free suffix.
  std::string fresh(const std::string& stem, unsigned arity, std::optional<unsigned> rank) {
    std::string n = stem;
    for (int k = 1; vocab_.contains(n) || reserved_.count(n); ++k) n = stem + std::to_string(k);
    vocab_.add({n, arity, rank});
    return n;
  }

  void reserve(const std::string& name) { reserved_.insert(name); }
  const Vocabulary& vocabulary() const { return vocab_; }

  std::string header() const {
    std::string out = "dialect " + to_string(dialect_) + "\nvocab {\n";
    std::vector<std::string> decls;
    for (const auto& f : vocab_.ids()) {
      std::string d = "  " + f.name + ":" + std::to_string(f.arity);
      if (f.rank) d += " @" + std::to_string(*f.rank);
      decls.push_back(d);
    }
    return out + join(decls, ",\n") + "\n}\n";
  }

  SourceUnit build(const std::string& body) const { return parse_program(header() + body + "\n"); }
  Program fragment(const std::string& body) const { return build(body).program; }

 private:
  Dialect dialect_;
  Vocabulary vocab_;
  std::set<std::string> reserved_;
};

// Moves one step along chain pointer `next` from cursor `u`, through the
// scratch token `y`, optionally spawning the consumed entry into `spawn`.
std::string advance(const std::string& next, const std::string& u, const std::string& y,
                    const std::string& spawn = "") {
  std::string nu = call(next, {u});
  return join({"ext " + y + " = " + nu, spawn.empty() ? "" : "ext " + call(spawn, {u}) + " = " + nu, "con " + nu,
               "con " + u, "ext " + u + " = " + y, "con " + y});
}

// Walk from `head` along `next`, consuming it into `spawn`, then rename
// `spawn` back. `body` runs once per atom on the chain, or once per edge
// (skipping the last atom) with per_edge.
std::string visit_chain(const std::string& head, const std::string& next, const std::string& spawn,
                        const std::string& u, const std::string& y, const std::string& extra_guard,
                        const std::string& body, bool per_edge = false) {
  std::string g = per_edge ? "def(" + call(next, {u}) + ")" : "def(" + u + ")";
  if (!extra_guard.empty()) g += " && " + extra_guard;
  std::string back = join({"ext " + call(next, {u}) + " = " + call(spawn, {u}), advance(spawn, u, y)});
  return join({"ext " + u + " = " + head, "do [" + g + "] [" + next + "] { " + join({body, advance(next, u, y, spawn)}) + " }",
               "con " + u, "ext " + u + " = " + head,
               "do [def(" + call(spawn, {u}) + ")] [" + spawn + "] { " + back + " }", "con " + u});
}

// Rank-0 listing of the accessible atoms with walkable copies in copy_rank.
struct Listing {
  std::string head, next, tail, seen, found;
  std::vector<std::string> copies, spawns, cursors, scratch;
  std::string code;

  // Runs body(cursors) for every k-tuple of listed atoms.
  std::string tuples(std::size_t k, const std::string& extra_guard,
                     const std::function<std::string(const std::vector<std::string>&)>& body) const {
    std::vector<std::string> us(cursors.begin(), cursors.begin() + static_cast<long>(k));
    std::string inner = body(us);
    for (std::size_t i = k; i-- > 0;)
      inner = visit_chain(head, copies[i], spawns[i], cursors[i], scratch[i], extra_guard, inner);
    return inner;
  }

  std::string append(const std::string& x) const {
    std::vector<std::string> link{"ext " + call(next, {tail}) + " = " + x};
    for (const auto& w : copies) link.push_back("ext " + call(w, {tail}) + " = " + x);
    link.push_back("con " + tail);
    link.push_back("ext " + tail + " = " + x);
    return join({"if [def(" + head + ")] { " + join(link) + " } { ext " + head + " = " + x + "; ext " + tail + " = " +
                     x + " }",
                 "ext " + call(seen, {x}) + " = " + x});
  }
};

Listing build_listing(Builder& b, const Vocabulary& v, unsigned copy_rank, std::size_t min_copies,
                      const std::string& head, const std::string& next) {
  Listing L;
  std::optional<unsigned> prank;
  std::size_t max_arity = 0;
  for (const auto& f : v.ids()) {
    if (!f.rank) throw Error("enumerator: vocabulary must be ranked");
    if (f.is_pointer()) {
      if (prank && *prank != *f.rank) throw Error("enumerator: all pointers must share one rank");
      prank = f.rank;
      max_arity = std::max<std::size_t>(max_arity, f.arity);
    }
  }
  if (prank && *prank <= copy_rank)
    throw Error("enumerator: pointers need rank >= " + std::to_string(copy_rank + 1));

  L.head = head;
  L.next = next;
  b.declare(head, 0, 0);
  b.declare(next, 1, 0);
  L.tail = b.fresh("en_t", 0, 0);
  L.seen = b.fresh("en_seen", 1, 0);
  L.found = b.fresh("en_x", 0, 0);
  for (std::size_t i = 0; i < std::max(max_arity, min_copies); ++i) {
    auto s = std::to_string(i);
    L.copies.push_back(b.fresh("en_w" + s, 1, copy_rank));
    L.spawns.push_back(b.fresh("en_w" + s + "'", 1, copy_rank));
    L.cursors.push_back(b.fresh("en_u" + s, 0, 0));
    L.scratch.push_back(b.fresh("en_y" + s, 0, 0));
  }

  std::vector<std::string> code;
  const std::string& x = L.found;
  for (const auto& f : v.ids())
    if (f.is_token())
      code.push_back("if [def(" + f.name + ") && !def(" + call(L.seen, {f.name}) + ")] { " +
                     join({"ext " + x + " = " + f.name, L.append(x), "con " + x}) + " } { }");

  std::vector<std::string> pointers, restore, search;
  for (const auto& f : v.ids()) {
    if (!f.is_pointer()) continue;
    pointers.push_back(f.name);
    std::string sp = b.fresh("en_" + f.name + "_sp", f.arity, *prank);
    search.push_back(L.tuples(f.arity, "!def(" + x + ")", [&](const std::vector<std::string>& us) {
      std::string fx = call(f.name, us);
      return "if [def(" + fx + ") && !def(" + call(L.seen, {fx}) + ")] { " +
             join({"ext " + x + " = " + fx, "ext " + call(sp, us) + " = " + fx, "con " + fx}) + " } { }";
    }));
    restore.push_back(L.tuples(f.arity, "", [&](const std::vector<std::string>& us) {
      return "ext " + call(f.name, us) + " = " + call(sp, us) + "; con " + call(sp, us);
    }));
  }
  if (!pointers.empty()) {
    search.push_back("if [def(" + x + ")] { " + join({L.append(x), "con " + x}) + " } { }");
    code.push_back("do [true] [" + join(pointers, ", ") + "] { " + join(search) + " }");
    for (auto& r : restore) code.push_back(r);
  }
  L.code = join(code);
  return L;
}

void reserve_all(Builder& b, const Vocabulary& v) {
  for (const auto& f : v.ids()) b.reserve(f.name);
}

void add_vocabulary(Builder& b, const Vocabulary& v, std::optional<unsigned> rank_override = std::nullopt) {
  for (const auto& f : v.ids()) b.declare(f.name, f.arity, rank_override ? rank_override : f.rank);
}

}  // namespace

// ---- duplication ---------------------------------------------------------

SourceUnit gen_duplicator(const std::string& start, const std::vector<std::string>& source, unsigned source_rank,
                          const std::vector<CopySpec>& copies, bool keep_source) {
  if (source.empty()) throw Error("duplicator: no source pointers");
  std::size_t same = keep_source ? 1 : 0;
  for (const auto& c : copies) {
    if (c.names.size() != source.size()) throw Error("duplicator: copy does not match the source pointers");
    if (c.rank > source_rank) throw Error("duplicator: copy ranked above the source");
    if (c.rank == source_rank) ++same;
  }
  if (same > 1) throw Error("duplicator: at most one same-rank copy of the source is possible");

  Builder b;
  b.declare(start, 0, source_rank);
  for (const auto& f : source) b.declare(f, 1, source_rank);
  for (const auto& c : copies)
    for (const auto& n : c.names) {
      if (b.vocabulary().contains(n)) throw Error("duplicator: name '" + n + "' used twice");
      b.declare(n, 1, c.rank);
    }
  std::string a = b.fresh("dup_a", 0, 0), y = b.fresh("dup_b", 0, 0);
  std::vector<std::string> spawn;
  if (keep_source)
    for (const auto& f : source) spawn.push_back(b.fresh(f + "_sp", 1, source_rank));

  auto cascade = [&](const std::vector<std::string>& from, const std::vector<std::vector<std::string>>& targets) {
    std::string out = "skip";
    for (std::size_t i = from.size(); i-- > 0;) {
      std::string fa = call(from[i], {a});
      std::vector<std::string> step;
      for (const auto& t : targets) step.push_back("ext " + call(t[i], {a}) + " = " + fa);
      step.push_back(advance(from[i], a, y));
      out = "if [def(" + fa + ")] { " + join(step) + " } { " + out + " }";
    }
    return out;
  };

  std::vector<std::vector<std::string>> targets;
  for (const auto& c : copies) targets.push_back(c.names);
  if (keep_source) targets.push_back(spawn);
  std::vector<std::string> code{"ext " + a + " = " + start,
                                "do [true] [" + join(source, ", ") + "] { " + cascade(source, targets) + " }",
                                "con " + a};
  if (keep_source) {
    code.push_back("ext " + a + " = " + start);
    code.push_back("do [true] [" + join(spawn, ", ") + "] { " + cascade(spawn, {source}) + " }");
    code.push_back("con " + a);
  }
  return b.build(join(code));
}

// ---- enumerator ----------------------------------------------------------

SourceUnit gen_enumerator(const Vocabulary& v, const EnumeratorIds& ids) {
  for (const auto& f : v.ids())
    if (f.rank && *f.rank < 2) throw Error("enumerator: input ids need rank >= 2");
  if (v.contains(ids.head) || v.contains(ids.next)) throw Error("enumerator: output ids clash with the input");
  Builder b;
  add_vocabulary(b, v);
  Listing L = build_listing(b, v, 1, 0, ids.head, ids.next);
  return b.build(L.code);
}

// ---- arithmetic ----------------------------------------------------------

SourceUnit gen_add(const NumeralIds& x, const NumeralIds& y) {
  Builder b;
  for (const auto* n : {&x, &y}) {
    b.declare(n->zero, 0, 0);
    b.declare(n->succ, 1, 0);
    b.declare(n->top, 0, 0);
  }
  std::string w = b.fresh("add_w", 0, 0), v = b.fresh("add_v", 0, 0);
  std::string xw = call(x.succ, {w});
  std::string body = join({"ext " + v + " = " + xw, "ext " + call(y.succ, {y.top}) + " = " + v, "con " + y.top,
                           "ext " + y.top + " = " + v, "con " + xw, "con " + w, "ext " + w + " = " + v, "con " + v});
  return b.build(join({"ext " + w + " = " + x.zero, "do [def(" + xw + ")] [" + x.succ + "] { " + body + " }",
                       "con " + w}));
}

SourceUnit gen_mult(const NumeralIds& x, const NumeralIds& y, const NumeralIds& out) {
  Builder b;
  for (const auto* n : {&x, &y}) {
    b.declare(n->zero, 0, 1);
    b.declare(n->succ, 1, 1);
    b.declare(n->top, 0, 1);
  }
  b.declare(out.zero, 0, 0);
  b.declare(out.succ, 1, 0);
  b.declare(out.top, 0, 0);
  std::string w = b.fresh("mul_w", 0, 0), u = b.fresh("mul_u", 0, 0), v = b.fresh("mul_v", 0, 0),
              t = b.fresh("mul_t", 0, 0), sp = b.fresh(x.succ + "_sp", 1, 1);
  std::string tick = join({"new " + t, "ext " + call(out.succ, {out.top}) + " = " + t, "con " + out.top,
                           "ext " + out.top + " = " + t, "con " + t});
  std::string inner = visit_chain(x.zero, x.succ, sp, u, v, "", tick, true);
  std::string yw = call(y.succ, {w});
  return b.build(join({"new " + out.zero, "ext " + out.top + " = " + out.zero, "ext " + w + " = " + y.zero,
                       "do [def(" + yw + ")] [" + y.succ + "] { " + join({inner, advance(y.succ, w, v)}) + " }",
                       "con " + w}));
}

SourceUnit insertion_sort_unit() {
  return parse_program(R"(dialect STR
vocab { a:0 @0, e:1 @0, leq:2 @0, b:0 @0, f:1 @0, g:1 @0, x:0 @0, w:0 @0, y:0 @0 }
ext b = a;
do [def(e(a))] [e] {
  ext x = e(a); con e(a); con a; ext a = x;
  ext w = b;
  if [leq(x, b) == x] { ext g(x) = b; con b; ext b = x; con x } { };
  do [def(f(w))] [f] {
    if [def(x) && leq(x, f(w)) == x] {
      ext g(w) = x; ext g(x) = f(w); ext y = f(w); con f(w); con w; ext w = y; con y; con x
    } {
      ext g(w) = f(w); ext y = f(w); con f(w); con w; ext w = y; con y
    }
  };
  if [def(x)] { ext g(w) = x; con x } { };
  con w;
  ext w = b;
  do [def(g(w))] [g] { ext f(w) = g(w); ext y = g(w); con g(w); con w; ext w = y; con y };
  con w
}
)");
}

SourceUnit gen_doubling() {
  return parse_program(R"(dialect STR
vocab { z:0 @2, s:1 @2, top:0 @2, oz:0 @1, os:1 @1, otop:0 @1, os2:1 @1, w:0 @0, u:0 @0, v:0 @0, t:0 @0 }
new oz; new t; ext os(oz) = t; ext otop = t; con t;
ext w = z;
do [def(s(w))] [s] {
  ext u = oz;
  do [def(os(u))] [os] {
    ext os2(u) = os(u); new t; ext os(otop) = t; con otop; ext otop = t; con t;
    ext v = os(u); con os(u); con u; ext u = v; con v
  };
  con u;
  ext u = oz;
  do [def(os2(u))] [os2] { ext os(u) = os2(u); ext v = os2(u); con os2(u); con u; ext u = v; con v };
  con u;
  ext v = s(w); con s(w); con w; ext w = v; con v
};
con w
)");
}

// ---- renaming, shifting, composition -------------------------------------

namespace {

using Renaming = std::map<std::string, std::string>;

const std::string& renamed(const std::string& n, const Renaming& m) {
  auto it = m.find(n);
  return it == m.end() ? n : it->second;
}

Term rename_term(const Term& t, const Renaming& m) {
  if (t.is_omega()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(rename_term(a, m));
  return Term::app(renamed(t.head, m), std::move(args));
}

Guard rename_guard(Guard g, const Renaming& m) {
  if (!g.lhs.is_omega()) g.lhs = rename_term(g.lhs, m);
  if (!g.rhs.is_omega()) g.rhs = rename_term(g.rhs, m);
  for (auto& k : g.kids) k = rename_guard(std::move(k), m);
  return g;
}

Program rename_program(Program p, const Renaming& m) {
  if (p.kind == Program::Kind::Update) {
    Update& u = p.update;
    u.head = renamed(u.head, m);
    for (auto& a : u.args) a = rename_term(a, m);
    if (u.kind == Update::Kind::Extension) u.value = rename_term(u.value, m);
  }
  p.guard = rename_guard(std::move(p.guard), m);
  for (auto& v : p.variant) v = renamed(v, m);
  for (auto& k : p.kids) k = rename_program(std::move(k), m);
  return p;
}

}  // namespace

SourceUnit rename_unit(const SourceUnit& unit, const std::map<std::string, std::string>& renaming) {
  SourceUnit out;
  out.dialect = unit.dialect;
  for (const auto& f : unit.vocabulary.ids()) {
    FunctionId g = f;
    g.name = renamed(f.name, renaming);
    if (out.vocabulary.contains(g.name)) throw VocabularyError("rename: '" + g.name + "' would be declared twice");
    out.vocabulary.add(std::move(g));
  }
  out.program = rename_program(unit.program, renaming);
  return out;
}

SourceUnit shift_ranks(const SourceUnit& unit, unsigned d) {
  if (unit.dialect != Dialect::STR) throw Error("shift_ranks: expects an STR unit");
  SourceUnit out = unit;
  std::vector<FunctionId> ids = unit.vocabulary.ids();
  for (auto& f : ids) f.rank = *f.rank + d;
  out.vocabulary = Vocabulary(std::move(ids));
  return out;
}

namespace {

// Declares the ids of `sig` missing from `u` at `rank` and checks the
// declared ones sit there.
SourceUnit with_interface(SourceUnit u, const Vocabulary& sig, unsigned rank, const char* what) {
  for (const auto& f : sig.ids()) {
    if (auto i = u.vocabulary.index_of(f.name)) {
      const FunctionId& g = u.vocabulary[*i];
      if (g.arity != f.arity) throw VocabularyError(std::string("compose: arity of ") + what + " id '" + f.name + "'");
      if (g.rank != rank) throw VocabularyError(std::string("compose: ") + what + " id '" + f.name + "' is not in rank " +
                                                std::to_string(rank));
    } else {
      u.vocabulary.add({f.name, f.arity, rank});
    }
  }
  return u;
}

SourceUnit prefix_internal(const SourceUnit& u, const std::set<std::string>& keep, const std::string& prefix) {
  Renaming m;
  for (const auto& f : u.vocabulary.ids())
    if (!keep.count(f.name)) m[f.name] = prefix + f.name;
  return rename_unit(u, m);
}

std::set<std::string> names_of(std::initializer_list<const Vocabulary*> vs) {
  std::set<std::string> out;
  for (const auto* v : vs)
    for (const auto& f : v->ids()) out.insert(f.name);
  return out;
}

}  // namespace

SourceUnit compose(const SourceUnit& p1, const TransducerSig& s1, const SourceUnit& p2, const TransducerSig& s2) {
  if (p1.dialect != Dialect::STR || p2.dialect != Dialect::STR) throw Error("compose: expects STR units");
  if (names_of({&s1.output}) != names_of({&s2.input})) throw VocabularyError("compose: interfaces do not match");
  for (const auto& f : s1.output.ids())
    if (s2.input.at(f.name).arity != f.arity) throw VocabularyError("compose: arity mismatch on '" + f.name + "'");

  SourceUnit q1 = with_interface(p1, s1.output, s1.output_rank, "output");
  SourceUnit q2 = with_interface(p2, s2.input, s2.input_rank, "input");
  if (s1.output_rank >= s2.input_rank)
    q2 = shift_ranks(q2, s1.output_rank - s2.input_rank);
  else
    q1 = shift_ranks(q1, s2.input_rank - s1.output_rank);
  q1 = prefix_internal(q1, names_of({&s1.input, &s1.output}), "c1_");
  q2 = prefix_internal(q2, names_of({&s2.input, &s2.output}), "c2_");

  SourceUnit out;
  out.vocabulary = q1.vocabulary;
  for (const auto& f : q2.vocabulary.ids()) {
    if (auto i = out.vocabulary.index_of(f.name)) {
      if (out.vocabulary[*i] != f) throw VocabularyError("compose: '" + f.name + "' is declared differently");
    } else {
      out.vocabulary.add(f);
    }
  }
  out.program = Program::seq({q1.program, q2.program});
  return out;
}

// ---- clocks and ramification ---------------------------------------------

namespace {

// Fresh chain (head, next) with c * k^l edges, k the listing length.
std::string grow_chain(Builder& b, const Listing& L, unsigned c, unsigned l, const std::string& head,
                       const std::string& next) {
  std::string tail = b.fresh("ck_tail", 0, 0), t = b.fresh("ck_t", 0, 0);
  std::vector<std::string> ticks;
  for (unsigned i = 0; i < c; ++i)
    ticks.push_back(join({"new " + t, "ext " + call(next, {tail}) + " = " + t, "con " + tail,
                          "ext " + tail + " = " + t, "con " + t}));
  std::string all = join(ticks);
  return join({"new " + head, "ext " + tail + " = " + head,
               L.tuples(l, "", [&](const std::vector<std::string>&) { return all; }), "con " + tail});
}

Vocabulary at_rank(const Vocabulary& v, unsigned rank) {
  std::vector<FunctionId> ids = v.ids();
  for (auto& f : ids) f.rank = rank;
  return Vocabulary(std::move(ids));
}

}  // namespace

SourceUnit gen_clock(unsigned c, unsigned l, const Vocabulary& v, const ClockIds& ids) {
  if (v.contains(ids.head) || v.contains(ids.next)) throw Error("clock: output ids clash with the input");
  Builder b;
  reserve_all(b, v);
  Vocabulary vr = at_rank(v, 3);
  add_vocabulary(b, vr);
  b.declare(ids.head, 0, 0);
  b.declare(ids.next, 1, 1);
  std::string head = b.fresh("ck_a", 0, 0), next = b.fresh("ck_l", 1, 0);
  Listing L = build_listing(b, vr, 2, l, head, next);
  return b.build(join({L.code, grow_chain(b, L, c, l, ids.head, ids.next)}));
}

bool ramify_is_identity(const SourceUnit& st) { return loop_depth(st.program) == 0; }

SourceUnit ramify(const SourceUnit& st, unsigned c, unsigned l) {
  if (st.dialect != Dialect::ST) throw Error("ramify: expects an ST unit");
  if (ramify_is_identity(st)) {
    SourceUnit out = st;
    out.dialect = Dialect::STR;
    out.vocabulary = at_rank(st.vocabulary, 0);
    return out;
  }
  const unsigned depth = static_cast<unsigned>(loop_depth(st.program));
  const unsigned seed_rank = depth + 1, copy_rank = depth + 2, input_rank = depth + 3;

  Builder b;
  Vocabulary v = at_rank(st.vocabulary, input_rank);
  reserve_all(b, v);
  add_vocabulary(b, v);
  Renaming work;
  for (const auto& f : st.vocabulary.ids()) {
    std::string w = kWorkPrefix + f.name;
    if (st.vocabulary.contains(w)) throw Error("ramify: '" + w + "' is already declared");
    b.declare(w, f.arity, 0);
    work[f.name] = w;
  }
  for (const auto& [n, w] : work) b.reserve(w);

  std::string lhead = b.fresh("rm_a", 0, 0), lnext = b.fresh("rm_l", 1, 0);
  Listing L = build_listing(b, v, copy_rank, l, lhead, lnext);

  std::vector<std::string> prologue{L.code};
  for (const auto& f : st.vocabulary.ids()) {
    if (f.is_token()) {
      prologue.push_back("ext " + work[f.name] + " = " + f.name);
      continue;
    }
    prologue.push_back(L.tuples(f.arity, "", [&](const std::vector<std::string>& us) {
      return "ext " + call(work[f.name], us) + " = " + call(f.name, us);
    }));
  }
  std::string seed = b.fresh("rm_n", 0, 0), seed_next = b.fresh("rm_nn", 1, seed_rank),
              seed_spawn = b.fresh("rm_nn'", 1, seed_rank);
  prologue.push_back(grow_chain(b, L, c, l, seed, seed_next));

  std::string cu = b.fresh("rm_cu", 0, 0), cv = b.fresh("rm_cv", 0, 0);
  std::vector<std::string> clock, clock_head;
  for (unsigned d = 1; d <= depth; ++d) {
    clock.push_back(b.fresh("rm_e" + std::to_string(d), 1, depth - d + 1));
    clock_head.push_back(b.fresh("rm_h" + std::to_string(d), 0, 0));
  }

  // Fragments parse against the complete vocabulary, so build them last.
  std::vector<Program> build, consume, drain;
  for (unsigned d = 0; d < depth; ++d) {
    build.push_back(b.fragment(join(
        {"ext " + clock_head[d] + " = " + seed,
         visit_chain(seed, seed_next, seed_spawn, cu, cv, "",
                     "ext " + call(clock[d], {cu}) + " = " + call(seed_next, {cu}), true)})));
    consume.push_back(b.fragment(advance(clock[d], clock_head[d], cv)));
    drain.push_back(b.fragment(join(
        {"do [true] [" + clock[d] + "] { " + advance(clock[d], clock_head[d], cv) + " }", "con " + clock_head[d]})));
  }

  std::function<Program(const Program&, unsigned)> lift = [&](const Program& p, unsigned d) -> Program {
    switch (p.kind) {
      case Program::Kind::Update:
        return p;
      case Program::Kind::Seq: {
        std::vector<Program> parts;
        for (const auto& k : p.kids) parts.push_back(lift(k, d));
        return Program::seq(std::move(parts));
      }
      case Program::Kind::If:
        return Program::branch(p.guard, lift(p.then_branch(), d), lift(p.else_branch(), d));
      case Program::Kind::Do:
        break;
    }
    Program loop = Program::loop(p.guard, {clock[d]}, Program::seq({consume[d], lift(p.body(), d + 1)}));
    return Program::seq({build[d], std::move(loop), drain[d]});
  };

  SourceUnit out;
  out.dialect = Dialect::STR;
  out.vocabulary = b.vocabulary();
  out.program =
      Program::seq({b.fragment(join(prologue)), lift(rename_program(st.program, work), 0)});
  return out;
}

}  // namespace fps
