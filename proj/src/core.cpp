#include "fps/core.hpp"

#include <algorithm>
#include <sstream>

namespace fps {

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<FunctionId> ids) {
  for (auto& id : ids) add(std::move(id));
}

void Vocabulary::add(FunctionId id) {
  if (id.name.empty()) throw VocabularyError("empty identifier name");
  if (index_.count(id.name)) throw VocabularyError("duplicate identifier '" + id.name + "'");
  index_.emplace(id.name, ids_.size());
  ids_.push_back(std::move(id));
}

bool Vocabulary::ranked() const {
  if (ids_.empty()) return false;
  return std::all_of(ids_.begin(), ids_.end(), [](const FunctionId& f) { return f.rank.has_value(); });
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const FunctionId& Vocabulary::at(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw VocabularyError("undeclared identifier '" + name + "'");
  return ids_[*i];
}

std::vector<std::string> Vocabulary::of_rank(unsigned rank) const {
  std::vector<std::string> out;
  for (const auto& f : ids_)
    if (f.rank && *f.rank == rank) out.push_back(f.name);
  return out;
}

unsigned Vocabulary::max_rank() const {
  unsigned m = 0;
  for (const auto& f : ids_)
    if (f.rank) m = std::max(m, *f.rank);
  return m;
}

bool Vocabulary::subset_of(const Vocabulary& other) const {
  for (const auto& f : ids_) {
    auto i = other.index_of(f.name);
    if (!i || other[*i].arity != f.arity) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FpFunction

Value FpFunction::apply(std::span<const Atom> args) const {
  auto it = entries_.find(args);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool FpFunction::insert(Tuple key, Atom value) {
  if (key.size() != arity_) throw VocabularyError("tuple length does not match arity");
  return entries_.emplace(std::move(key), value).second;
}

bool FpFunction::erase(std::span<const Atom> key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

FpFunction relation_as_fpfunction(unsigned arity, const std::set<Tuple>& relation) {
  if (arity == 0) throw VocabularyError("relations must have positive arity");
  FpFunction f(arity);
  for (const auto& t : relation) f.insert(t, t.front());
  return f;
}

std::set<Tuple> induced_relation(const FpFunction& f) {
  std::set<Tuple> out;
  for (const auto& [k, v] : f.entries()) out.insert(k);
  return out;
}

// ---------------------------------------------------------------------------
// Terms

bool Term::is_standard() const {
  if (is_omega()) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_standard(); });
}

namespace {

Term parse_compact(const std::string& text, std::size_t& pos, const Vocabulary& v) {
  if (pos >= text.size()) throw Error("compact term ended early");
  if (text[pos] == '(') {
    ++pos;
    Term t = parse_compact(text, pos, v);
    if (pos >= text.size() || text[pos] != ')') throw Error("unbalanced parenthesis in compact term");
    ++pos;
    return t;
  }
  std::string name(1, text[pos++]);
  const FunctionId& f = v.at(name);
  Term t = Term::app(name);
  for (unsigned i = 0; i < f.arity; ++i) t.args.push_back(parse_compact(text, pos, v));
  return t;
}

}  // namespace

Term term_from_compact(const std::string& text, const Vocabulary& vocabulary) {
  std::size_t pos = 0;
  Term t = parse_compact(text, pos, vocabulary);
  if (pos != text.size()) throw Error("trailing characters in compact term '" + text + "'");
  return t;
}

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(Vocabulary vocabulary) : vocabulary_(std::move(vocabulary)) {
  components_.reserve(vocabulary_.size());
  for (const auto& f : vocabulary_.ids()) components_.emplace_back(f.arity);
}

const FpFunction& Structure::component(const std::string& name) const {
  auto i = vocabulary_.index_of(name);
  if (!i) throw VocabularyError("undeclared identifier '" + name + "'");
  return components_[*i];
}

Value Structure::token(const std::string& name) const { return component(name).apply({}); }

Value Structure::apply(const std::string& name, std::span<const Atom> args) const {
  return component(name).apply(args);
}

bool Structure::insert(std::size_t index, Tuple key, Atom value) {
  return components_.at(index).insert(std::move(key), value);
}

bool Structure::insert(const std::string& name, Tuple key, Atom value) {
  auto i = vocabulary_.index_of(name);
  if (!i) throw VocabularyError("undeclared identifier '" + name + "'");
  return insert(*i, std::move(key), value);
}

bool Structure::erase(std::size_t index, std::span<const Atom> key) { return components_.at(index).erase(key); }

bool Structure::erase(const std::string& name, std::span<const Atom> key) {
  auto i = vocabulary_.index_of(name);
  if (!i) throw VocabularyError("undeclared identifier '" + name + "'");
  return erase(*i, key);
}

void Structure::set_token(const std::string& name, Value value) {
  erase(name, {});
  if (value) insert(name, {}, *value);
}

std::size_t Structure::size() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.size();
  return n;
}

std::size_t Structure::size(const std::vector<std::string>& ids) const {
  std::size_t n = 0;
  for (const auto& name : ids) n += component(name).size();
  return n;
}

std::set<Atom> Structure::domain() const {
  std::set<Atom> out;
  for (const auto& c : components_)
    for (const auto& [k, v] : c.entries()) out.insert(k.begin(), k.end());
  return out;
}

std::set<Atom> Structure::range() const {
  std::set<Atom> out;
  for (const auto& c : components_)
    for (const auto& [k, v] : c.entries()) out.insert(v);
  return out;
}

std::set<Atom> Structure::scope() const {
  auto out = domain();
  auto r = range();
  out.insert(r.begin(), r.end());
  return out;
}

Value eval_term(const Structure& s, const Term& t) {
  if (t.is_omega()) return std::nullopt;
  auto idx = s.vocabulary().index_of(t.head);
  if (!idx) throw VocabularyError("undeclared identifier '" + t.head + "'");
  const FpFunction& f = s.component(*idx);
  if (f.arity() != t.args.size()) throw VocabularyError("arity mismatch for '" + t.head + "'");
  Tuple args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) {
    Value v = eval_term(s, a);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  return f.apply(args);
}

std::set<Atom> accessible_atoms(const Structure& s) {
  std::set<Atom> reached;
  for (std::size_t i = 0; i < s.vocabulary().size(); ++i)
    if (s.vocabulary()[i].is_token())
      if (auto v = s.component(i).apply({})) reached.insert(*v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < s.vocabulary().size(); ++i) {
      if (!s.vocabulary()[i].is_pointer()) continue;
      for (const auto& [k, v] : s.component(i).entries()) {
        if (reached.count(v)) continue;
        if (std::all_of(k.begin(), k.end(), [&](Atom a) { return reached.count(a) > 0; })) {
          reached.insert(v);
          changed = true;
        }
      }
    }
  }
  return reached;
}

bool is_accessible(const Structure& s) {
  auto acc = accessible_atoms(s);
  for (Atom a : s.domain())
    if (!acc.count(a)) return false;
  return true;
}

// Free iff accessible and every atom has exactly one production: a token
// naming it or a pointer entry yielding it. The whole-term token `top` is an
// alias by construction and is not counted.
bool is_free(const Structure& s) {
  auto sc = s.scope();
  if (sc.size() > kMaxAtomsForSearch) throw Error("is_free: structure exceeds the atom guard");
  if (!is_accessible(s)) return false;
  std::map<Atom, int> productions;
  for (std::size_t i = 0; i < s.vocabulary().size(); ++i) {
    const auto& f = s.vocabulary()[i];
    if (f.is_token() && f.name == kWholeTermToken) continue;
    for (const auto& [k, v] : s.component(i).entries()) ++productions[v];
  }
  for (Atom a : sc) {
    auto it = productions.find(a);
    // An atom reachable only through `top` still has that one production.
    int n = it == productions.end() ? 0 : it->second;
    if (n > 1) return false;
    if (n == 0 && s.token(kWholeTermToken) != Value(a)) return false;
  }
  return true;
}

namespace {

void collect_heads(const Term& t, Vocabulary& v) {
  if (t.is_omega()) return;
  if (!v.contains(t.head)) v.add(FunctionId{t.head, static_cast<unsigned>(t.args.size()), std::nullopt});
  for (const auto& a : t.args) collect_heads(a, v);
}

Atom build_free(const Term& t, Structure& s, std::map<Term, Atom, bool (*)(const Term&, const Term&)>& seen,
                std::uint64_t& next) {
  auto it = seen.find(t);
  if (it != seen.end()) return it->second;
  Tuple args;
  for (const auto& a : t.args) args.push_back(build_free(a, s, seen, next));
  Atom atom{next++};
  s.insert(t.head, args, atom);
  seen.emplace(t, atom);
  return atom;
}

bool term_less(const Term& a, const Term& b) {
  if (a.head != b.head) return a.head < b.head;
  return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(), term_less);
}

}  // namespace

Structure free_structure(const Term& q, const Vocabulary* vocabulary) {
  if (!q.is_standard()) throw Error("free_structure requires a standard term");
  Vocabulary v;
  if (vocabulary) {
    v = *vocabulary;
  } else {
    collect_heads(q, v);
  }
  if (!v.contains(kWholeTermToken)) v.add(FunctionId{kWholeTermToken, 0, std::nullopt});
  Structure s(v);
  std::map<Term, Atom, bool (*)(const Term&, const Term&)> seen(term_less);
  std::uint64_t next = 0;
  Atom root = build_free(q, s, seen, next);
  s.set_token(kWholeTermToken, root);
  return s;
}

Structure expand(const Structure& s, const Vocabulary& w) {
  if (!s.vocabulary().subset_of(w)) throw VocabularyError("expand: target vocabulary does not contain the source");
  Structure out(w);
  for (std::size_t i = 0; i < s.vocabulary().size(); ++i)
    for (const auto& [k, v] : s.component(i).entries()) out.insert(s.vocabulary()[i].name, k, v);
  for (const auto& [id, name] : s.atom_names()) out.set_atom_name(Atom{id}, name);
  return out;
}

Structure reduct(const Structure& s, const Vocabulary& w) {
  if (!w.subset_of(s.vocabulary())) throw VocabularyError("reduct: target vocabulary is not contained in the source");
  Structure out(w);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (const auto& [k, v] : s.component(w[i].name).entries()) out.insert(i, k, v);
  for (const auto& [id, name] : s.atom_names()) out.set_atom_name(Atom{id}, name);
  return out;
}

Structure reduct(const Structure& s, const std::vector<std::string>& names) {
  Vocabulary w;
  for (const auto& n : names) w.add(s.vocabulary().at(n));
  return reduct(s, w);
}

Structure merge(const Structure& a, const Structure& b) {
  Vocabulary w = a.vocabulary();
  for (const auto& f : b.vocabulary().ids()) {
    if (w.contains(f.name)) throw VocabularyError("merge: vocabularies are not disjoint ('" + f.name + "')");
    w.add(f);
  }
  Structure out = expand(a, w);
  for (std::size_t i = 0; i < b.vocabulary().size(); ++i)
    for (const auto& [k, v] : b.component(i).entries()) out.insert(b.vocabulary()[i].name, k, v);
  for (const auto& [id, name] : b.atom_names()) out.set_atom_name(Atom{id}, name);
  return out;
}

Structure rename_ids(const Structure& s, const std::map<std::string, std::string>& renaming) {
  Vocabulary w;
  for (auto f : s.vocabulary().ids()) {
    auto it = renaming.find(f.name);
    if (it != renaming.end()) f.name = it->second;
    w.add(f);
  }
  Structure out(w);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (const auto& [k, v] : s.component(i).entries()) out.insert(i, k, v);
  for (const auto& [id, name] : s.atom_names()) out.set_atom_name(Atom{id}, name);
  return out;
}

Structure rename_atoms(const Structure& s, const std::map<Atom, Atom>& mapping) {
  auto m = [&](Atom a) {
    auto it = mapping.find(a);
    return it == mapping.end() ? a : it->second;
  };
  Structure out(s.vocabulary());
  for (std::size_t i = 0; i < s.vocabulary().size(); ++i)
    for (const auto& [k, v] : s.component(i).entries()) {
      Tuple key;
      for (Atom a : k) key.push_back(m(a));
      out.insert(i, key, m(v));
    }
  return out;
}

std::optional<std::uint64_t> max_atom_id(const Structure& s) {
  auto sc = s.scope();
  if (sc.empty()) return std::nullopt;
  return sc.rbegin()->id;
}

// ---------------------------------------------------------------------------
// Inductive data encodings

Vocabulary numeral_vocabulary(const NumeralIds& ids) {
  return Vocabulary({{ids.zero, 0, std::nullopt}, {ids.succ, 1, std::nullopt}, {ids.top, 0, std::nullopt}});
}

Structure encode_numeral(std::size_t n, const NumeralIds& ids) {
  Structure s(numeral_vocabulary(ids));
  s.set_token(ids.zero, Atom{0});
  for (std::size_t i = 0; i < n; ++i) s.insert(ids.succ, {Atom{i}}, Atom{i + 1});
  s.set_token(ids.top, Atom{n});
  return s;
}

std::size_t decode_numeral(const Structure& s, const NumeralIds& ids) {
  ChainIds chain{ids.zero, ids.succ};
  auto atoms = decode_chain(s, chain);
  if (atoms.empty()) throw ShapeError("numeral has no zero");
  if (s.token(ids.top) != Value(atoms.back())) throw ShapeError("numeral top does not name the last atom");
  for (std::size_t i = 0; i < s.vocabulary().size(); ++i) {
    const auto& name = s.vocabulary()[i].name;
    if (name != ids.zero && name != ids.succ && name != ids.top && !s.component(i).empty())
      throw ShapeError("numeral carries junk in '" + name + "'");
  }
  return atoms.size() - 1;
}

Structure encode_chain(const std::vector<Atom>& atoms, const ChainIds& ids) {
  Structure s(Vocabulary({{ids.head, 0, std::nullopt}, {ids.next, 1, std::nullopt}}));
  if (atoms.empty()) return s;
  s.set_token(ids.head, atoms.front());
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) s.insert(ids.next, {atoms[i]}, atoms[i + 1]);
  return s;
}

Structure encode_chain_of_length(std::size_t n, const ChainIds& ids) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(Atom{i});
  return encode_chain(atoms, ids);
}

std::vector<Atom> decode_chain(const Structure& s, const ChainIds& ids) {
  std::vector<Atom> out;
  Value cur = s.token(ids.head);
  const FpFunction& next = s.component(ids.next);
  if (next.arity() != 1) throw ShapeError("chain pointer must be unary");
  std::set<Atom> seen;
  while (cur) {
    if (!seen.insert(*cur).second) throw ShapeError("chain contains a cycle");
    out.push_back(*cur);
    Atom a = *cur;
    cur = next.apply(std::span<const Atom>(&a, 1));
  }
  if (out.size() != next.size() + (out.empty() ? 0 : 1))
    throw ShapeError("chain pointer has entries off the listing");
  return out;
}

Structure encode_string(const std::string& bits, const StringIds& ids) {
  Vocabulary v({{ids.end, 0, std::nullopt},
                {ids.zero, 1, std::nullopt},
                {ids.one, 1, std::nullopt},
                {ids.top, 0, std::nullopt}});
  Structure s(v);
  std::uint64_t next = 0;
  Atom cur{next++};
  s.set_token(ids.end, cur);
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    Atom nxt{next++};
    if (*it == '0')
      s.insert(ids.zero, {cur}, nxt);
    else if (*it == '1')
      s.insert(ids.one, {cur}, nxt);
    else
      throw Error("encode_string: not a binary digit");
    cur = nxt;
  }
  s.set_token(ids.top, cur);
  return s;
}

std::string decode_string(const Structure& s, const StringIds& ids) {
  std::string rev;
  Value cur = s.token(ids.end);
  if (!cur) throw ShapeError("string has no end token");
  std::size_t used = 0;
  while (true) {
    Atom a = *cur;
    Value z = s.apply(ids.zero, std::span<const Atom>(&a, 1));
    Value o = s.apply(ids.one, std::span<const Atom>(&a, 1));
    if (z && o) throw ShapeError("string branches");
    if (!z && !o) break;
    rev.push_back(z ? '0' : '1');
    cur = z ? z : o;
    if (++used > s.size()) throw ShapeError("string contains a cycle");
  }
  if (s.component(ids.zero).size() + s.component(ids.one).size() != rev.size())
    throw ShapeError("string pointers have entries off the listing");
  return std::string(rev.rbegin(), rev.rend());
}

}  // namespace fps
