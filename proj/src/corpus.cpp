#include "fps/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "fps/transform.hpp"

namespace fps {

SourceUnit st_reversal() {
  return parse_program(R"(dialect ST
vocab { h:0, n:1, p:0, x:0 }
do [def(h)] { ext x = n(h); con n(h); ext n(h) = p; con p; ext p = h; con h; ext h = x; con x }
)");
}

SourceUnit st_add() {
  return parse_program(R"(dialect ST
vocab { xz:0, xs:1, xtop:0, yz:0, ys:1, ytop:0, w:0, v:0 }
ext w = xz;
do [def(xs(w))] { ext v = xs(w); ext ys(ytop) = v; con ytop; ext ytop = v; con xs(w); con w; ext w = v; con v };
con w
)");
}

SourceUnit st_mult() {
  return parse_program(R"(dialect ST
vocab { xz:0, xs:1, xtop:0, yz:0, ys:1, ytop:0, oz:0, os:1, otop:0, w:0, u:0, v:0, t:0 }
new oz; ext otop = oz;
ext w = yz;
do [def(ys(w))] {
  ext u = xz;
  do [def(xs(u))] { new t; ext os(otop) = t; con otop; ext otop = t; con t; ext v = xs(u); con u; ext u = v; con v };
  con u;
  ext v = ys(w); con w; ext w = v; con v
};
con w
)");
}

SourceUnit st_diverge() {
  return parse_program("dialect ST\nvocab { c:0 }\ndo [true] { new c; con c }\n");
}

Structure scatter_atoms(std::mt19937_64& rng, const Structure& s) {
  auto scope = s.scope();
  std::vector<std::uint64_t> ids(4 * scope.size() + 8);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::map<Atom, Atom> m;
  std::size_t i = 0;
  for (Atom a : scope) m[a] = Atom{ids[i++]};
  return rename_atoms(s, m);
}

Structure numeral_from(std::size_t n, const NumeralIds& ids, std::uint64_t base) {
  Structure s = encode_numeral(n, ids);
  std::map<Atom, Atom> m;
  for (Atom a : s.scope()) m[a] = Atom{a.id + base};
  return rename_atoms(s, m);
}

Structure sort_input(const std::vector<std::uint64_t>& order) {
  std::vector<Atom> atoms;
  for (auto x : order) atoms.push_back(Atom{x});
  Structure s = merge(encode_chain(atoms, {"a", "e"}), Structure(Vocabulary({{"leq", 2, std::nullopt}})));
  for (auto x : order)
    for (auto y : order)
      if (x <= y) s.insert("leq", {Atom{x}, Atom{y}}, Atom{x});
  return s;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Vocabulary numerals(std::initializer_list<NumeralIds> list) {
  Vocabulary v;
  for (const auto& n : list) {
    Vocabulary part = numeral_vocabulary(n);
    for (const auto& f : part.ids()) v.add(f);
  }
  return v;
}

const NumeralIds kX{"xz", "xs", "xtop"}, kY{"yz", "ys", "ytop"}, kW{"wz", "ws", "wtop"}, kO{"oz", "os", "otop"};

Sampler numerals_sampler(std::vector<NumeralIds> ids, std::size_t max) {
  return [ids, max](std::mt19937_64& rng) {
    Structure s;
    std::uint64_t base = 0;
    for (const auto& n : ids) {
      std::size_t k = pick(rng, 0, max);
      Structure part = numeral_from(k, n, base);
      base += k + 1;
      s = s.vocabulary().empty() ? part : merge(s, part);
    }
    return scatter_atoms(rng, s);
  };
}

Sampler string_sampler(std::size_t max_len) {
  return [max_len](std::mt19937_64& rng) {
    std::string bits(pick(rng, 0, max_len), '0');
    for (auto& b : bits) b = pick(rng, 0, 1) ? '1' : '0';
    return scatter_atoms(rng, encode_string(bits));
  };
}

// Random structure over ranked v; at most `atoms` atoms and `entries` entries.
Sampler structure_sampler(Vocabulary v, std::size_t atoms, std::size_t entries) {
  return [v, atoms, entries](std::mt19937_64& rng) {
    std::vector<FunctionId> ids = v.ids();
    for (auto& f : ids) f.rank.reset();
    Structure s{Vocabulary(ids)};
    std::size_t n = pick(rng, 1, atoms), e = pick(rng, 0, entries);
    for (std::size_t i = 0; i < e; ++i) {
      const FunctionId& f = ids[pick(rng, 0, ids.size() - 1)];
      Tuple key;
      for (unsigned j = 0; j < f.arity; ++j) key.push_back(Atom{pick(rng, 0, n - 1)});
      if (f.is_token())
        s.set_token(f.name, Atom{pick(rng, 0, n - 1)});
      else
        s.insert(f.name, key, Atom{pick(rng, 0, n - 1)});
    }
    return scatter_atoms(rng, s);
  };
}

Vocabulary names(const SourceUnit& u, std::initializer_list<const char*> list) {
  Vocabulary v;
  for (const char* n : list) {
    FunctionId f = u.vocabulary.at(n);
    f.rank.reset();
    v.add(f);
  }
  return v;
}

}  // namespace

std::vector<ComposedPair> composed_pairs() {
  TransducerSig s1{numerals({kX, kY, kW}), 0, numerals({kY, kW}), 0};
  return {
      {"add_add", gen_add(), s1, gen_add(kY, kW), {numerals({kY, kW}), 0, numerals({kW}), 0}},
      {"mult_add", gen_mult(), {numerals({kX, kY, kW}), 1, numerals({kO, kW}), 0}, gen_add(kO, kW),
       {numerals({kO, kW}), 0, numerals({kW}), 0}},
      {"add_mult", gen_add(), s1, gen_mult(kY, kW, kO), {numerals({kY, kW}), 1, numerals({kO}), 0}},
  };
}

std::vector<CorpusEntry> st_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"reversal", st_reversal(), {}, [](std::mt19937_64& rng) {
                   return scatter_atoms(rng, encode_chain_of_length(pick(rng, 0, 30), {"h", "n"}));
                 }});
  out.back().output = names(out.back().unit, {"p", "n"});
  out.push_back({"add", st_add(), {}, numerals_sampler({kX, kY}, 30)});
  out.back().output = numerals({kY});
  out.push_back({"mult", st_mult(), {}, numerals_sampler({kX, kY}, 10)});
  out.back().output = numerals({kO});
  out.push_back({"diverge", st_diverge(), Vocabulary({{"c", 0, std::nullopt}}),
                 [](std::mt19937_64&) { return Structure(Vocabulary({{"c", 0, std::nullopt}})); }});
  return out;
}

std::vector<CorpusEntry> str_corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, SourceUnit u, Vocabulary o, Sampler s) {
    out.push_back({std::move(name), std::move(u), std::move(o), std::move(s)});
  };

  SourceUnit dup = gen_duplicator("e", {"f0", "f1"}, 1, {{{"g0", "g1"}, 0}, {{"h0", "h1"}, 0}}, true);
  add("duplicator", dup, names(dup, {"e", "f0", "f1", "g0", "g1", "h0", "h1"}), string_sampler(20));
  SourceUnit spawn = gen_duplicator("e", {"f0", "f1"}, 1, {}, true);
  add("spawn", spawn, names(spawn, {"e", "f0", "f1"}), string_sampler(20));

  Vocabulary ev({{"c", 0, 2}, {"d", 0, 2}, {"f", 1, 2}, {"g", 2, 2}});
  SourceUnit en = gen_enumerator(ev);
  add("enumerator", en, names(en, {"a", "l"}), structure_sampler(ev, 8, 16));

  add("add", gen_add(), numerals({kY}), numerals_sampler({kX, kY}, 30));
  add("mult", gen_mult(), numerals({kO}), numerals_sampler({kX, kY}, 12));
  SourceUnit sort = insertion_sort_unit();
  add("sort", sort, names(sort, {"b", "f"}), [](std::mt19937_64& rng) {
    std::vector<std::uint64_t> order(pick(rng, 1, 9));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return scatter_atoms(rng, sort_input(order));
  });
  add("doubling", gen_doubling(), numerals({{"oz", "os", "otop"}}), numerals_sampler({{"z", "s", "top"}}, 10));

  Vocabulary cv({{"c", 0, std::nullopt}, {"f", 1, std::nullopt}});
  SourceUnit clock = gen_clock(2, 2, cv);
  add("clock", clock, names(clock, {"a", "e"}), structure_sampler(cv, 6, 8));

  for (const auto& c : composed_pairs()) {
    Vocabulary out_ids = c.second_sig.output;
    add(c.name, compose(c.first, c.first_sig, c.second, c.second_sig), out_ids,
        numerals_sampler({kX, kY, kW}, c.name == "add_add" ? 19 : 8));
  }

  auto st = st_corpus();
  SourceUnit rev = ramify(st[0].unit, 2, 1);
  add("reversal_ramified", rev, names(rev, {"w_p", "w_n"}), st[0].sample);
  SourceUnit mul = ramify(st[2].unit, 1, 1);
  add("mult_ramified", mul, names(mul, {"w_oz", "w_os", "w_otop"}), numerals_sampler({kX, kY}, 6));
  return out;
}

const CorpusEntry& corpus_entry(const std::vector<CorpusEntry>& corpus, const std::string& name) {
  for (const auto& e : corpus)
    if (e.name == name) return e;
  throw Error("no corpus entry named '" + name + "'");
}

}  // namespace fps
