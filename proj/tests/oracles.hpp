#pragma once

// Independent reference implementations used as test oracles. None of these
// call into the library's algorithms beyond plain data access.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fps/core.hpp"

namespace oracle {

inline std::string show(const fps::Term& t) {
  if (t.is_omega()) return "omega";
  std::string s = t.head;
  if (!t.args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? "," : "") + show(t.args[i]);
    s += ")";
  }
  return s;
}

inline void subterms(const fps::Term& t, std::set<std::string>& out) {
  out.insert(show(t));
  for (const auto& a : t.args) subterms(a, out);
}

inline std::size_t distinct_subterms(const fps::Term& t) {
  std::set<std::string> s;
  subterms(t, s);
  return s.size();
}

inline std::size_t term_occurrences(const fps::Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_occurrences(a);
  return n;
}

// Valuation table by level: for each atom, up to two distinct terms naming it
// (ignoring token `skip_token`). Returns {accessible atoms, atoms named twice}.
struct TermCensus {
  std::set<fps::Atom> named;
  std::set<fps::Atom> ambiguous;
};

inline TermCensus census(const fps::Structure& s, const std::string& skip_token = fps::kWholeTermToken) {
  std::map<fps::Atom, std::set<std::string>> names;
  const auto& v = s.vocabulary();
  auto note = [&](fps::Atom a, const std::string& t) {
    auto& n = names[a];
    if (n.size() < 2) n.insert(t);
  };
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].is_token() && v[i].name != skip_token)
      if (auto x = s.component(i).apply({})) note(*x, v[i].name);
  std::size_t rounds = s.scope().size() + 2;
  for (std::size_t r = 0; r < rounds; ++r) {
    auto snapshot = names;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_token()) continue;
      for (const auto& [k, val] : s.component(i).entries()) {
        // Cartesian product over stored names of the arguments.
        std::vector<std::string> partial{""};
        bool ok = true;
        for (std::size_t p = 0; p < k.size() && ok; ++p) {
          auto it = snapshot.find(k[p]);
          if (it == snapshot.end()) {
            ok = false;
            break;
          }
          std::vector<std::string> next;
          for (const auto& pre : partial)
            for (const auto& nm : it->second) next.push_back(pre + (p ? "," : "") + nm);
          partial = std::move(next);
        }
        if (!ok) continue;
        for (const auto& args : partial) note(val, v[i].name + "(" + args + ")");
      }
    }
  }
  TermCensus c;
  for (const auto& [a, n] : names) {
    c.named.insert(a);
    if (n.size() > 1) c.ambiguous.insert(a);
  }
  // The skipped token may name an atom nothing else names.
  if (auto x = s.vocabulary().contains(skip_token) ? s.token(skip_token) : std::nullopt) c.named.insert(*x);
  return c;
}

inline bool free_by_census(const fps::Structure& s) {
  TermCensus c = census(s);
  if (!c.ambiguous.empty()) return false;
  for (fps::Atom a : s.scope())
    if (!c.named.count(a)) return false;
  return true;
}

// Brute-force isomorphism over all bijections of the scopes (small inputs).
inline bool iso_brute(const fps::Structure& a, const fps::Structure& b) {
  auto sa = a.scope();
  auto sb = b.scope();
  if (sa.size() != sb.size()) return false;
  const auto& va = a.vocabulary();
  for (const auto& f : va.ids())
    if (!b.vocabulary().contains(f.name) || b.vocabulary().at(f.name).arity != f.arity) return false;
  if (va.size() != b.vocabulary().size()) return false;
  std::vector<fps::Atom> la(sa.begin(), sa.end());
  std::vector<fps::Atom> lb(sb.begin(), sb.end());
  std::sort(lb.begin(), lb.end());
  do {
    std::map<fps::Atom, fps::Atom> m;
    for (std::size_t i = 0; i < la.size(); ++i) m[la[i]] = lb[i];
    bool ok = true;
    for (const auto& f : va.ids()) {
      const auto& ea = a.component(f.name).entries();
      const auto& eb = b.component(f.name).entries();
      if (ea.size() != eb.size()) {
        ok = false;
        break;
      }
      for (const auto& [k, x] : ea) {
        fps::Tuple mk;
        for (auto y : k) mk.push_back(m[y]);
        auto it = eb.find(mk);
        if (it == eb.end() || it->second != m[x]) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return true;
  } while (std::next_permutation(lb.begin(), lb.end()));
  return false;
}

// Listing of a chain by following pointers from the head token; empty on
// any irregularity.
inline std::vector<fps::Atom> walk_chain(const fps::Structure& s, const std::string& head, const std::string& next) {
  std::vector<fps::Atom> out;
  auto h = s.token(head);
  if (!h) return out;
  std::set<fps::Atom> seen;
  fps::Atom cur = *h;
  while (true) {
    if (!seen.insert(cur).second) return {};
    out.push_back(cur);
    auto it = s.component(next).entries().find(fps::Tuple{cur});
    if (it == s.component(next).entries().end()) break;
    cur = it->second;
  }
  if (s.component(next).size() + 1 != out.size()) return {};
  return out;
}

// Peano numeral value of z/s/top encodings: length of the s-path from z to top.
inline long numeral_value(const fps::Structure& s, const std::string& z = "z", const std::string& succ = "s",
                          const std::string& top = "top") {
  auto cur = s.token(z);
  auto t = s.token(top);
  if (!cur || !t) return -1;
  long n = 0;
  std::set<fps::Atom> seen;
  while (*cur != *t) {
    if (!seen.insert(*cur).second) return -1;
    auto it = s.component(succ).entries().find(fps::Tuple{*cur});
    if (it == s.component(succ).entries().end()) return -1;
    cur = it->second;
    ++n;
  }
  if (static_cast<long>(s.component(succ).size()) != n) return -1;
  return n;
}

}  // namespace oracle
