// Structure isomorphism by colour refinement with individualisation.
//
// Both structures are refined together on the disjoint union of their atoms,
// so colours are directly comparable. Initial colours come from token values;
// each round recolours an atom by its old colour plus the multiset of entries
// it takes part in (component, position, colours of the other participants).
// When refinement stalls with a non-discrete partition, one atom on the left
// is individualised against every candidate on the right. At a discrete
// partition the induced bijection is verified entry by entry.

#include <algorithm>
#include <map>

#include "fps/core.hpp"

namespace fps {
namespace {

struct Joint {
  // Atoms [0, left) belong to structure a, [left, total) to structure b.
  std::size_t left = 0;
  std::size_t total = 0;
  // Per component: entries as index tuples followed by the value index.
  std::vector<std::vector<std::vector<int>>> entries;
  std::vector<int> component_of_entry_side;
};

using Coloring = std::vector<int>;

// Returns false if the two sides are unbalanced under the refined colouring.
bool refine(const Joint& j, Coloring& color) {
  while (true) {
    std::vector<std::vector<long>> sig(j.total);
    for (std::size_t i = 0; i < j.total; ++i) sig[i].push_back(color[i]);
    for (std::size_t c = 0; c < j.entries.size(); ++c) {
      for (const auto& e : j.entries[c]) {
        for (std::size_t p = 0; p < e.size(); ++p) {
          auto& s = sig[e[p]];
          s.push_back(-1);
          s.push_back(static_cast<long>(c));
          s.push_back(static_cast<long>(p));
          for (int x : e) s.push_back(color[x]);
        }
      }
    }
    for (auto& s : sig) {
      // Sort incidence records (fixed width per component) for a multiset view.
      std::vector<std::vector<long>> recs;
      std::size_t i = 1;
      while (i < s.size()) {
        std::size_t k = i + 3;
        while (k < s.size() && s[k] != -1) ++k;
        recs.emplace_back(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(k));
        i = k;
      }
      std::sort(recs.begin(), recs.end());
      std::vector<long> flat{s[0]};
      for (auto& r : recs) flat.insert(flat.end(), r.begin(), r.end());
      s = std::move(flat);
    }
    std::map<std::vector<long>, int> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    Coloring fresh(j.total);
    for (std::size_t i = 0; i < j.total; ++i) fresh[i] = ids[sig[i]];

    std::vector<int> count_a(next, 0), count_b(next, 0);
    for (std::size_t i = 0; i < j.total; ++i) (i < j.left ? count_a : count_b)[fresh[i]]++;
    if (count_a != count_b) return false;

    auto classes = [](const Coloring& c) {
      return std::set<int>(c.begin(), c.end()).size();
    };
    bool stable = classes(fresh) == classes(color);
    color = std::move(fresh);
    if (stable) return true;
  }
}

bool verify(const Structure& a, const Structure& b, const std::map<Atom, Atom>& m) {
  return rename_atoms(a, m) == b;
}

bool search(const Structure& a, const Structure& b, const Joint& j, const std::vector<Atom>& atoms,
            Coloring color) {
  if (!refine(j, color)) return false;
  std::map<int, std::vector<std::size_t>> left_classes;
  for (std::size_t i = 0; i < j.left; ++i) left_classes[color[i]].push_back(i);
  int pick = -1;
  std::size_t best = SIZE_MAX;
  for (const auto& [c, members] : left_classes)
    if (members.size() > 1 && members.size() < best) {
      best = members.size();
      pick = c;
    }
  if (pick < 0) {
    std::map<int, std::size_t> right;
    for (std::size_t i = j.left; i < j.total; ++i) right[color[i]] = i;
    std::map<Atom, Atom> m;
    for (std::size_t i = 0; i < j.left; ++i) m[atoms[i]] = atoms[right.at(color[i])];
    return verify(a, b, m);
  }
  std::size_t x = left_classes[pick].front();
  int fresh = *std::max_element(color.begin(), color.end()) + 1;
  for (std::size_t y = j.left; y < j.total; ++y) {
    if (color[y] != pick) continue;
    Coloring c = color;
    c[x] = fresh;
    c[y] = fresh;
    if (search(a, b, j, atoms, std::move(c))) return true;
  }
  return false;
}

}  // namespace

bool isomorphic(const Structure& a, const Structure& b) {
  const auto& va = a.vocabulary();
  const auto& vb = b.vocabulary();
  if (va.size() != vb.size()) return false;
  for (const auto& f : va.ids()) {
    auto i = vb.index_of(f.name);
    if (!i || vb[*i].arity != f.arity) return false;
    if (a.component(f.name).size() != b.component(f.name).size()) return false;
  }
  // Align b to a's declaration order so components are compared by index.
  Structure bb = reduct(b, va);

  auto sa = a.scope();
  auto sb = bb.scope();
  if (sa.size() != sb.size()) return false;
  if (sa.size() + sb.size() > 2 * kMaxAtomsForSearch) throw Error("isomorphic: structure exceeds the atom guard");

  Joint j;
  j.left = sa.size();
  j.total = sa.size() + sb.size();
  std::vector<Atom> atoms(sa.begin(), sa.end());
  atoms.insert(atoms.end(), sb.begin(), sb.end());
  std::map<Atom, int> ia, ib;
  for (std::size_t i = 0; i < sa.size(); ++i) ia[atoms[i]] = static_cast<int>(i);
  for (std::size_t i = sa.size(); i < j.total; ++i) ib[atoms[i]] = static_cast<int>(i);

  j.entries.resize(va.size());
  for (std::size_t c = 0; c < va.size(); ++c) {
    for (const auto& [k, v] : a.component(c).entries()) {
      std::vector<int> e;
      for (Atom x : k) e.push_back(ia[x]);
      e.push_back(ia[v]);
      j.entries[c].push_back(std::move(e));
    }
    for (const auto& [k, v] : bb.component(c).entries()) {
      std::vector<int> e;
      for (Atom x : k) e.push_back(ib[x]);
      e.push_back(ib[v]);
      j.entries[c].push_back(std::move(e));
    }
  }
  Coloring color(j.total, 0);
  return search(a, bb, j, atoms, std::move(color));
}

}  // namespace fps
