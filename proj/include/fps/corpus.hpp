#pragma once

// Named example units with random input samplers.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fps/syntax.hpp"
#include "fps/transform.hpp"

namespace fps {

using Sampler = std::function<Structure(std::mt19937_64&)>;

struct CorpusEntry {
  std::string name;
  SourceUnit unit;
  Vocabulary output;  // ids read back after a run
  Sampler sample;     // random valid input of at most 64 entries
};

struct ComposedPair {
  std::string name;
  SourceUnit first;
  TransducerSig first_sig;
  SourceUnit second;
  TransducerSig second_sig;
};

// add then add, mult then add, add then mult (the last shifts its first stage).
std::vector<ComposedPair> composed_pairs();

SourceUnit st_reversal();  // reverses chain (h, n) into (p, n)
SourceUnit st_add();       // y := x + y on numerals
SourceUnit st_mult();      // o := x * y with a non-consuming inner walk
SourceUnit st_diverge();   // never halts

std::vector<CorpusEntry> st_corpus();
// Every STR construction, including composed and ramified units.
std::vector<CorpusEntry> str_corpus();
const CorpusEntry& corpus_entry(const std::vector<CorpusEntry>& corpus, const std::string& name);

// Renames the atoms of s to random distinct ids.
Structure scatter_atoms(std::mt19937_64& rng, const Structure& s);
// Numeral n over ids, with atom ids starting at base.
Structure numeral_from(std::size_t n, const NumeralIds& ids, std::uint64_t base);
// Chain (a, e) over atoms 0..n-1 in the given order, with leq(x, y) = x iff x <= y.
Structure sort_input(const std::vector<std::uint64_t>& order);

}  // namespace fps
