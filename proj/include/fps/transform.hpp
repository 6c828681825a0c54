#pragma once

// Program generators and source-to-source transformations over STR units.

#include <map>
#include <string>
#include <vector>

#include "fps/syntax.hpp"

namespace fps {

// ---- duplication and spawning --------------------------------------------

struct CopySpec {
  std::vector<std::string> names;  // parallel to the source pointers
  unsigned rank = 0;
};

// Walks the string spelled by unary pointers `source` (rank `source_rank`)
// from token `start`, consuming it and writing every entry into each copy.
// With keep_source the source is spawned and renamed back afterwards.
// Throws Error if a copy is ranked above the source or more than one
// same-rank copy would be created.
SourceUnit gen_duplicator(const std::string& start, const std::vector<std::string>& source, unsigned source_rank,
                          const std::vector<CopySpec>& copies, bool keep_source);

// ---- enumerators ---------------------------------------------------------

struct EnumeratorIds {
  std::string head = "a";
  std::string next = "l";
};

// Program expanding a v-structure with a chain (head, next) at rank 0 that
// lists every accessible atom exactly once, arguments before values. All
// pointers of v must share one rank >= 2.
SourceUnit gen_enumerator(const Vocabulary& v, const EnumeratorIds& ids = {});

// ---- arithmetic and sorting ----------------------------------------------


// y := x + y in rank 0; x is consumed.
SourceUnit gen_add(const NumeralIds& x = {"xz", "xs", "xtop"}, const NumeralIds& y = {"yz", "ys", "ytop"});
// out := x * y with x, y in rank 1 and out in rank 0; y is consumed.
SourceUnit gen_mult(const NumeralIds& x = {"xz", "xs", "xtop"}, const NumeralIds& y = {"yz", "ys", "ytop"},
                    const NumeralIds& out = {"oz", "os", "otop"});
// Sorts chain (a, e) by the order pointer leq (leq(x,y) = x iff x <= y)
// into chain (b, f), all in rank 0.
SourceUnit insertion_sort_unit();

// Iterated doubling attempt over numeral (z, s, top) at rank 2 into an
// accumulator (oz, os, otop) at rank 1 starting from 1.
SourceUnit gen_doubling();

// ---- composition ---------------------------------------------------------

struct TransducerSig {
  Vocabulary input;
  unsigned input_rank = 0;
  Vocabulary output;
  unsigned output_rank = 0;
};

SourceUnit shift_ranks(const SourceUnit& unit, unsigned d);
// Renames ids throughout the unit; names absent from the map are kept.
SourceUnit rename_unit(const SourceUnit& unit, const std::map<std::string, std::string>& renaming);

// Unit computing p2 after p1. p1's output vocabulary must equal p2's input
// vocabulary by name and arity. Output ids of p1 that p1 does not declare
// are declared at its output rank (pass-through). Other ids are prefixed
// with c1_ / c2_.
SourceUnit compose(const SourceUnit& p1, const TransducerSig& s1, const SourceUnit& p2, const TransducerSig& s2);

// ---- clocks and ramification ---------------------------------------------

struct ClockIds {
  std::string head = "a";
  std::string next = "e";
};

// Chain (head, next) with c * k^l edges for k the number of accessible atoms
// of the v-input. v is declared at rank 3, the clock at rank 1.
SourceUnit gen_clock(unsigned c, unsigned l, const Vocabulary& v, const ClockIds& ids = {});

// Prefix of the rank-0 working copy that a ramified unit computes on.
inline constexpr const char* kWorkPrefix = "w_";

// STR unit equivalent to an ST unit on inputs whose loops each iterate at
// most c * k^l + 1 times (k = number of accessible input atoms). Loop-free
// units come back unchanged with every id at rank 0. Otherwise the result
// is read from the ids kWorkPrefix + name.
SourceUnit ramify(const SourceUnit& st, unsigned c, unsigned l);
bool ramify_is_identity(const SourceUnit& st);

}  // namespace fps
