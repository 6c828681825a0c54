#pragma once

// Finite partial structures: atoms, fp-functions, vocabularies, terms and
// the structure values every other module operates on.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fps {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a structure does not have the shape a decoder expects.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Raised for vocabulary mismatches (undeclared ids, arity, containment).
class VocabularyError : public Error {
 public:
  using Error::Error;
};

struct Atom {
  std::uint64_t id = 0;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// An element of A plus the undefined value; std::nullopt is bottom.
using Value = std::optional<Atom>;

using Tuple = std::vector<Atom>;

struct TupleLess {
  using is_transparent = void;
  bool operator()(std::span<const Atom> a, std::span<const Atom> b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
  bool operator()(const Tuple& a, const Tuple& b) const {
    return (*this)(std::span<const Atom>(a), std::span<const Atom>(b));
  }
  bool operator()(const Tuple& a, std::span<const Atom> b) const {
    return (*this)(std::span<const Atom>(a), b);
  }
  bool operator()(std::span<const Atom> a, const Tuple& b) const {
    return (*this)(a, std::span<const Atom>(b));
  }
};

struct FunctionId {
  std::string name;
  unsigned arity = 0;
  std::optional<unsigned> rank;

  bool is_token() const { return arity == 0; }
  bool is_pointer() const { return arity > 0; }
  friend bool operator==(const FunctionId&, const FunctionId&) = default;
};

// Finite set of function ids, kept in declaration order. Ranked iff every id
// carries a rank.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<FunctionId> ids);

  void add(FunctionId id);

  const std::vector<FunctionId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool ranked() const;

  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }
  const FunctionId& at(const std::string& name) const;
  const FunctionId& operator[](std::size_t i) const { return ids_[i]; }

  // Names of ids with the given rank.
  std::vector<std::string> of_rank(unsigned rank) const;
  unsigned max_rank() const;

  bool subset_of(const Vocabulary& other) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<FunctionId> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

class FpFunction {
 public:
  using Entries = std::map<Tuple, Atom, TupleLess>;

  FpFunction() = default;
  explicit FpFunction(unsigned arity) : arity_(arity) {}

  unsigned arity() const { return arity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entries& entries() const { return entries_; }

  Value apply(std::span<const Atom> args) const;
  // Returns true iff the entry was added (the key was undefined).
  bool insert(Tuple key, Atom value);
  // Returns true iff an entry was removed.
  bool erase(std::span<const Atom> key);

  friend bool operator==(const FpFunction&, const FpFunction&) = default;

 private:
  unsigned arity_ = 0;
  Entries entries_;
};

// xi_R: the fp-function that maps every tuple of r to its first component.
FpFunction relation_as_fpfunction(unsigned arity, const std::set<Tuple>& relation);
// R_F: the tuples on which f is defined.
std::set<Tuple> induced_relation(const FpFunction& f);

struct Term {
  // Empty head denotes omega.
  std::string head;
  std::vector<Term> args;

  static Term omega() { return {}; }
  static Term app(std::string head, std::vector<Term> args = {}) {
    return Term{std::move(head), std::move(args)};
  }
  bool is_omega() const { return head.empty(); }
  bool is_standard() const;
  friend bool operator==(const Term&, const Term&) = default;
};

// Compact term notation used in tests: "sssz" for unary/nullary one-letter
// ids, and "p(prr)r" where parentheses group a subterm.
Term term_from_compact(const std::string& text, const Vocabulary& vocabulary);

// A vocabulary together with one fp-function per id. Plain value type: copies
// are deep and a const Structure is safe to share across threads.
class Structure {
 public:
  Structure() = default;
  explicit Structure(Vocabulary vocabulary);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const FpFunction& component(std::size_t index) const { return components_[index]; }
  const FpFunction& component(const std::string& name) const;

  Value token(const std::string& name) const;
  Value apply(const std::string& name, std::span<const Atom> args) const;

  bool insert(std::size_t index, Tuple key, Atom value);
  bool insert(const std::string& name, Tuple key, Atom value);
  bool erase(std::size_t index, std::span<const Atom> key);
  bool erase(const std::string& name, std::span<const Atom> key);
  void set_token(const std::string& name, Value value);

  std::size_t size() const;
  std::size_t size(const std::vector<std::string>& ids) const;

  // Domain, range and their union (the scope).
  std::set<Atom> domain() const;
  std::set<Atom> range() const;
  std::set<Atom> scope() const;

  void set_atom_name(Atom atom, std::string name) { names_[atom.id] = std::move(name); }
  const std::map<std::uint64_t, std::string>& atom_names() const { return names_; }

  // Raw equality by atom ids; isomorphism is the semantic equality.
  friend bool operator==(const Structure& a, const Structure& b) {
    return a.vocabulary_ == b.vocabulary_ && a.components_ == b.components_;
  }

 private:
  Vocabulary vocabulary_;
  std::vector<FpFunction> components_;
  std::map<std::uint64_t, std::string> names_;
};

Value eval_term(const Structure& s, const Term& t);

std::set<Atom> accessible_atoms(const Structure& s);
bool is_accessible(const Structure& s);
bool is_free(const Structure& s);

inline constexpr const char* kWholeTermToken = "top";
inline constexpr std::size_t kMaxAtomsForSearch = 10000;

// phi_q: one atom per distinct subterm, plus token `top` naming q itself.
// The vocabulary holds the ids occurring in q (declaration order of first
// occurrence) followed by `top`, unless `vocabulary` is given, in which case
// it is used (with `top` appended if missing).
Structure free_structure(const Term& q, const Vocabulary* vocabulary = nullptr);

Structure expand(const Structure& s, const Vocabulary& w);
Structure reduct(const Structure& s, const Vocabulary& w);
Structure reduct(const Structure& s, const std::vector<std::string>& names);
Structure merge(const Structure& a, const Structure& b);
// Renames ids; names absent from the map are kept.
Structure rename_ids(const Structure& s, const std::map<std::string, std::string>& renaming);
// Applies an atom bijection (ids not in the map are kept).
Structure rename_atoms(const Structure& s, const std::map<Atom, Atom>& mapping);

bool isomorphic(const Structure& a, const Structure& b);

// Largest atom id in the scope, or nullopt for an empty scope.
std::optional<std::uint64_t> max_atom_id(const Structure& s);

struct NumeralIds {
  std::string zero = "z";
  std::string succ = "s";
  std::string top = kWholeTermToken;
};

struct ChainIds {
  std::string head = "e";
  std::string next = "f";
};

Vocabulary numeral_vocabulary(const NumeralIds& ids = {});
Structure encode_numeral(std::size_t n, const NumeralIds& ids = {});
std::size_t decode_numeral(const Structure& s, const NumeralIds& ids = {});

// Chain listing `atoms` (which must be distinct); fresh ids are issued when
// `atoms` is empty-handed via encode_chain_of_length.
Structure encode_chain(const std::vector<Atom>& atoms, const ChainIds& ids = {});
Structure encode_chain_of_length(std::size_t n, const ChainIds& ids = {});
std::vector<Atom> decode_chain(const Structure& s, const ChainIds& ids = {});

// Binary string as the free structure of its term, e.g. "110" is f1 f1 f0 e.
struct StringIds {
  std::string end = "e";
  std::string zero = "f0";
  std::string one = "f1";
  std::string top = kWholeTermToken;
};
Structure encode_string(const std::string& bits, const StringIds& ids = {});
std::string decode_string(const Structure& s, const StringIds& ids = {});

}  // namespace fps
