#pragma once

// Multivariate polynomials with nonnegative big-integer coefficients over
// variables n_0, n_1, ...

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

namespace fps {

using BigInt = boost::multiprecision::cpp_int;

class PositivePoly {
 public:
  // Exponent vectors carry no trailing zeros, so the constant monomial is {}.
  using Monomial = std::vector<unsigned>;

  PositivePoly() = default;
  static PositivePoly constant(BigInt c);
  static PositivePoly var(unsigned j);

  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  unsigned degree_in(unsigned j) const;
  // One past the largest variable index that occurs.
  unsigned arity() const;

  PositivePoly& operator+=(const PositivePoly& o);
  friend PositivePoly operator+(PositivePoly a, const PositivePoly& b) { return a += b; }
  friend PositivePoly operator*(const PositivePoly& a, const PositivePoly& b);
  friend bool operator==(const PositivePoly&, const PositivePoly&) = default;

  // Simultaneous substitution; variables without a replacement are kept.
  PositivePoly subst(const std::map<unsigned, PositivePoly>& replacement) const;
  // Missing values count as 0.
  BigInt eval(const std::vector<BigInt>& values) const;
  BigInt eval(const std::vector<std::uint64_t>& values) const;

  // Canonical text: monomials by descending total degree, then descending
  // exponent vectors; e.g. "2*n0^2*n1 + n0 + 3". Zero prints as "0".
  std::string str() const;

 private:
  void add_term(Monomial m, const BigInt& c);
  std::map<Monomial, BigInt> terms_;
};

PositivePoly pow(const PositivePoly& p, unsigned k);

}  // namespace fps
