#include "fps/poly.hpp"

#include <algorithm>
#include <sstream>

namespace fps {
namespace {

void trim(PositivePoly::Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

unsigned total(const PositivePoly::Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

}  // namespace

PositivePoly PositivePoly::constant(BigInt c) {
  if (c < 0) throw std::invalid_argument("negative coefficient");
  PositivePoly p;
  p.add_term({}, c);
  return p;
}

PositivePoly PositivePoly::var(unsigned j) {
  PositivePoly p;
  Monomial m(j + 1, 0);
  m[j] = 1;
  p.add_term(std::move(m), 1);
  return p;
}

void PositivePoly::add_term(Monomial m, const BigInt& c) {
  if (c == 0) return;
  trim(m);
  terms_[std::move(m)] += c;
}

unsigned PositivePoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total(m));
  return d;
}

unsigned PositivePoly::degree_in(unsigned j) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    if (j < m.size()) d = std::max(d, m[j]);
  return d;
}

unsigned PositivePoly::arity() const {
  std::size_t a = 0;
  for (const auto& [m, c] : terms_) a = std::max(a, m.size());
  return static_cast<unsigned>(a);
}

PositivePoly& PositivePoly::operator+=(const PositivePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PositivePoly operator*(const PositivePoly& a, const PositivePoly& b) {
  PositivePoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      PositivePoly::Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out.add_term(std::move(m), ca * cb);
    }
  return out;
}

PositivePoly pow(const PositivePoly& p, unsigned k) {
  PositivePoly out = PositivePoly::constant(1);
  for (unsigned i = 0; i < k; ++i) out = out * p;
  return out;
}

PositivePoly PositivePoly::subst(const std::map<unsigned, PositivePoly>& replacement) const {
  PositivePoly out;
  for (const auto& [m, c] : terms_) {
    PositivePoly term = constant(c);
    Monomial kept(m.size(), 0);
    for (unsigned j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      auto it = replacement.find(j);
      if (it == replacement.end())
        kept[j] = m[j];
      else
        term = term * pow(it->second, m[j]);
    }
    PositivePoly rest;
    rest.add_term(std::move(kept), 1);
    out += term * rest;
  }
  return out;
}

BigInt PositivePoly::eval(const std::vector<BigInt>& values) const {
  BigInt sum = 0;
  for (const auto& [m, c] : terms_) {
    BigInt t = c;
    for (std::size_t j = 0; j < m.size() && t != 0; ++j) {
      BigInt x = j < values.size() ? values[j] : BigInt(0);
      for (unsigned e = 0; e < m[j]; ++e) t *= x;
    }
    sum += t;
  }
  return sum;
}

BigInt PositivePoly::eval(const std::vector<std::uint64_t>& values) const {
  std::vector<BigInt> v(values.begin(), values.end());
  return eval(v);
}

std::string PositivePoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, BigInt>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    unsigned da = total(a.first), db = total(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& [m, c] = sorted[i];
    if (i) os << " + ";
    bool wrote = false;
    if (c != 1 || m.empty()) {
      os << c;
      wrote = true;
    }
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      os << (wrote ? "*" : "") << 'n' << j;
      if (m[j] > 1) os << '^' << m[j];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace fps
