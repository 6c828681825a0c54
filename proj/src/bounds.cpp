#include "fps/bounds.hpp"

#include <sstream>

#include "fps/checker.hpp"

namespace fps {
namespace {

class Certifier {
 public:
  explicit Certifier(const SourceUnit& u) : u_(u), ranks_(u.vocabulary.max_rank() + 1) {}

  Certificate program(const Program& p) {
    switch (p.kind) {
      case Program::Kind::Update: return update(p.update);
      case Program::Kind::Seq: {
        Certificate c = empty();
        for (const auto& k : p.kids) c = seq(c, program(k));
        return c;
      }
      case Program::Kind::If: {
        Certificate a = program(p.then_branch());
        Certificate b = program(p.else_branch());
        Certificate c;
        c.time = PositivePoly::constant(1) + a.time + b.time;
        for (unsigned j = 0; j < ranks_; ++j) c.space.push_back(a.space[j] + b.space[j]);
        return c;
      }
      case Program::Kind::Do: return loop(p);
    }
    return empty();
  }

 private:
  Certificate empty() const { return {PositivePoly{}, std::vector<PositivePoly>(ranks_)}; }

  Certificate update(const Update& u) const {
    Certificate c = empty();
    c.time = PositivePoly::constant(1);
    if (u.kind != Update::Kind::Contraction) {
      const FunctionId& f = u_.vocabulary.at(u.head);
      c.space[*f.rank] = PositivePoly::constant(1);
    }
    return c;
  }

  // Sizes after `a` are bounded by n_k + a.space[k].
  Certificate seq(const Certificate& a, const Certificate& b) const {
    std::map<unsigned, PositivePoly> after;
    for (unsigned k = 0; k < ranks_; ++k) after[k] = PositivePoly::var(k) + a.space[k];
    Certificate c;
    c.time = a.time + b.time.subst(after);
    for (unsigned j = 0; j < ranks_; ++j) {
      std::map<unsigned, PositivePoly> above;
      for (unsigned k = j + 1; k < ranks_; ++k) above[k] = after[k];
      c.space.push_back(a.space[j] + b.space[j].subst(above));
    }
    return c;
  }

  Certificate loop(const Program& p) {
    Certificate q = program(p.body());
    unsigned r = *u_.vocabulary.at(p.variant.front()).rank;
    PositivePoly passes = PositivePoly::var(r) + PositivePoly::constant(1);
    Certificate c = empty();
    // B[k] bounds |V_k| at the start of every pass.
    std::vector<PositivePoly> bound(ranks_);
    for (unsigned k = ranks_; k-- > 0;) {
      if (k >= r) {
        c.space[k] = q.space[k];
        bound[k] = PositivePoly::var(k);
        continue;
      }
      std::map<unsigned, PositivePoly> above;
      for (unsigned i = k + 1; i < ranks_; ++i) above[i] = bound[i];
      c.space[k] = passes * q.space[k].subst(above);
      bound[k] = PositivePoly::var(k) + c.space[k];
    }
    std::map<unsigned, PositivePoly> all;
    for (unsigned k = 0; k < ranks_; ++k) all[k] = bound[k];
    c.time = PositivePoly::constant(1) + passes * (PositivePoly::constant(1) + q.time.subst(all));
    return c;
  }

  const SourceUnit& u_;
  unsigned ranks_;
};

}  // namespace

Certificate certify(const SourceUnit& unit) {
  if (unit.dialect != Dialect::STR) throw Error("bounds are only defined for STR units");
  CheckReport report = check(unit);
  if (!report.accepted()) throw Error("unit does not pass the checker: " + report.errors.front().message);
  return Certifier(unit).program(unit.program);
}

PositivePoly time_bound(const SourceUnit& unit) { return certify(unit).time; }

PositivePoly space_bound(const SourceUnit& unit, unsigned j) {
  Certificate c = certify(unit);
  if (j >= c.space.size()) throw Error("rank " + std::to_string(j) + " exceeds the unit's maximum rank");
  return c.space[j];
}

std::string format_certificate(const Certificate& c) {
  std::ostringstream os;
  os << "# " << kCostModel << "\n";
  os << "M = " << c.time.str() << "\n";
  for (std::size_t j = 0; j < c.space.size(); ++j) os << "Z" << j << " = " << c.space[j].str() << "\n";
  return os.str();
}

Verdict certify_run(const SourceUnit& unit, const Structure& input, const Metrics& metrics) {
  return certify_run(certify(unit), unit, input, metrics);
}

Verdict certify_run(const Certificate& cert, const SourceUnit& unit, const Structure& input, const Metrics& metrics) {
  auto sizes = rank_sizes(unit, input);
  std::vector<BigInt> n(cert.space.size());
  for (const auto& [j, s] : sizes)
    if (j < n.size()) n[j] = s;
  Verdict v;
  v.steps = metrics.steps;
  v.time_limit = cert.time.eval(n);
  v.time_slack = v.time_limit - v.steps;
  v.pass = v.time_slack >= 0;
  for (unsigned j = 0; j < cert.space.size(); ++j) {
    RankVerdict r;
    r.rank = j;
    auto it = metrics.high_water.find(j);
    r.high_water = it == metrics.high_water.end() ? 0 : it->second;
    r.limit = n[j] + cert.space[j].eval(n);
    r.slack = r.limit - r.high_water;
    if (r.slack < 0) v.pass = false;
    v.ranks.push_back(r);
  }
  return v;
}

std::string Verdict::str() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " steps=" << steps << " limit=" << time_limit << " slack=" << time_slack;
  for (const auto& r : ranks)
    os << " rank" << r.rank << "=" << r.high_water << "/" << r.limit << "(slack " << r.slack << ")";
  return os.str();
}

}  // namespace fps
