#include "fps/interpreter.hpp"

#include <limits>
#include <sstream>

namespace fps {

Allocator::Allocator(std::uint64_t floor, std::uint64_t seed)
    : next_(floor + (seed * 7919) % 1000), stride_(1 + seed % 3) {}

Atom Allocator::fresh() {
  if (next_ > std::numeric_limits<std::uint64_t>::max() - stride_) throw RuntimeError("allocator exhausted");
  Atom a{next_};
  next_ += stride_;
  ++issued_;
  return a;
}

std::string to_string(ExitReason r) {
  switch (r) {
    case ExitReason::GuardFalse: return "guard-false";
    case ExitReason::VariantNotShrunk: return "variant-not-shrunk";
    case ExitReason::VariantDepleted: return "variant-depleted";
    case ExitReason::RankGrew: return "rank-grew";
  }
  return "?";
}

namespace {

struct CTerm {
  int fn = -1;  // -1 is omega
  std::vector<CTerm> args;
};

struct CGuard {
  Guard::Kind kind = Guard::Kind::True;
  CTerm lhs, rhs;
  std::vector<CGuard> kids;
};

struct CUpdate {
  Update::Kind kind = Update::Kind::Extension;
  int fn = 0;
  std::vector<CTerm> args;
  CTerm value;
};

struct CProg {
  Program::Kind kind = Program::Kind::Seq;
  Pos pos;
  CUpdate update;
  std::vector<CProg> kids;
  CGuard guard;
  std::vector<int> variant;
  std::size_t loop = 0;
  std::optional<unsigned> rank;
  std::vector<unsigned> monitored;
};

class Compiler {
 public:
  Compiler(const Vocabulary& v, Dialect d) : v_(v), dialect_(d) {
    for (const auto& f : v.ids())
      if (f.rank) ranks_.insert(*f.rank);
  }

  int id(const std::string& name, std::size_t arity) const {
    auto i = v_.index_of(name);
    if (!i) throw VocabularyError("undeclared identifier '" + name + "'");
    if (v_[*i].arity != arity) throw VocabularyError("arity mismatch for '" + name + "'");
    return static_cast<int>(*i);
  }

  CTerm term(const Term& t) const {
    CTerm c;
    if (t.is_omega()) return c;
    c.fn = id(t.head, t.args.size());
    for (const auto& a : t.args) c.args.push_back(term(a));
    return c;
  }

  CGuard guard(const Guard& g) const {
    CGuard c;
    c.kind = g.kind;
    c.lhs = term(g.lhs);
    c.rhs = term(g.rhs);
    for (const auto& k : g.kids) c.kids.push_back(guard(k));
    return c;
  }

  CUpdate update(const Update& u) const {
    CUpdate c;
    c.kind = u.kind;
    c.fn = id(u.head, u.kind == Update::Kind::Inception ? 0 : u.args.size());
    for (const auto& a : u.args) c.args.push_back(term(a));
    if (u.kind == Update::Kind::Extension) c.value = term(u.value);
    return c;
  }

  CProg program(const Program& p) {
    CProg c;
    c.kind = p.kind;
    c.pos = p.kind == Program::Kind::Update && p.update.pos.line ? p.update.pos : p.pos;
    switch (p.kind) {
      case Program::Kind::Update: c.update = update(p.update); break;
      case Program::Kind::Seq:
        for (const auto& k : p.kids) c.kids.push_back(program(k));
        break;
      case Program::Kind::If:
        c.guard = guard(p.guard);
        c.kids.push_back(program(p.then_branch()));
        c.kids.push_back(program(p.else_branch()));
        break;
      case Program::Kind::Do: {
        c.guard = guard(p.guard);
        c.loop = loops_++;
        for (const auto& n : p.variant) c.variant.push_back(id(n, v_.at(n).arity));
        if (dialect_ == Dialect::STR && !c.variant.empty()) {
          c.rank = v_[c.variant.front()].rank;
          for (unsigned r : ranks_)
            if (c.rank && r >= *c.rank) c.monitored.push_back(r);
        }
        c.kids.push_back(program(p.body()));
        break;
      }
    }
    return c;
  }

 private:
  const Vocabulary& v_;
  Dialect dialect_;
  std::set<unsigned> ranks_;
  std::size_t loops_ = 0;
};

class Machine {
 public:
  Machine(Structure s, Dialect dialect, std::size_t unit_ids, const ExecConfig& cfg, Allocator alloc)
      : s_(std::move(s)), dialect_(dialect), unit_ids_(unit_ids), cfg_(cfg), alloc_(alloc) {
    const auto& v = s_.vocabulary();
    ext_.assign(v.size(), 0);
    con_.assign(v.size(), 0);
    rank_of_.assign(v.size(), -1);
    unsigned top = 0;
    for (std::size_t i = 0; i < unit_ids_; ++i)
      if (dialect_ == Dialect::STR && v[i].rank) {
        rank_of_[i] = static_cast<int>(*v[i].rank);
        top = std::max(top, *v[i].rank);
      }
    if (dialect_ == Dialect::STR) rank_size_.assign(top + 1, 0);
    for (std::size_t i = 0; i < unit_ids_; ++i) {
      size_ += s_.component(i).size();
      if (rank_of_[i] >= 0) rank_size_[rank_of_[i]] += s_.component(i).size();
    }
    observe();
  }

  Value eval(const CTerm& t) const {
    if (t.fn < 0) return std::nullopt;
    Tuple args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) {
      Value x = eval(a);
      if (!x) return std::nullopt;
      args.push_back(*x);
    }
    return s_.component(static_cast<std::size_t>(t.fn)).apply(args);
  }

  bool holds(const CGuard& g) const {
    switch (g.kind) {
      case Guard::Kind::True: return true;
      case Guard::Kind::False: return false;
      case Guard::Kind::Eq: return eval(g.lhs) == eval(g.rhs);
      case Guard::Kind::Neq: return eval(g.lhs) != eval(g.rhs);
      case Guard::Kind::Def: return eval(g.lhs).has_value();
      case Guard::Kind::Not: return !holds(g.kids[0]);
      case Guard::Kind::And: return holds(g.kids[0]) && holds(g.kids[1]);
      case Guard::Kind::Or: return holds(g.kids[0]) || holds(g.kids[1]);
    }
    return false;
  }

  Activity apply(const CUpdate& u) {
    Activity act;
    auto fn = static_cast<std::size_t>(u.fn);
    if (u.kind == Update::Kind::Inception) {
      if (s_.component(fn).apply({})) return act;
      s_.insert(fn, {}, alloc_.fresh());
      act = {true, true};
    } else {
      Tuple key;
      for (const auto& a : u.args) {
        Value x = eval(a);
        if (!x) return act;
        key.push_back(*x);
      }
      if (u.kind == Update::Kind::Contraction) {
        if (!s_.erase(fn, key)) return act;
        act = {true, false};
      } else {
        Value x = eval(u.value);
        if (!x) return act;
        if (!s_.insert(fn, std::move(key), *x)) return act;
        act = {true, true};
      }
    }
    (act.added ? ext_ : con_)[fn]++;
    if (fn < unit_ids_) {
      long d = act.added ? 1 : -1;
      size_ += d;
      if (rank_of_[fn] >= 0) rank_size_[rank_of_[fn]] += d;
      if (act.added) observe();
    }
    return act;
  }

  void exec(const CProg& p) {
    switch (p.kind) {
      case Program::Kind::Update: {
        tick();
        Activity a = apply(p.update);
        if (cfg_.trace == TraceLevel::Full)
          event(a.active ? TraceEvent::Kind::Update : TraceEvent::Kind::Skip, p.pos,
                s_.vocabulary()[p.update.fn].name);
        return;
      }
      case Program::Kind::Seq:
        for (const auto& k : p.kids) exec(k);
        return;
      case Program::Kind::If:
        exec(p.kids[guard(p) ? 0 : 1]);
        return;
      case Program::Kind::Do:
        if (dialect_ == Dialect::ST)
          while_loop(p);
        else
          ranked_loop(p);
        return;
    }
  }

  Structure take() { return std::move(s_); }
  Metrics metrics;
  std::vector<TraceEvent> trace;

 private:
  void observe() {
    metrics.max_size = std::max(metrics.max_size, size_);
    for (std::size_t j = 0; j < rank_size_.size(); ++j) {
      auto& hw = metrics.high_water[static_cast<unsigned>(j)];
      hw = std::max(hw, rank_size_[j]);
    }
  }

  void tick() {
    ++metrics.steps;
    if (cfg_.fuel && metrics.steps > *cfg_.fuel)
      throw FuelExhausted("fuel exhausted after " + std::to_string(*cfg_.fuel) + " steps");
  }

  bool guard(const CProg& p) {
    tick();
    bool g = holds(p.guard);
    if (cfg_.trace == TraceLevel::Full) event(TraceEvent::Kind::Guard, p.pos, g ? "true" : "false");
    return g;
  }

  void event(TraceEvent::Kind k, Pos pos, std::string detail, std::vector<LedgerEntry> ledger = {}, long loop = -1) {
    trace.push_back({k, pos, size_, std::move(detail), std::move(ledger), loop});
  }

  std::size_t variant_size(const CProg& p) const {
    std::size_t n = 0;
    for (int f : p.variant) n += s_.component(static_cast<std::size_t>(f)).size();
    return n;
  }

  std::size_t variant_ext(const CProg& p) const {
    std::size_t n = 0;
    for (int f : p.variant) n += ext_[static_cast<std::size_t>(f)];
    return n;
  }

  std::string loop_label(const CProg& p) const {
    std::string s = "loop=" + std::to_string(p.loop);
    if (p.rank) s += " rank=" + std::to_string(*p.rank);
    return s;
  }

  void finish(const CProg& p, LoopRun run) {
    if (cfg_.trace != TraceLevel::None) {
      std::string d = loop_label(p) + " passes=" + std::to_string(run.passes) + " reason=" + to_string(run.reason);
      if (run.reason == ExitReason::RankGrew) d += "(" + std::to_string(run.grew_rank) + ")";
      event(TraceEvent::Kind::Exit, p.pos, d, {}, static_cast<long>(p.loop));
    }
    metrics.loops.push_back(run);
  }

  void while_loop(const CProg& p) {
    LoopRun run;
    run.loop = p.loop;
    run.pos = p.pos;
    if (cfg_.trace != TraceLevel::None) event(TraceEvent::Kind::Enter, p.pos, loop_label(p), {}, static_cast<long>(p.loop));
    while (guard(p)) {
      exec(p.kids[0]);
      ++run.passes;
      ++run.shrinking_passes;
    }
    if (run.shrinking_passes) --run.shrinking_passes;
    finish(p, run);
  }

  void ranked_loop(const CProg& p) {
    LoopRun run;
    run.loop = p.loop;
    run.pos = p.pos;
    run.rank = p.rank;
    run.entry_variant_size = variant_size(p);
    if (p.rank) run.entry_rank_size = rank_size_[*p.rank];
    if (cfg_.trace != TraceLevel::None)
      event(TraceEvent::Kind::Enter, p.pos,
            loop_label(p) + " variant=" + std::to_string(run.entry_variant_size), {}, static_cast<long>(p.loop));
    if (!guard(p)) {
      finish(p, run);
      return;
    }
    std::size_t ext0 = variant_ext(p);
    bool ledger = cfg_.trace != TraceLevel::None;
    while (true) {
      std::size_t t0 = variant_size(p);
      std::vector<std::size_t> r0 = rank_size_;
      std::vector<std::size_t> e0, c0, z0;
      if (ledger) {
        e0 = ext_;
        c0 = con_;
        for (std::size_t i = 0; i < ext_.size(); ++i) z0.push_back(s_.component(i).size());
      }
      exec(p.kids[0]);
      ++run.passes;
      if (ledger) {
        std::vector<LedgerEntry> entries;
        for (std::size_t i = 0; i < ext_.size(); ++i)
          if (ext_[i] != e0[i] || con_[i] != c0[i])
            entries.push_back({s_.vocabulary()[i].name, ext_[i] - e0[i], con_[i] - c0[i], z0[i], s_.component(i).size()});
        event(TraceEvent::Kind::Pass, p.pos,
              loop_label(p) + " pass=" + std::to_string(run.passes) + " variant=" + std::to_string(variant_size(p)),
              std::move(entries), static_cast<long>(p.loop));
      }
      bool g = guard(p);
      std::size_t t1 = variant_size(p);
      if (!g) {
        run.reason = ExitReason::GuardFalse;
        break;
      }
      if (t1 >= t0) {
        run.reason = t1 == 0 ? ExitReason::VariantDepleted : ExitReason::VariantNotShrunk;
        break;
      }
      bool grew = false;
      for (unsigned j : p.monitored)
        if (rank_size_[j] > r0[j]) {
          run.reason = ExitReason::RankGrew;
          run.grew_rank = j;
          grew = true;
          break;
        }
      if (grew) break;
      ++run.shrinking_passes;
    }
    run.variant_extensions = variant_ext(p) - ext0;
    finish(p, run);
  }

  Structure s_;
  Dialect dialect_;
  std::size_t unit_ids_;
  ExecConfig cfg_;
  Allocator alloc_;
  std::vector<std::size_t> ext_, con_;
  std::vector<int> rank_of_;
  std::vector<std::size_t> rank_size_;
  std::size_t size_ = 0;
};

// Unit vocabulary followed by the input's undeclared ids, with the input's
// entries copied in.
Structure working_structure(const Vocabulary& unit, const Structure& input) {
  Vocabulary w = unit;
  for (const auto& f : input.vocabulary().ids()) {
    if (auto i = w.index_of(f.name)) {
      if (w[*i].arity != f.arity) throw VocabularyError("input id '" + f.name + "' has a different arity");
    } else {
      w.add({f.name, f.arity, std::nullopt});
    }
  }
  Structure s(w);
  const auto& iv = input.vocabulary();
  for (std::size_t c = 0; c < iv.size(); ++c) {
    std::size_t target = *w.index_of(iv[c].name);
    for (const auto& [k, v] : input.component(c).entries()) s.insert(target, k, v);
  }
  for (const auto& [id, name] : input.atom_names()) s.set_atom_name(Atom{id}, name);
  return s;
}

std::uint64_t allocation_floor(const Structure& s) {
  auto m = max_atom_id(s);
  return m ? *m + 1 : 0;
}

}  // namespace

std::pair<Structure, Activity> apply_update(const Structure& s, const Update& u, Allocator& alloc) {
  Compiler c(s.vocabulary(), Dialect::ST);
  CUpdate cu = c.update(u);
  Machine m(s, Dialect::ST, s.vocabulary().size(), {}, alloc);
  Activity a = m.apply(cu);
  if (u.kind == Update::Kind::Inception && a.active) alloc.fresh();
  return {m.take(), a};
}

bool eval_guard(const Structure& s, const Guard& g) {
  Compiler c(s.vocabulary(), Dialect::ST);
  CGuard cg = c.guard(g);
  Machine m(s, Dialect::ST, s.vocabulary().size(), {}, Allocator{});
  return m.holds(cg);
}

RunResult run(const SourceUnit& unit, const Structure& input, const ExecConfig& cfg) {
  if (cfg.fuel && *cfg.fuel == 0) throw Error("fuel must be at least 1");
  Structure w = working_structure(unit.vocabulary, input);
  Compiler compiler(w.vocabulary(), unit.dialect);
  CProg prog = compiler.program(unit.program);
  Allocator alloc(allocation_floor(w), cfg.seed);
  Machine m(std::move(w), unit.dialect, unit.vocabulary.size(), cfg, alloc);
  m.exec(prog);
  RunResult r;
  r.metrics = std::move(m.metrics);
  r.trace = std::move(m.trace);
  r.output = m.take();
  return r;
}

Structure run_transducer(const SourceUnit& unit, const Structure& input, const Vocabulary& out,
                         const ExecConfig& cfg) {
  return reduct(run(unit, input, cfg).output, out);
}

std::map<unsigned, std::size_t> rank_sizes(const SourceUnit& unit, const Structure& s) {
  std::map<unsigned, std::size_t> out;
  for (const auto& f : unit.vocabulary.ids()) {
    if (!f.rank) continue;
    auto& n = out[*f.rank];
    if (s.vocabulary().contains(f.name)) n += s.component(f.name).size();
  }
  return out;
}

std::string format_metrics(const Metrics& m) {
  std::ostringstream os;
  os << "steps=" << m.steps << " max_size=" << m.max_size << " high_water=[";
  bool first = true;
  for (const auto& [j, n] : m.high_water) {
    os << (first ? "" : ",") << j << ':' << n;
    first = false;
  }
  os << "] loops=[";
  for (std::size_t i = 0; i < m.loops.size(); ++i) {
    const auto& l = m.loops[i];
    os << (i ? "," : "") << l.loop << ':' << l.passes << ':' << to_string(l.reason);
    if (l.reason == ExitReason::RankGrew) os << '(' << l.grew_rank << ')';
  }
  os << ']';
  return os.str();
}

std::string format_trace_event(const TraceEvent& e) {
  static const char* names[] = {"update", "skip", "guard", "enter", "pass", "exit"};
  std::ostringstream os;
  os << names[static_cast<int>(e.kind)] << ' ' << e.pos.line << ':' << e.pos.col << " size=" << e.size;
  if (!e.detail.empty()) os << ' ' << e.detail;
  for (const auto& l : e.ledger)
    os << ' ' << l.id << "[+" << l.extensions << ",-" << l.contractions << ',' << l.size_before << "->"
       << l.size_after << ']';
  return os.str();
}

}  // namespace fps
