#pragma once

// Big-step interpreter for ST, STV and STR units with pass accounting,
// resource metrics and a line-oriented trace.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fps/syntax.hpp"

namespace fps {

class RuntimeError : public Error {
 public:
  using Error::Error;
};

class FuelExhausted : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

enum class TraceLevel { None, Loops, Full };

struct ExecConfig {
  std::optional<std::uint64_t> fuel;  // maximum total steps
  std::uint64_t seed = 0;             // allocator offset/stride
  TraceLevel trace = TraceLevel::None;
};

// Monotone fresh-atom source. Every atom it issues is above `floor`, so it
// is never in the scope of a structure whose atoms are all below the floor
// or were issued earlier by the same allocator.
class Allocator {
 public:
  explicit Allocator(std::uint64_t floor = 0, std::uint64_t seed = 0);
  Atom fresh();
  std::uint64_t issued() const { return issued_; }

 private:
  std::uint64_t next_;
  std::uint64_t stride_;
  std::uint64_t issued_ = 0;
};

struct Activity {
  bool active = false;
  bool added = false;  // extension or inception that added an entry
};

std::pair<Structure, Activity> apply_update(const Structure& s, const Update& u, Allocator& alloc);
bool eval_guard(const Structure& s, const Guard& g);

enum class ExitReason { GuardFalse, VariantNotShrunk, VariantDepleted, RankGrew };
std::string to_string(ExitReason r);

struct LoopRun {
  std::size_t loop = 0;  // pre-order index of the Do node
  Pos pos;
  std::optional<unsigned> rank;
  std::size_t entry_variant_size = 0;
  std::size_t entry_rank_size = 0;      // |sigma|_r at entry (STR only)
  std::size_t passes = 0;               // body executions
  std::size_t shrinking_passes = 0;     // passes after which the loop re-entered
  std::size_t variant_extensions = 0;   // active extensions of variant ids
  ExitReason reason = ExitReason::GuardFalse;
  unsigned grew_rank = 0;               // meaningful for RankGrew

  friend bool operator==(const LoopRun&, const LoopRun&) = default;
};

struct Metrics {
  std::uint64_t steps = 0;
  std::size_t max_size = 0;                   // high-water of the unit's ids
  std::map<unsigned, std::size_t> high_water;  // per rank (STR only)
  std::vector<LoopRun> loops;                 // in completion order

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// One line of machine-readable metrics.
std::string format_metrics(const Metrics& m);

struct LedgerEntry {
  std::string id;
  std::size_t extensions = 0;
  std::size_t contractions = 0;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

struct TraceEvent {
  enum class Kind { Update, Skip, Guard, Enter, Pass, Exit };
  Kind kind = Kind::Update;
  Pos pos;
  std::size_t size = 0;  // size of the unit's ids after the event
  std::string detail;
  std::vector<LedgerEntry> ledger;  // Pass events: ids touched during the pass
  long loop = -1;                   // Enter, Pass and Exit events
};

// `kind line:col size=N detail`
std::string format_trace_event(const TraceEvent& e);

struct RunResult {
  Structure output;
  Metrics metrics;
  std::vector<TraceEvent> trace;
};

// Runs `unit` on the trivial expansion of `input`. Ids of `input` that the
// unit does not declare are carried along unranked.
RunResult run(const SourceUnit& unit, const Structure& input, const ExecConfig& cfg = {});

// run, then the reduct to `out`.
Structure run_transducer(const SourceUnit& unit, const Structure& input, const Vocabulary& out,
                         const ExecConfig& cfg = {});

// |sigma|_j for the ranked ids of `unit`, keyed by rank.
std::map<unsigned, std::size_t> rank_sizes(const SourceUnit& unit, const Structure& s);

}  // namespace fps
