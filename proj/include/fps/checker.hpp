#pragma once

// Static well-formedness checks for program units.

#include <optional>
#include <string>
#include <vector>

#include "fps/syntax.hpp"

namespace fps {

struct CheckError {
  Pos pos;
  std::string code;
  std::string message;
};

struct LoopInfo {
  Pos pos;
  std::vector<std::string> variant;
  std::optional<unsigned> rank;      // STR only
  std::vector<unsigned> monitored;   // declared ranks >= rank, ascending
};

struct CheckReport {
  std::vector<CheckError> errors;
  std::vector<LoopInfo> loops;  // pre-order

  bool accepted() const { return errors.empty(); }
  // One line per error: FILE:LINE:COL CODE MESSAGE
  std::string format(const std::string& file) const;
};

CheckReport check(const SourceUnit& unit);

// Largest rank in the vocabulary; throws Error for non-STR units.
unsigned max_rank(const SourceUnit& unit);

}  // namespace fps
