#pragma once

// Running one unit over many inputs.

#include <optional>
#include <string>
#include <vector>

#include "fps/interpreter.hpp"

namespace fps {

struct BatchOutcome {
  std::optional<RunResult> result;
  std::string error;  // what() of the exception when result is empty

  bool ok() const { return result.has_value(); }
};

// Reference implementation, one input after another.
std::vector<BatchOutcome> run_batch_serial(const SourceUnit& unit, const std::vector<Structure>& inputs,
                                           const ExecConfig& cfg = {});
// OpenMP version; threads <= 0 uses the runtime default. Outcomes are in
// input order and equal to the serial ones.
std::vector<BatchOutcome> run_batch(const SourceUnit& unit, const std::vector<Structure>& inputs,
                                    const ExecConfig& cfg = {}, int threads = 0);

}  // namespace fps
