#include "fps/batch.hpp"

#include <omp.h>

namespace fps {
namespace {

BatchOutcome run_one(const SourceUnit& unit, const Structure& input, const ExecConfig& cfg) {
  BatchOutcome out;
  try {
    out.result = run(unit, input, cfg);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<BatchOutcome> run_batch_serial(const SourceUnit& unit, const std::vector<Structure>& inputs,
                                           const ExecConfig& cfg) {
  std::vector<BatchOutcome> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) out.push_back(run_one(unit, in, cfg));
  return out;
}

std::vector<BatchOutcome> run_batch(const SourceUnit& unit, const std::vector<Structure>& inputs,
                                    const ExecConfig& cfg, int threads) {
  std::vector<BatchOutcome> out(inputs.size());
  const long n = static_cast<long>(inputs.size());
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) out[i] = run_one(unit, inputs[i], cfg);
  return out;
}

}  // namespace fps
