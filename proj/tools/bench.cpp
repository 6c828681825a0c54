// Serial versus OpenMP batch runs over corpus units.
//
//   fps_bench [inputs-per-unit] [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "fps/batch.hpp"
#include "fps/corpus.hpp"

using namespace fps;

int main(int argc, char** argv) {
  int count = argc > 1 ? std::atoi(argv[1]) : 400;
  int threads = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
  std::mt19937_64 rng(7);
  std::printf("%-20s %8s %10s %10s %8s\n", "unit", "inputs", "serial_ms", "omp_ms", "speedup");
  for (const auto& e : str_corpus()) {
    std::vector<Structure> inputs;
    for (int i = 0; i < count; ++i) inputs.push_back(e.sample(rng));
    auto time = [&](auto&& f) {
      auto t0 = std::chrono::steady_clock::now();
      f();
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };
    std::vector<BatchOutcome> a, b;
    double ts = time([&] { a = run_batch_serial(e.unit, inputs); });
    double tp = time([&] { b = run_batch(e.unit, inputs, {}, threads); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].ok() == b[i].ok() && (!a[i].ok() || a[i].result->output == b[i].result->output);
    std::printf("%-20s %8d %10.1f %10.1f %8.2f%s\n", e.name.c_str(), count, ts, tp, ts / tp,
                same ? "" : "  MISMATCH");
  }
  return 0;
}
