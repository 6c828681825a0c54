#pragma once

// Polynomial time and space certificates for STR units, and checking of
// measured runs against them.

#include <string>
#include <vector>

#include "fps/interpreter.hpp"
#include "fps/poly.hpp"
#include "fps/syntax.hpp"

namespace fps {

// Cost model the certificates are computed for.
inline constexpr const char* kCostModel = "cost-model v1: update=1 guard=1 seq=0 if=sum";

struct Certificate {
  PositivePoly time;               // over n_0..n_l
  std::vector<PositivePoly> space;  // space[j] over n_{j+1}..n_l
};

// Throws Error for units that are not STR.
Certificate certify(const SourceUnit& unit);
PositivePoly time_bound(const SourceUnit& unit);
PositivePoly space_bound(const SourceUnit& unit, unsigned j);

// Human-readable certificate, one polynomial per line.
std::string format_certificate(const Certificate& c);

struct RankVerdict {
  unsigned rank = 0;
  BigInt high_water;
  BigInt limit;  // |sigma|_j + Z_j
  BigInt slack;  // limit - high_water
};

struct Verdict {
  bool pass = false;
  BigInt steps;
  BigInt time_limit;
  BigInt time_slack;
  std::vector<RankVerdict> ranks;

  std::string str() const;
};

// `input` is the structure the run started from.
Verdict certify_run(const SourceUnit& unit, const Structure& input, const Metrics& metrics);
Verdict certify_run(const Certificate& cert, const SourceUnit& unit, const Structure& input, const Metrics& metrics);

}  // namespace fps
