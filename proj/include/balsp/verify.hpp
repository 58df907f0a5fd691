#pragma once

#include <cstdint>
#include <vector>

#include "balsp/oracles.hpp"

namespace balsp {

enum class VerifyLevel { off, sampled, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::sampled;
  uint64_t seed = 1;
};

// Runs every module's invariant suite at the requested level and returns
// one report per property; failed reports carry a witness.
std::vector<OracleReport> run_verification(const VerifyOptions& opt);

}  // namespace balsp
