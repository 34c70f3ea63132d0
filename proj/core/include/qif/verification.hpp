#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qif::cli {

struct SuiteResult {
  std::string name;
  int cases;
  double max_deviation;
  double tolerance;
  bool passed;
};

struct VerifyOptions {
  std::uint64_t seed = 20180326;
  int oracle_draws = 100;   // random draws for the grid oracles
  int algebra_draws = 1000; // random draws for the closed-form identities
};

/// Runs every oracle-versus-closed-form suite with deterministic draws.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

}  // namespace qif::cli
