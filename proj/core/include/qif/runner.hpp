#pragma once

#include <string>
#include <vector>

#include "qif/config.hpp"
#include "qif/table.hpp"

namespace qif::cli {

struct RunResult {
  Table table;
  std::vector<std::string> summary;  // human-readable lines
  int exit_code = 0;                 // nonzero when a verification suite failed
};

/// Computes the table and summary for one configured mode. Dark-port
/// configurations propagate ZeroProbability; nothing is written to disk.
RunResult execute(const RunConfig& config);

}  // namespace qif::cli
