#pragma once

#include <stdexcept>
#include <string>

namespace qif {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-finite value, negative width, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested post-selection has zero probability, so conditional
/// quantities (normalized densities, means, reduced states) are undefined.
class ZeroProbability : public Error {
 public:
  ZeroProbability(const std::string& what, double probability)
      : Error(what), probability_(probability) {}
  double probability() const noexcept { return probability_; }

 private:
  double probability_;
};

/// A sampling grid cannot represent the requested function to the
/// required accuracy (truncated tails, aliasing, mismatched grids).
class GridError : public Error {
 public:
  using Error::Error;
};

/// Configuration document problem. `line` is 1-based; 0 means the value
/// came from the command line or the error is document-wide.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace qif
