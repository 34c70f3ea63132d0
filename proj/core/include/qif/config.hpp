#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qif/experiment.hpp"
#include "qif/types.hpp"

namespace qif::cli {

enum class Mode { distributions, decompose, sweep, ports, design, verify };
enum class Format { csv, json };

/// Which momentum densities the distributions mode emits.
enum class Branch {
  postselected,  // normalized post-selected marginals
  free,          // unkicked packets
  interacting,   // both electrons in the same arm (kicked packets)
};

struct SweepRange {
  double min;
  double max;
  int steps;

  double at(int i) const;
};

/// Tuning request for the design mode: nearest multiple of 2 pi, or a given one.
struct TuneRequest {
  std::optional<int> multiple;
};

struct RunConfig {
  Mode mode = Mode::verify;

  double delta_over_w = 0.0;
  double phi = 0.0;
  double alpha = 0.0;
  double r = 0.70710678118654752;
  Branch branch = Branch::postselected;

  double p_min_over_w = -4.0;
  double p_max_over_w = 4.0;
  int grid_points = 801;

  SweepRange delta_sweep{0.0, 3.0, 101};
  SweepRange phi_sweep{0.0, 6.283185307179586, 101};

  experiment::ExperimentInputs inputs{};
  TuneRequest tune{};

  std::uint64_t seed = 20180326;
  int oracle_draws = 100;
  int algebra_draws = 1000;

  std::optional<std::string> out;
  Format format = Format::csv;

  /// Engine parameters in units of W (width = 1).
  InterferometerParams model_params() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses a flat `key = value` document ('#' starts a comment), applies
/// command-line overrides on top, and validates the result. Unknown keys,
/// duplicates, malformed numbers, out-of-range values and missing required
/// keys raise ConfigError carrying the offending line (0 for overrides).
///
/// Angle keys accept a `pi` suffix: `0.75pi` is 0.75 * pi radians.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Number parser shared with the config reader; full-token match required.
double parse_real(std::string_view token, bool allow_pi_suffix);

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(Format format) noexcept;

}  // namespace qif::cli
