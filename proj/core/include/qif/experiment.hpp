#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qif/constants.hpp"
#include "qif/types.hpp"

namespace qif::experiment {

/// Laboratory inputs, all SI and strictly positive.
struct ExperimentInputs {
  double d;                 // arm separation, m
  double length;            // interferometer length, m
  double speed;             // longitudinal speed, m/s
  double dx0_transverse;    // transverse beam waist, m
  double dx0_longitudinal;  // initial longitudinal width, m

  void validate() const;
};

/// The reference laboratory configuration: 2 mm separation, 4 cm arms,
/// 2e6 m/s electrons, 10 um waist, 200 nm longitudinal width.
ExperimentInputs reference_inputs();

struct ValidityCheck {
  enum class Bound { at_least, at_most };

  std::string name;
  double ratio;
  double threshold;
  Bound bound;
  bool passed;
};

struct DerivedSetup {
  double t_transit;                   // s
  double force;                       // N
  double delta;                       // kg m/s
  double width_W;                     // kg m/s, hbar / (2 dx0_transverse)
  double delta_over_W;
  double alpha;                       // rad, signed (negative)
  double fringe_spacing;              // m, h / delta
  double spread_longitudinal;         // m, longitudinal width at the exit
  double spread_transverse;           // m, transverse width at the exit
  double spread_transverse_relative;  // fractional transverse growth
  double kinetic_scale;               // J, (2W)^2 / (2 m)
  double potential_scale;             // J, q^2 dx0 / (4 pi eps0 d^2)
  std::vector<ValidityCheck> validity;

  bool all_valid() const;
};

DerivedSetup derive_setup(const ExperimentInputs& inputs);

/// Named ratio checks; failures are reported, never thrown.
std::vector<ValidityCheck> validity_report(const ExperimentInputs& inputs);

/// Separation at which |alpha| equals `abs_alpha`. |alpha| = q^2 L / (4 pi eps0 hbar v d)
/// is independent of everything but d at fixed L and v, so this inverts exactly.
double separation_for_alpha(const ExperimentInputs& inputs, double abs_alpha);

struct TuneResult {
  int multiple;  // |alpha_new| = 2 pi * multiple
  double d;
  double alpha;
  DerivedSetup setup;
};

/// Moves d so that |alpha| becomes an integer multiple of 2 pi: the
/// requested multiple, or the nearest one to the current |alpha| / 2 pi
/// when `target_multiple` is empty. Throws InvalidArgument for a
/// requested multiple <= 0.
TuneResult tune_separation_for_alpha(const ExperimentInputs& inputs,
                                     std::optional<int> target_multiple = std::nullopt);

enum class AlphaPolicy {
  physical,      // keep the laboratory alpha
  unit_phasor,   // alpha -> 0, i.e. e^{i alpha} = 1
};

/// Dimensionless engine parameters (W = 1) for a laboratory setup. In the
/// laboratory delta and alpha are both fixed by d and t; the engines treat
/// them as independent knobs.
InterferometerParams to_model(const DerivedSetup& setup, double r, double phi,
                              AlphaPolicy policy = AlphaPolicy::physical);

}  // namespace qif::experiment
