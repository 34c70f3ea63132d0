#include "qif/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qif/errors.hpp"
#include "qif/numeric.hpp"

namespace qif::experiment {
namespace {

using C = si::PhysicalConstants;

constexpr double kSeparationToExtent = 100.0;
constexpr double kPotentialToKinetic = 5.0;
constexpr double kFringeToBeam = 10.0;
constexpr double kLinearizationError = 1e-3;
constexpr double kTransverseGrowth = 1e-3;

double coulomb_constant() { return C::q * C::q / (4.0 * std::numbers::pi * C::eps0); }

ValidityCheck check(std::string name, double ratio, double threshold, ValidityCheck::Bound bound) {
  const bool ok = bound == ValidityCheck::Bound::at_least ? ratio >= threshold : ratio <= threshold;
  return {std::move(name), ratio, threshold, bound, ok};
}

DerivedSetup derive_without_checks(const ExperimentInputs& in) {
  DerivedSetup s{};
  s.t_transit = in.length / in.speed;
  s.force = coulomb_constant() / (in.d * in.d);
  s.delta = s.force * s.t_transit;
  s.width_W = C::hbar / (2.0 * in.dx0_transverse);
  s.delta_over_W = s.delta / s.width_W;
  s.alpha = -coulomb_constant() * s.t_transit / (C::hbar * in.d);
  s.fringe_spacing = C::h / s.delta;
  s.spread_longitudinal = numeric::free_spread_width(in.dx0_longitudinal, s.t_transit, C::m_e);
  s.spread_transverse = numeric::free_spread_width(in.dx0_transverse, s.t_transit, C::m_e);
  s.spread_transverse_relative = s.spread_transverse / in.dx0_transverse - 1.0;
  s.kinetic_scale = std::pow(2.0 * s.width_W, 2) / (2.0 * C::m_e);
  s.potential_scale = coulomb_constant() * in.dx0_transverse / (in.d * in.d);
  return s;
}

std::vector<ValidityCheck> checks_for(const ExperimentInputs& in, const DerivedSetup& s) {
  using B = ValidityCheck::Bound;
  const double extent = std::max(s.spread_transverse, s.spread_longitudinal);
  return {
      check("separation_over_packet_extent", in.d / extent, kSeparationToExtent, B::at_least),
      check("potential_over_kinetic", s.potential_scale / s.kinetic_scale, kPotentialToKinetic,
            B::at_least),
      check("fringe_spacing_over_beam_diameter", s.fringe_spacing / in.dx0_transverse,
            kFringeToBeam, B::at_least),
      check("coulomb_linearization_error", std::pow(extent / in.d, 2), kLinearizationError,
            B::at_most),
      check("transverse_spread_growth", s.spread_transverse_relative, kTransverseGrowth,
            B::at_most),
  };
}

}  // namespace

void ExperimentInputs::validate() const {
  for (const double v : {d, length, speed, dx0_transverse, dx0_longitudinal}) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidArgument("experiment inputs must be finite and strictly positive");
    }
  }
}

ExperimentInputs reference_inputs() { return {2e-3, 4e-2, 2e6, 10e-6, 200e-9}; }

bool DerivedSetup::all_valid() const {
  return std::all_of(validity.begin(), validity.end(), [](const ValidityCheck& c) { return c.passed; });
}

DerivedSetup derive_setup(const ExperimentInputs& inputs) {
  inputs.validate();
  DerivedSetup s = derive_without_checks(inputs);
  s.validity = checks_for(inputs, s);
  return s;
}

std::vector<ValidityCheck> validity_report(const ExperimentInputs& inputs) {
  inputs.validate();
  return checks_for(inputs, derive_without_checks(inputs));
}

double separation_for_alpha(const ExperimentInputs& inputs, double abs_alpha) {
  inputs.validate();
  if (!(std::isfinite(abs_alpha) && abs_alpha > 0.0)) {
    throw InvalidArgument("separation_for_alpha: target |alpha| must be > 0");
  }
  const double t = inputs.length / inputs.speed;
  return coulomb_constant() * t / (C::hbar * abs_alpha);
}

TuneResult tune_separation_for_alpha(const ExperimentInputs& inputs,
                                     std::optional<int> target_multiple) {
  inputs.validate();
  int multiple = 0;
  if (target_multiple) {
    if (*target_multiple <= 0) {
      throw InvalidArgument("tune_separation_for_alpha: multiple of 2 pi must be positive");
    }
    multiple = *target_multiple;
  } else {
    const double current = std::abs(derive_without_checks(inputs).alpha);
    multiple = std::max(1, static_cast<int>(std::lround(current / (2.0 * std::numbers::pi))));
  }
  ExperimentInputs tuned = inputs;
  tuned.d = separation_for_alpha(inputs, 2.0 * std::numbers::pi * multiple);
  DerivedSetup setup = derive_setup(tuned);
  return {multiple, tuned.d, setup.alpha, std::move(setup)};
}

InterferometerParams to_model(const DerivedSetup& setup, double r, double phi, AlphaPolicy policy) {
  const double alpha = policy == AlphaPolicy::physical ? setup.alpha : 0.0;
  return InterferometerParams(r, phi, alpha, setup.delta_over_W, 1.0);
}

}  // namespace qif::experiment
