#pragma once

#include <optional>

#include <Eigen/Core>

#include "qif/types.hpp"

namespace qif::analytic {

enum class Normalization { raw, normalized };

/// <Phi|Phi shifted by delta> for equal-width Gaussians: exp(-delta^2 / (4 W^2)).
double overlap(double delta, double width);

/// Norm of the unnormalized post-selected marginal,
/// 1 + cos^2(phi) + 2 cos(phi) cos(alpha) I^2. Identical for both electrons.
double postselection_norm(const InterferometerParams& params);

/// Momentum density of one electron after post-selecting e1 at D and e2 at C:
///
///   Phi^2(p) + cos^2(phi) Phi^2(p -/+ delta) + 2 I cos(phi) cos(alpha) Phi(p) Phi(p -/+ delta)
///
/// with the kicked packet centred at -delta for electron 1 and +delta for
/// electron 2. Normalized mode throws ZeroProbability on a dark port.
double marginal_density(const InterferometerParams& params, Electron electron, double p,
                        Normalization mode = Normalization::raw);

/// Split of electron 1's raw density into the branch populations and
/// the interference cross term; `populations + interference` is the density.
struct TermDecomposition {
  double populations;   // Phi^2(p) + cos^2(phi) Phi^2(p + delta), never negative
  double interference;  // 2 I cos(phi) cos(alpha) Phi(p) Phi(p + delta)
};

TermDecomposition term_decomposition(const InterferometerParams& params, double p);

/// Post-selected mean momentum, derived consistently from the marginal
/// density (two-particle overlap I^2 in numerator and denominator).
double mean_postselected(const InterferometerParams& params, Electron electron = Electron::first);

/// The same closed form with the single-particle overlap I in place of I^2,
/// evaluated at cos(alpha) = 1. Kept as a separate observable so the
/// difference from mean_postselected can be reported.
double mean_single_overlap(const InterferometerParams& params);

/// Coefficients of the two momentum branches on one exit-port pair:
/// `free` multiplies |Phi1>|Phi2>, `interacting` multiplies |Phi1->|Phi2+>.
struct BranchAmplitudes {
  Complex free;
  Complex interacting;
};

/// Final two-electron state after the second beam splitter, resolved per
/// exit-port pair. The overall prefactor of every branch is retained so the
/// port probabilities sum to one.
PortMap<BranchAmplitudes> all_port_amplitudes(const InterferometerParams& params);

/// Gram norm |a|^2 + |b|^2 + 2 Re(conj(a) b) I^2 of each exit-port branch.
PortMap<double> port_probabilities(const InterferometerParams& params);

/// Conditional mean momentum of `electron` for each exit-port pair;
/// std::nullopt where the port is dark.
PortMap<std::optional<double>> port_mean_momenta(const InterferometerParams& params,
                                                 Electron electron = Electron::first);

struct EhrenfestPair {
  double closed_form;   // -/+ 2 t^2 r^2 delta
  double weighted_sum;  // sum over ports of P_jk <p>_jk
};

/// Unconditioned mean momentum two ways: the classical repulsive kick
/// times the interaction probability, and the probability-weighted sum of
/// the per-port conditional means.
EhrenfestPair ehrenfest_check(const InterferometerParams& params,
                              Electron electron = Electron::first);

/// Reduced state of one electron in the non-orthogonal basis
/// {|Phi>, |Phi kicked>}: rho = sum_ij coeff(i,j) |e_i><e_j|, with Gram
/// matrix gram(i,j) = <e_i|e_j>. Traces and purity use the Gram algebra
/// tr(rho) = tr(C G), tr(rho^2) = tr(C G C G).
class ReducedState {
 public:
  ReducedState(const InterferometerParams& params, Electron electron);

  const Eigen::Matrix2cd& coeff() const noexcept { return coeff_; }
  const Eigen::Matrix2d& gram() const noexcept { return gram_; }
  Electron electron() const noexcept { return electron_; }

  /// Unnormalized trace; equals postselection_norm.
  double trace() const;
  /// coeff / trace.
  Eigen::Matrix2cd normalized_coeff() const;
  /// tr(rho^2) / tr(rho)^2, in (0, 1].
  double purity() const;
  /// <p|rho|p>, unnormalized unless requested.
  double density(double p, Normalization mode = Normalization::raw) const;

 private:
  GaussianPacket base_;
  GaussianPacket kicked_;
  Eigen::Matrix2cd coeff_;
  Eigen::Matrix2d gram_;
  Electron electron_;
};

/// Builds the reduced state; throws ZeroProbability when its trace is dark.
ReducedState reduced_state(const InterferometerParams& params, Electron electron);

}  // namespace qif::analytic
