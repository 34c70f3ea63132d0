#include "qif/analytic.hpp"

#include <cmath>

#include "qif/errors.hpp"
#include "qif/packet.hpp"

namespace qif::analytic {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_bright(double norm, const char* what) {
  if (!(norm > kDarkPortThreshold)) {
    throw ZeroProbability(std::string(what) +
                              ": post-selected outcome has zero probability (dark port)",
                          norm);
  }
}

// Packet of the co-propagating branch: shifted by -delta for electron 1, +delta for electron 2.
GaussianPacket kicked_packet(const InterferometerParams& params, Electron electron) {
  return shift_packet(params.packet(), kick_sign(electron) * params.delta());
}

}  // namespace

double overlap(double delta, double width) {
  if (!(std::isfinite(width) && width > 0.0)) {
    throw InvalidArgument("overlap: width must be finite and > 0");
  }
  if (!(std::isfinite(delta) && delta >= 0.0)) {
    throw InvalidArgument("overlap: delta must be finite and >= 0");
  }
  const double u = delta / width;
  return std::exp(-0.25 * u * u);
}

double postselection_norm(const InterferometerParams& params) {
  const double c = std::cos(params.phi());
  const double overlap_sq = std::pow(overlap(params.delta(), params.width()), 2);
  return 1.0 + c * c + 2.0 * c * std::cos(params.alpha()) * overlap_sq;
}

double marginal_density(const InterferometerParams& params, Electron electron, double p,
                        Normalization mode) {
  const double c = std::cos(params.phi());
  const double i_overlap = overlap(params.delta(), params.width());
  const double free = packet_eval(params.packet(), p);
  const double kicked = packet_eval(kicked_packet(params, electron), p);
  const double raw =
      free * free + c * c * kicked * kicked + 2.0 * i_overlap * c * std::cos(params.alpha()) * free * kicked;
  if (mode == Normalization::raw) return raw;
  const double norm = postselection_norm(params);
  require_bright(norm, "marginal_density");
  return raw / norm;
}

TermDecomposition term_decomposition(const InterferometerParams& params, double p) {
  const double c = std::cos(params.phi());
  const double i_overlap = overlap(params.delta(), params.width());
  const double free = packet_eval(params.packet(), p);
  const double kicked = packet_eval(kicked_packet(params, Electron::first), p);
  return {free * free + c * c * kicked * kicked,
          2.0 * i_overlap * c * std::cos(params.alpha()) * free * kicked};
}

double mean_postselected(const InterferometerParams& params, Electron electron) {
  const double c = std::cos(params.phi());
  const double overlap_sq = std::pow(overlap(params.delta(), params.width()), 2);
  const double norm = postselection_norm(params);
  require_bright(norm, "mean_postselected");
  const double numerator = c * c + c * std::cos(params.alpha()) * overlap_sq;
  return kick_sign(electron) * params.delta() * numerator / norm;
}

double mean_single_overlap(const InterferometerParams& params) {
  const double c = std::cos(params.phi());
  const double i_overlap = overlap(params.delta(), params.width());
  const double denominator = 1.0 + c * c + 2.0 * c * i_overlap;
  require_bright(denominator, "mean_single_overlap");
  return -params.delta() * (c * c + c * i_overlap) / denominator;
}

PortMap<BranchAmplitudes> all_port_amplitudes(const InterferometerParams& params) {
  const double r = params.r();
  const double t = params.t();
  const double r2 = r * r;
  const double t2 = t * t;
  const Complex e_alpha = std::polar(1.0, params.alpha());
  const Complex e_phi = std::polar(1.0, params.phi());
  const Complex e_minus_phi = std::conj(e_phi);
  const Complex irt = kI * r * t;
  const double cos_phi = std::cos(params.phi());

  PortMap<BranchAmplitudes> out;
  out[PortPair::CC] = {irt * (t2 - r2), irt * e_alpha * (t2 * e_phi - r2 * e_minus_phi)};
  out[PortPair::DD] = {irt * (t2 - r2), irt * e_alpha * (t2 * e_minus_phi - r2 * e_phi)};
  out[PortPair::CD] = {Complex(t2 * t2 + r2 * r2), -2.0 * r2 * t2 * e_alpha * cos_phi};
  out[PortPair::DC] = {Complex(-2.0 * r2 * t2), -2.0 * r2 * t2 * e_alpha * cos_phi};
  return out;
}

PortMap<double> port_probabilities(const InterferometerParams& params) {
  const auto amplitudes = all_port_amplitudes(params);
  const double overlap_sq = std::pow(overlap(params.delta(), params.width()), 2);
  PortMap<double> out;
  for (const PortPair port : kAllPorts) {
    const auto& [a, b] = amplitudes[port];
    out[port] = std::norm(a) + std::norm(b) + 2.0 * std::real(std::conj(a) * b) * overlap_sq;
  }
  return out;
}

PortMap<std::optional<double>> port_mean_momenta(const InterferometerParams& params,
                                                 Electron electron) {
  const auto amplitudes = all_port_amplitudes(params);
  const double overlap_sq = std::pow(overlap(params.delta(), params.width()), 2);
  const double kick = kick_sign(electron) * params.delta();
  PortMap<std::optional<double>> out;
  for (const PortPair port : kAllPorts) {
    const auto& [a, b] = amplitudes[port];
    const double cross = std::real(std::conj(a) * b) * overlap_sq;
    const double probability = std::norm(a) + std::norm(b) + 2.0 * cross;
    if (probability > kDarkPortThreshold) {
      // <Phi|p|Phi_kicked> = (kick / 2) I, so the cross term contributes kick * Re(a* b) I^2.
      out[port] = kick * (std::norm(b) + cross) / probability;
    }
  }
  return out;
}

EhrenfestPair ehrenfest_check(const InterferometerParams& params, Electron electron) {
  const double r2 = params.r() * params.r();
  const double t2 = params.t() * params.t();
  const auto probabilities = port_probabilities(params);
  const auto means = port_mean_momenta(params, electron);
  double weighted = 0.0;
  for (const PortPair port : kAllPorts) {
    if (means[port]) weighted += probabilities[port] * *means[port];
  }
  return {kick_sign(electron) * 2.0 * t2 * r2 * params.delta(), weighted};
}

ReducedState::ReducedState(const InterferometerParams& params, Electron electron)
    : base_(params.packet()), kicked_(kicked_packet(params, electron)), electron_(electron) {
  const double c = std::cos(params.phi());
  const double i_overlap = overlap(params.delta(), params.width());
  const Complex off = i_overlap * c * std::polar(1.0, -params.alpha());
  coeff_ << Complex(1.0), off, std::conj(off), Complex(c * c);
  gram_ << 1.0, i_overlap, i_overlap, 1.0;
}

double ReducedState::trace() const {
  return (coeff_ * gram_.cast<Complex>()).trace().real();
}

Eigen::Matrix2cd ReducedState::normalized_coeff() const {
  const double tr = trace();
  require_bright(tr, "ReducedState");
  return coeff_ / tr;
}

double ReducedState::purity() const {
  const Eigen::Matrix2cd cg = coeff_ * gram_.cast<Complex>();
  const double tr = cg.trace().real();
  require_bright(tr, "ReducedState::purity");
  return (cg * cg).trace().real() / (tr * tr);
}

double ReducedState::density(double p, Normalization mode) const {
  const Eigen::Vector2d basis(packet_eval(base_, p), packet_eval(kicked_, p));
  const double raw = (basis.cast<Complex>().transpose() * coeff_ * basis.cast<Complex>())(0, 0).real();
  if (mode == Normalization::raw) return raw;
  const double tr = trace();
  require_bright(tr, "ReducedState::density");
  return raw / tr;
}

ReducedState reduced_state(const InterferometerParams& params, Electron electron) {
  ReducedState state(params, electron);
  require_bright(state.trace(), "reduced_state");
  return state;
}

}  // namespace qif::analytic
