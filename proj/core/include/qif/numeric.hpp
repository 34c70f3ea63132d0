#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qif/types.hpp"

namespace qif::numeric {

/// Uniform grid p_min .. p_max with an odd number of points (composite Simpson).
class MomentumGrid {
 public:
  MomentumGrid(double p_min, double p_max, std::size_t n);

  /// [-half_span, half_span].
  static MomentumGrid symmetric(double half_span, std::size_t n);

  double p_min() const noexcept { return p_min_; }
  double p_max() const noexcept { return p_max_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return (p_max_ - p_min_) / static_cast<double>(n_ - 1); }
  double operator[](std::size_t i) const noexcept;
  std::vector<double> points() const;

  /// Composite Simpson weights h/3 * (1, 4, 2, 4, ..., 4, 1).
  std::vector<double> simpson_weights() const;

  friend bool operator==(const MomentumGrid&, const MomentumGrid&) = default;

 private:
  double p_min_;
  double p_max_;
  std::size_t n_;
};

/// +-8 W with 2001 points.
MomentumGrid default_grid(double width);

/// Complex samples of a wavefunction on a grid.
class SampledWavefunction {
 public:
  SampledWavefunction(MomentumGrid grid, std::vector<Complex> values);

  const MomentumGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }

 private:
  MomentumGrid grid_;
  std::vector<Complex> values_;
};

SampledWavefunction sample(const GaussianPacket& packet, const MomentumGrid& grid);

/// Non-negative density samples; `normalized` records whether the
/// producer divided by the quadrature norm.
class Distribution1D {
 public:
  Distribution1D(MomentumGrid grid, std::vector<double> values, bool normalized);

  const MomentumGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  bool normalized() const noexcept { return normalized_; }

 private:
  MomentumGrid grid_;
  std::vector<double> values_;
  bool normalized_;
};

/// Composite Simpson estimate of the integral of `f` sampled on `grid`.
double simpson(const MomentumGrid& grid, std::span<const double> f);

/// Integral of |f|^2.
double norm(const SampledWavefunction& f);
/// Integral of p |f|^2 divided by the norm.
double mean(const SampledWavefunction& f);
/// Integral of conj(f) g; throws GridError on mismatched grids.
Complex overlap(const SampledWavefunction& f, const SampledWavefunction& g);

double norm(const Distribution1D& density);
double mean(const Distribution1D& density);

/// Analytic probability mass of a packet density that lies outside the grid.
double truncated_mass(const GaussianPacket& packet, const MomentumGrid& grid);

/// Product-grid oracle grid for given params: +-(8 W + delta), 513 points.
MomentumGrid joint_oracle_grid(const InterferometerParams& params);

/// Samples the post-selected two-electron amplitude
///   Phi(p1) Phi(p2) + e^{i alpha} cos(phi) Phi(p1 + delta) Phi(p2 - delta)
/// on grid x grid, squares it, and integrates out the other electron.
/// Returns the normalized marginal. Throws GridError when the analytic
/// tail mass outside the grid exceeds 1e-10, ZeroProbability on dark ports.
Distribution1D joint_marginal_oracle(const InterferometerParams& params, const MomentumGrid& grid,
                                     Electron electron);

/// Reduced-state purity from the sampled kernel rho(p, p') obtained by a
/// brute-force partial trace of the joint amplitude, eigendecomposed after
/// symmetric Simpson weighting.
double kernel_purity(const InterferometerParams& params, const MomentumGrid& grid,
                     Electron electron);

struct KickReport {
  double max_density_deviation;  // max |numeric - analytic| of the momentum density
  double mean_shift;             // numeric mean minus the unkicked packet centre
  double width_change;           // numeric std deviation minus W / sqrt(2)
  double parseval_error;         // |norm in x - norm in p|
};

/// Applies the position-space phase exp(-i delta x) to the position
/// representation of `packet`, transforms back with an n-point DFT on
/// centred conjugate grids (dp = W sqrt(2 pi / n), dx = 2 pi / (n dp)) and
/// compares with shift_packet(packet, -delta). Throws GridError when the
/// kicked packet is not resolved or aliased.
KickReport momentum_kick_oracle(const GaussianPacket& packet, double delta, std::size_t n = 4096);

/// Free Gaussian spreading dx0 sqrt(1 + hbar^2 t^2 / (4 m^2 dx0^4)), SI units.
double free_spread_width(double initial_width, double t, double mass);

}  // namespace qif::numeric
