#include "qif/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "qif/constants.hpp"
#include "qif/errors.hpp"
#include "qif/packet.hpp"

namespace qif::numeric {
namespace {

constexpr double kTailTolerance = 1e-10;

void require_same_grid(const MomentumGrid& a, const MomentumGrid& b) {
  if (!(a == b)) throw GridError("quadrature operands live on different grids");
}

double weighted_sum(std::span<const double> weights, std::span<const double> f) {
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += weights[i] * f[i];
  return total;
}

}  // namespace

MomentumGrid::MomentumGrid(double p_min, double p_max, std::size_t n)
    : p_min_(p_min), p_max_(p_max), n_(n) {
  if (!(std::isfinite(p_min) && std::isfinite(p_max) && p_min < p_max)) {
    throw GridError("grid bounds must be finite with p_min < p_max");
  }
  if (n < 3 || n % 2 == 0) {
    throw GridError("grid point count must be odd and >= 3, got " + std::to_string(n));
  }
}

MomentumGrid MomentumGrid::symmetric(double half_span, std::size_t n) {
  return MomentumGrid(-half_span, half_span, n);
}

double MomentumGrid::operator[](std::size_t i) const noexcept {
  // Endpoints are exact; interior points are interpolated from both ends.
  if (i + 1 == n_) return p_max_;
  return p_min_ + static_cast<double>(i) * spacing();
}

std::vector<double> MomentumGrid::points() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

std::vector<double> MomentumGrid::simpson_weights() const {
  const double h3 = spacing() / 3.0;
  std::vector<double> w(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == 0 || i + 1 == n_) {
      w[i] = h3;
    } else {
      w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h3;
    }
  }
  return w;
}

MomentumGrid default_grid(double width) { return MomentumGrid::symmetric(8.0 * width, 2001); }

SampledWavefunction::SampledWavefunction(MomentumGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridError("sample count does not match grid size");
  for (const Complex& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("sampled wavefunction contains non-finite values");
    }
  }
}

SampledWavefunction sample(const GaussianPacket& packet, const MomentumGrid& grid) {
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = packet_eval(packet, grid[i]);
  return SampledWavefunction(grid, std::move(values));
}

Distribution1D::Distribution1D(MomentumGrid grid, std::vector<double> values, bool normalized)
    : grid_(grid), values_(std::move(values)), normalized_(normalized) {
  if (values_.size() != grid_.size()) throw GridError("sample count does not match grid size");
  for (const double v : values_) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw InvalidArgument("density samples must be finite and non-negative");
    }
  }
}

double simpson(const MomentumGrid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw GridError("sample count does not match grid size");
  return weighted_sum(grid.simpson_weights(), f);
}

double norm(const SampledWavefunction& f) {
  std::vector<double> density(f.values().size());
  std::transform(f.values().begin(), f.values().end(), density.begin(),
                 [](const Complex& v) { return std::norm(v); });
  return simpson(f.grid(), density);
}

double mean(const SampledWavefunction& f) {
  const auto points = f.grid().points();
  std::vector<double> first_moment(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    first_moment[i] = points[i] * std::norm(f.values()[i]);
  }
  return simpson(f.grid(), first_moment) / norm(f);
}

Complex overlap(const SampledWavefunction& f, const SampledWavefunction& g) {
  require_same_grid(f.grid(), g.grid());
  const auto w = f.grid().simpson_weights();
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * std::conj(f.values()[i]) * g.values()[i];
  return total;
}

double norm(const Distribution1D& density) { return simpson(density.grid(), density.values()); }

double mean(const Distribution1D& density) {
  const auto points = density.grid().points();
  std::vector<double> first_moment(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) first_moment[i] = points[i] * density.values()[i];
  return simpson(density.grid(), first_moment) / norm(density);
}

double truncated_mass(const GaussianPacket& packet, const MomentumGrid& grid) {
  // |Phi|^2 is a normal density with standard deviation W / sqrt(2).
  const double upper = 0.5 * std::erfc((grid.p_max() - packet.center()) / packet.width());
  const double lower = 0.5 * std::erfc((packet.center() - grid.p_min()) / packet.width());
  return upper + lower;
}

MomentumGrid joint_oracle_grid(const InterferometerParams& params) {
  return MomentumGrid::symmetric(8.0 * params.width() + params.delta(), 513);
}

namespace {

struct JointSamples {
  std::vector<double> free;      // Phi(p)
  std::vector<double> minus;     // Phi(p + delta)
  std::vector<double> plus;      // Phi(p - delta)
  Complex branch_weight;         // e^{i alpha} cos(phi)
};

JointSamples sample_joint(const InterferometerParams& params, const MomentumGrid& grid) {
  const GaussianPacket base = params.packet();
  const GaussianPacket minus = shift_packet(base, -params.delta());
  const GaussianPacket plus = shift_packet(base, params.delta());
  for (const GaussianPacket& packet : {base, minus, plus}) {
    const double tail = truncated_mass(packet, grid);
    if (tail > kTailTolerance) {
      throw GridError("joint oracle grid too narrow: truncated mass " + std::to_string(tail));
    }
  }
  JointSamples s;
  s.free.resize(grid.size());
  s.minus.resize(grid.size());
  s.plus.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.free[i] = packet_eval(base, grid[i]);
    s.minus[i] = packet_eval(minus, grid[i]);
    s.plus[i] = packet_eval(plus, grid[i]);
  }
  s.branch_weight = std::polar(1.0, params.alpha()) * std::cos(params.phi());
  return s;
}

// Joint amplitude psi(p1 = grid[i], p2 = grid[j]).
Complex joint_amplitude(const JointSamples& s, std::size_t i, std::size_t j) {
  return s.free[i] * s.free[j] + s.branch_weight * s.minus[i] * s.plus[j];
}

}  // namespace

Distribution1D joint_marginal_oracle(const InterferometerParams& params, const MomentumGrid& grid,
                                     Electron electron) {
  const JointSamples s = sample_joint(params, grid);
  const auto w = grid.simpson_weights();
  const std::size_t n = grid.size();
  std::vector<double> marginal(n);
  for (std::size_t k = 0; k < n; ++k) {
    double row = 0.0;
    for (std::size_t other = 0; other < n; ++other) {
      const Complex psi = electron == Electron::first ? joint_amplitude(s, k, other)
                                                      : joint_amplitude(s, other, k);
      row += w[other] * std::norm(psi);
    }
    marginal[k] = row;
  }
  const double total = weighted_sum(w, marginal);
  if (!(total > kDarkPortThreshold)) {
    throw ZeroProbability("joint_marginal_oracle: post-selected outcome has zero probability",
                          total);
  }
  for (double& v : marginal) v /= total;
  return Distribution1D(grid, std::move(marginal), true);
}

double kernel_purity(const InterferometerParams& params, const MomentumGrid& grid,
                     Electron electron) {
  const JointSamples s = sample_joint(params, grid);
  const auto w = grid.simpson_weights();
  const auto n = static_cast<Eigen::Index>(grid.size());

  // Rows: the kept electron; columns: the traced-out one, pre-scaled by sqrt(weight).
  Eigen::MatrixXcd psi(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index o = 0; o < n; ++o) {
      const auto ku = static_cast<std::size_t>(k);
      const auto ou = static_cast<std::size_t>(o);
      const Complex amp = electron == Electron::first ? joint_amplitude(s, ku, ou)
                                                      : joint_amplitude(s, ou, ku);
      psi(k, o) = std::sqrt(w[ku]) * amp * std::sqrt(w[ou]);
    }
  }
  // sqrt(W) rho sqrt(W) with rho(p, p') = int psi(p, q) conj(psi(p', q)) dq.
  const Eigen::MatrixXcd kernel = psi * psi.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(kernel, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw GridError("kernel eigendecomposition failed");
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const double trace = lambda.sum();
  if (!(trace > kDarkPortThreshold)) {
    throw ZeroProbability("kernel_purity: post-selected outcome has zero probability", trace);
  }
  return lambda.squaredNorm() / (trace * trace);
}

KickReport momentum_kick_oracle(const GaussianPacket& packet, double delta, std::size_t n) {
  if (!std::isfinite(delta)) throw InvalidArgument("momentum_kick_oracle: delta must be finite");
  if (n < 16) throw GridError("momentum_kick_oracle: need at least 16 points");

  const double width = packet.width();
  const double center = packet.center();
  const double dp = width * std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
  const double dx = 2.0 * std::numbers::pi / (static_cast<double>(n) * dp);
  const auto half = static_cast<long long>(n / 2);
  const auto nn = static_cast<long long>(n);

  if (std::abs(delta) * dx > std::numbers::pi / 4.0) {
    throw GridError("momentum_kick_oracle: kick phase aliased on the position grid");
  }
  const double p_lo = center - static_cast<double>(half) * dp;
  const double p_hi = center + static_cast<double>(nn - 1 - half) * dp;
  const GaussianPacket kicked = shift_packet(packet, -delta);
  const double p_tail = 0.5 * std::erfc((p_hi - kicked.center()) / width) +
                        0.5 * std::erfc((kicked.center() - p_lo) / width);
  const double x_tail = std::erfc(width * static_cast<double>(half - 1) * dx);
  if (p_tail > kTailTolerance || x_tail > kTailTolerance) {
    throw GridError("momentum_kick_oracle: kicked packet not contained in the conjugate grids");
  }

  // Position representation of the packet, times the kick phase.
  const double x_prefactor = std::pow(std::numbers::pi, -0.25) * std::sqrt(width);
  std::vector<Complex> psi(n);
  double norm_x = 0.0;
  for (long long j = 0; j < nn; ++j) {
    const double x = static_cast<double>(j - half) * dx;
    const double envelope = x_prefactor * std::exp(-0.5 * width * width * x * x);
    psi[static_cast<std::size_t>(j)] = envelope * std::polar(1.0, (center - delta) * x);
    norm_x += envelope * envelope * dx;
  }

  std::vector<Complex> twiddle(n);
  for (long long m = 0; m < nn; ++m) {
    twiddle[static_cast<std::size_t>(m)] =
        std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  }
  // exp(-i p_k x_j) = exp(-i center x_j) * twiddle[(k' j') mod n].
  std::vector<Complex> centered(n);
  for (long long j = 0; j < nn; ++j) {
    const double x = static_cast<double>(j - half) * dx;
    centered[static_cast<std::size_t>(j)] = psi[static_cast<std::size_t>(j)] * std::polar(1.0, -center * x);
  }

  const double scale = dx / std::sqrt(2.0 * std::numbers::pi);
  std::vector<double> density(n);
  std::vector<double> p_values(n);
  for (long long k = 0; k < nn; ++k) {
    const long long kc = k - half;
    Complex acc{0.0, 0.0};
    for (long long j = 0; j < nn; ++j) {
      const long long m = (((kc * (j - half)) % nn) + nn) % nn;
      acc += centered[static_cast<std::size_t>(j)] * twiddle[static_cast<std::size_t>(m)];
    }
    density[static_cast<std::size_t>(k)] = std::norm(scale * acc);
    p_values[static_cast<std::size_t>(k)] = center + static_cast<double>(kc) * dp;
  }

  double norm_p = 0.0;
  double first = 0.0;
  double max_dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    norm_p += density[k] * dp;
    first += p_values[k] * density[k] * dp;
    const double expected = std::pow(packet_eval(kicked, p_values[k]), 2);
    max_dev = std::max(max_dev, std::abs(density[k] - expected));
  }
  const double mean_p = first / norm_p;
  double second = 0.0;
  for (std::size_t k = 0; k < n; ++k) second += std::pow(p_values[k] - mean_p, 2) * density[k] * dp;
  const double spread = std::sqrt(second / norm_p);

  return {max_dev, mean_p - center, spread - width / std::numbers::sqrt2, std::abs(norm_x - norm_p)};
}

double free_spread_width(double initial_width, double t, double mass) {
  if (!(std::isfinite(initial_width) && initial_width > 0.0)) {
    throw InvalidArgument("free_spread_width: initial width must be > 0");
  }
  if (!(std::isfinite(t) && t >= 0.0)) throw InvalidArgument("free_spread_width: t must be >= 0");
  if (!(std::isfinite(mass) && mass > 0.0)) throw InvalidArgument("free_spread_width: mass must be > 0");
  const double ratio = si::PhysicalConstants::hbar * t / (2.0 * mass * initial_width * initial_width);
  return initial_width * std::sqrt(1.0 + ratio * ratio);
}

}  // namespace qif::numeric
