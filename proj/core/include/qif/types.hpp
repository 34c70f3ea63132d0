#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string_view>

namespace qif {

using Complex = std::complex<double>;

/// Probability/trace below which a post-selected outcome is treated as dark.
inline constexpr double kDarkPortThreshold = 1e-12;

enum class Electron { first = 1, second = 2 };

/// Sign of the momentum kick received in the co-propagating branch:
/// electron 1 is pushed towards negative momentum, electron 2 towards positive.
constexpr double kick_sign(Electron e) noexcept { return e == Electron::first ? -1.0 : 1.0; }

/// Exit-port assignment; first letter is electron 1's port, second electron 2's.
enum class PortPair { CC, CD, DC, DD };

inline constexpr std::array<PortPair, 4> kAllPorts{PortPair::CC, PortPair::CD, PortPair::DC,
                                                   PortPair::DD};

constexpr std::string_view to_string(PortPair port) noexcept {
  switch (port) {
    case PortPair::CC: return "CC";
    case PortPair::CD: return "CD";
    case PortPair::DC: return "DC";
    case PortPair::DD: return "DD";
  }
  return "??";
}

/// Fixed-size map keyed by PortPair.
template <class T>
class PortMap {
 public:
  T& operator[](PortPair port) noexcept { return values_[static_cast<std::size_t>(port)]; }
  const T& operator[](PortPair port) const noexcept {
    return values_[static_cast<std::size_t>(port)];
  }

 private:
  std::array<T, 4> values_{};
};

/// One-electron transverse momentum wavefunction: a real Gaussian of
/// width W centred at `center`, normalized to unit L2 norm.
class GaussianPacket {
 public:
  explicit GaussianPacket(double width, double center = 0.0);

  double width() const noexcept { return width_; }
  double center() const noexcept { return center_; }

  friend bool operator==(const GaussianPacket&, const GaussianPacket&) = default;

 private:
  double width_;
  double center_;
};

/// Dimensionless knobs of the two-electron interferometer (hbar = 1).
///
/// Both beam splitters share reflection amplitude i*r and transmission
/// t = sqrt(1 - r^2); `phi` is the extra phase of arm A, `alpha` the
/// interaction phase of the co-propagating branches, and `delta` the
/// momentum kick for packets of width `width`.
class InterferometerParams {
 public:
  InterferometerParams(double r, double phi, double alpha, double delta, double width = 1.0);

  /// r = t = 1/sqrt(2).
  static InterferometerParams balanced(double phi, double alpha, double delta, double width = 1.0);

  double r() const noexcept { return r_; }
  double t() const noexcept { return t_; }
  double phi() const noexcept { return phi_; }
  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return delta_; }
  double width() const noexcept { return width_; }
  double delta_over_width() const noexcept { return delta_ / width_; }

  GaussianPacket packet() const { return GaussianPacket(width_); }

 private:
  double r_;
  double t_;
  double phi_;
  double alpha_;
  double delta_;
  double width_;
};

}  // namespace qif
