#include "qif/packet.hpp"

#include <cmath>
#include <numbers>

#include "qif/errors.hpp"

namespace qif {

GaussianPacket::GaussianPacket(double width, double center) : width_(width), center_(center) {
  if (!(std::isfinite(width) && width > 0.0)) {
    throw InvalidArgument("packet width must be finite and > 0");
  }
  if (!std::isfinite(center)) {
    throw InvalidArgument("packet center must be finite");
  }
}

InterferometerParams::InterferometerParams(double r, double phi, double alpha, double delta,
                                           double width)
    : r_(r), t_(0.0), phi_(phi), alpha_(alpha), delta_(delta), width_(width) {
  if (!(std::isfinite(r) && r >= 0.0 && r <= 1.0)) {
    throw InvalidArgument("reflection amplitude r must lie in [0, 1]");
  }
  if (!std::isfinite(phi) || !std::isfinite(alpha)) {
    throw InvalidArgument("phases must be finite");
  }
  if (!(std::isfinite(delta) && delta >= 0.0)) {
    throw InvalidArgument("momentum kick delta must be finite and >= 0");
  }
  if (!(std::isfinite(width) && width > 0.0)) {
    throw InvalidArgument("packet width must be finite and > 0");
  }
  t_ = std::sqrt(1.0 - r * r);
}

InterferometerParams InterferometerParams::balanced(double phi, double alpha, double delta,
                                                    double width) {
  return InterferometerParams(std::numbers::sqrt2 / 2.0, phi, alpha, delta, width);
}

double packet_eval(const GaussianPacket& packet, double p) {
  if (!std::isfinite(p)) {
    throw InvalidArgument("packet_eval: momentum must be finite");
  }
  static const double kPrefactor = std::pow(std::numbers::pi, -0.25);
  const double u = (p - packet.center()) / packet.width();
  return kPrefactor / std::sqrt(packet.width()) * std::exp(-0.5 * u * u);
}

GaussianPacket shift_packet(const GaussianPacket& packet, double shift) {
  return GaussianPacket(packet.width(), packet.center() + shift);
}

}  // namespace qif
