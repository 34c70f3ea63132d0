#pragma once

#include "qif/types.hpp"

namespace qif {

/// Amplitude pi^{-1/4} W^{-1/2} exp(-(p - c)^2 / (2 W^2)). Throws
/// InvalidArgument for non-finite p.
double packet_eval(const GaussianPacket& packet, double p);

/// Rigid displacement of the packet centre by `shift`.
GaussianPacket shift_packet(const GaussianPacket& packet, double shift);

}  // namespace qif
