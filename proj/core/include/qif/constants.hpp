#pragma once

namespace qif::si {

/// CODATA 2018 values in SI units.
struct PhysicalConstants {
  static constexpr double q = 1.602176634e-19;        // C
  static constexpr double eps0 = 8.8541878128e-12;    // F/m
  static constexpr double hbar = 1.054571817e-34;     // J s
  static constexpr double h = 6.62607015e-34;         // J s
  static constexpr double m_e = 9.1093837015e-31;     // kg
};

}  // namespace qif::si
