#pragma once

#include <utility>

#include "qct/linalg.hpp"

namespace qct {

/// A trap-frequency-indexed dimensionless coordinate system.
///
/// Positions map as X = sqrt(mass*omega/(2*hbar)) * x and momenta as
/// P = p / sqrt(2*hbar*mass*omega); the frame's ground state is then the
/// circle of radius 1/2 in (X, P). Dimensionless mode (mass = hbar = 1,
/// omega in multiples of the reference frequency) is the default.
struct Frame {
  double omega = 1.0;
  double mass = 1.0;
  double hbar = 1.0;

  double position_scale() const;  // X per unit x
  double momentum_scale() const;  // P per unit p

  bool is_dimensionless() const { return mass == 1.0 && hbar == 1.0; }
  void validate() const;

  bool operator==(const Frame&) const = default;
};

/// (x, p) in physical units -> (X, P) in the frame's dimensionless units.
Vec2 to_dimensionless(double x_phys, double p_phys, const Frame& frame);

/// Inverse of to_dimensionless. Returns (x, p).
std::pair<double, double> from_dimensionless(Vec2 xp, const Frame& frame);

}  // namespace qct
