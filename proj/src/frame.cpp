#include "qct/frame.hpp"

#include <cmath>
#include <string>

#include "qct/errors.hpp"

namespace qct {

double Frame::position_scale() const {
  return std::sqrt(mass * omega / (2.0 * hbar));
}

double Frame::momentum_scale() const {
  return 1.0 / std::sqrt(2.0 * hbar * mass * omega);
}

void Frame::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("frame: omega must be positive and finite, got " +
                          std::to_string(omega));
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ValidationError("frame: mass must be positive and finite, got " +
                          std::to_string(mass));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("frame: hbar must be positive and finite, got " +
                          std::to_string(hbar));
  }
}

Vec2 to_dimensionless(double x_phys, double p_phys, const Frame& frame) {
  frame.validate();
  return {frame.position_scale() * x_phys, frame.momentum_scale() * p_phys};
}

std::pair<double, double> from_dimensionless(Vec2 xp, const Frame& frame) {
  frame.validate();
  return {xp.x / frame.position_scale(), xp.p / frame.momentum_scale()};
}

}  // namespace qct
