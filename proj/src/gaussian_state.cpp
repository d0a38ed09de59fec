#include "qct/gaussian_state.hpp"

#include <cmath>
#include <string>

#include "qct/errors.hpp"

namespace qct {

GaussianState GaussianState::ground(const Frame& frame, double center_x) {
  frame.validate();
  return {{center_x, 0.0}, Mat2::diagonal(0.25, 0.25), frame};
}

void GaussianState::validate() const {
  frame.validate();
  const double scale = std::abs(cov.xx) + std::abs(cov.pp);
  if (!std::isfinite(mean.x) || !std::isfinite(mean.p) || !std::isfinite(scale)) {
    throw ValidationError("gaussian state: non-finite entries");
  }
  if (std::abs(cov.xp - cov.px) > 1e-12 * (scale + 1.0)) {
    throw ValidationError("gaussian state: covariance not symmetric");
  }
  if (!(cov.xx > 0.0) || !(cov.pp > 0.0) || !(det(cov) > 0.0)) {
    throw ValidationError("gaussian state: covariance not positive definite");
  }
}

double GaussianState::purity_defect() const {
  return std::abs(det(cov) - kPureStateCovDet);
}

GaussianState rotate_about(const GaussianState& state, double center_x,
                           double angle) {
  if (!(angle >= 0.0) || !std::isfinite(angle)) {
    throw ValidationError("rotate_about: angle must be nonnegative, got " +
                          std::to_string(angle));
  }
  const Mat2 rot = clockwise_rotation(angle);
  const Vec2 center{center_x, 0.0};
  GaussianState out = state;
  out.mean = center + rot * (state.mean - center);
  out.cov = sandwich(rot, state.cov);
  return out;
}

}  // namespace qct
