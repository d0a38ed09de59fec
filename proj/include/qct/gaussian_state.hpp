#pragma once

#include "qct/frame.hpp"
#include "qct/linalg.hpp"

namespace qct {

/// Gaussian phase-space state: mean (X, P) and 2x2 covariance of second
/// central moments, expressed in a stated frame. Covers coherent and
/// squeezed coherent states; every pure state satisfies det(cov) = 1/16.
struct GaussianState {
  Vec2 mean;
  Mat2 cov = Mat2::diagonal(0.25, 0.25);
  Frame frame;

  /// Ground state of `frame`'s trap centered at `center_x`.
  static GaussianState ground(const Frame& frame, double center_x = 0.0);

  void validate() const;
  double purity_defect() const;  // |det(cov) - 1/16|
  bool is_pure(double tol = 1e-9) const { return purity_defect() <= tol; }
};

/// Clockwise rotation of the state about the phase-space point
/// (center_x, 0): mean moves on the circle, cov is conjugated by the same
/// rotation. This is free evolution in a trap centered at center_x.
GaussianState rotate_about(const GaussianState& state, double center_x,
                           double angle);

constexpr double kPureStateCovDet = 1.0 / 16.0;

}  // namespace qct
