#pragma once

#include "qct/gaussian_state.hpp"

namespace qct {

/// Coordinate change between two frequency-indexed dimensionless frames:
/// diag(sqrt(omega_to/omega_from), sqrt(omega_from/omega_to)). Symplectic
/// (unit determinant), identity when the frequencies coincide.
struct SqueezeMap {
  double omega_from = 1.0;
  double omega_to = 1.0;

  Mat2 matrix() const;
  SqueezeMap inverse() const { return {omega_to, omega_from}; }
};

/// Re-expresses the state in the frame with frequency omega_to (same mass
/// and hbar). The physical state is unchanged; only coordinates rescale.
GaussianState change_frame(const GaussianState& state, double omega_to);

/// Orthogonal semi-axes of a 1-sigma uncertainty ellipse. For minimum
/// uncertainty states |a|*|b| = 1/4.
struct EllipseAxes {
  Vec2 a;  // semi-major
  Vec2 b;  // semi-minor
  bool is_circular = false;
};

/// Recovers the principal semi-axes of the ellipse traced by
/// v(phi) = cos(phi) a' + sin(phi) b'. The inputs need not be orthogonal
/// (a squeeze map destroys orthogonality); they must be nonzero and not
/// parallel.
EllipseAxes principal_axes(Vec2 a_prime, Vec2 b_prime);

/// Clockwise angle between the semi-major axis and the +X axis, reduced to
/// [0, pi) since an axis is a line, not a ray. Circular ellipses report 0.
double orientation_angle(const EllipseAxes& axes);

/// Orientation angle after the second squeeze: the omega0 ground state is
/// squeezed into the omega1 frame, rotated clockwise by theta1, mapped into
/// the omega2 frame, and its new principal axes are extracted. Literal
/// semi-axis-vector pipeline.
double theta2(double omega1, double omega2, double theta1,
              double omega0 = 1.0);

/// Same angle via covariance propagation and eigen-decomposition. Kept as
/// an independent route for cross-checking theta2.
double theta2_from_covariance(double omega1, double omega2, double theta1,
                              double omega0 = 1.0);

}  // namespace qct
