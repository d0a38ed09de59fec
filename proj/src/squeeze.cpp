#include "qct/squeeze.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qct/errors.hpp"

namespace qct {

namespace {

double positive_or_throw(double omega, const char* what) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError(std::string(what) + ": frequency must be positive, got " +
                          std::to_string(omega));
  }
  return omega;
}

double reduce_to_half_open_pi(double angle) {
  angle = std::fmod(angle, std::numbers::pi);
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi) angle = 0.0;
  return angle;
}

}  // namespace

Mat2 SqueezeMap::matrix() const {
  positive_or_throw(omega_from, "squeeze map");
  positive_or_throw(omega_to, "squeeze map");
  if (omega_from == omega_to) return Mat2::identity();
  const double s = std::sqrt(omega_to / omega_from);
  return Mat2::diagonal(s, 1.0 / s);
}

GaussianState change_frame(const GaussianState& state, double omega_to) {
  positive_or_throw(omega_to, "change_frame");
  if (omega_to == state.frame.omega) return state;
  const Mat2 s = SqueezeMap{state.frame.omega, omega_to}.matrix();
  GaussianState out;
  out.mean = s * state.mean;
  out.cov = sandwich(s, state.cov);
  out.frame = state.frame;
  out.frame.omega = omega_to;
  return out;
}

EllipseAxes principal_axes(Vec2 a_prime, Vec2 b_prime) {
  const double la = norm(a_prime);
  const double lb = norm(b_prime);
  if (la == 0.0 || lb == 0.0) {
    throw ValidationError("principal_axes: zero-length axis vector");
  }
  if (std::abs(cross(a_prime, b_prime)) <= 1e-14 * la * lb) {
    throw ValidationError("principal_axes: degenerate (parallel) axis vectors");
  }

  const double ab = dot(a_prime, b_prime);
  const double diff = norm_sq(a_prime) - norm_sq(b_prime);
  const double scale = norm_sq(a_prime) + norm_sq(b_prime);
  if (std::abs(ab) <= 1e-14 * scale && std::abs(diff) <= 1e-14 * scale) {
    // Circle: every direction is principal; keep the inputs, flag the tie.
    return {a_prime, b_prime, true};
  }

  // Extrema of |cos(phi) a' + sin(phi) b'|^2 at tan(2 phi) = 2 a'.b' / (|a'|^2 - |b'|^2).
  const double alpha = 0.5 * std::atan2(2.0 * ab, diff);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  Vec2 va = c * a_prime + s * b_prime;
  Vec2 vb = (-s) * a_prime + c * b_prime;  // the other extremum, at alpha + pi/2
  if (norm_sq(vb) > norm_sq(va)) std::swap(va, vb);
  return {va, vb, false};
}

double orientation_angle(const EllipseAxes& axes) {
  if (axes.is_circular) return 0.0;
  // Clockwise angle of the major axis from +X; axis sign quotiented out.
  return reduce_to_half_open_pi(std::atan2(-axes.a.p, axes.a.x));
}

double theta2(double omega1, double omega2, double theta1, double omega0) {
  positive_or_throw(omega0, "theta2");
  positive_or_throw(omega1, "theta2");
  positive_or_throw(omega2, "theta2");
  if (theta1 < 0.0 || !std::isfinite(theta1)) {
    throw ValidationError("theta2: theta1 must be nonnegative");
  }
  if (omega2 == omega1) {
    // Identity squeeze: the orientation is untouched.
    return reduce_to_half_open_pi(theta1);
  }
  const Vec2 a0{0.5 * std::sqrt(omega1 / omega0), 0.0};
  const Vec2 b0{0.0, 0.5 * std::sqrt(omega0 / omega1)};
  const Mat2 rot = clockwise_rotation(theta1);
  const Mat2 s12 = SqueezeMap{omega1, omega2}.matrix();
  const Vec2 a1p = s12 * (rot * a0);
  const Vec2 b1p = s12 * (rot * b0);
  if (omega1 == omega0) {
    // The start is a circle; the squeezed result is already principal with
    // its long axis on X (omega2 > omega1) or P (omega2 < omega1).
    return omega2 < omega1 ? std::numbers::pi / 2.0 : 0.0;
  }
  return orientation_angle(principal_axes(a1p, b1p));
}

double theta2_from_covariance(double omega1, double omega2, double theta1,
                              double omega0) {
  positive_or_throw(omega0, "theta2_from_covariance");
  positive_or_throw(omega1, "theta2_from_covariance");
  positive_or_throw(omega2, "theta2_from_covariance");
  if (theta1 < 0.0 || !std::isfinite(theta1)) {
    throw ValidationError("theta2_from_covariance: theta1 must be nonnegative");
  }
  const Mat2 s01 = SqueezeMap{omega0, omega1}.matrix();
  const Mat2 s12 = SqueezeMap{omega1, omega2}.matrix();
  const Mat2 rot = clockwise_rotation(theta1);
  Mat2 cov = Mat2::diagonal(0.25, 0.25);
  cov = sandwich(s01, cov);
  cov = sandwich(rot, cov);
  cov = sandwich(s12, cov);
  const SymEigen eig = sym_eigen(cov);
  const double scale = eig.lambda_major + eig.lambda_minor;
  if (eig.lambda_major - eig.lambda_minor <= 1e-14 * scale) return 0.0;
  return reduce_to_half_open_pi(
      std::atan2(-eig.axis_major.p, eig.axis_major.x));
}

}  // namespace qct
