#pragma once

#include <cmath>

namespace qct {

/// Phase-space vector (X, P).
struct Vec2 {
  double x = 0.0;
  double p = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.p + b.p}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.p - b.p}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.p}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.p * b.p; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.p - a.p * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.p); }
inline double norm_sq(Vec2 v) { return v.x * v.x + v.p * v.p; }

/// 2x2 real matrix, row-major: [[xx, xp], [px, pp]].
struct Mat2 {
  double xx = 0.0, xp = 0.0, px = 0.0, pp = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.xx + b.xx, a.xp + b.xp, a.px + b.px, a.pp + b.pp};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.xx - b.xx, a.xp - b.xp, a.px - b.px, a.pp - b.pp};
}

inline Mat2 operator*(double s, const Mat2& m) {
  return {s * m.xx, s * m.xp, s * m.px, s * m.pp};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.xx * b.xx + a.xp * b.px, a.xx * b.xp + a.xp * b.pp,
          a.px * b.xx + a.pp * b.px, a.px * b.xp + a.pp * b.pp};
}

inline Vec2 operator*(const Mat2& m, Vec2 v) {
  return {m.xx * v.x + m.xp * v.p, m.px * v.x + m.pp * v.p};
}

inline Mat2 transpose(const Mat2& m) { return {m.xx, m.px, m.xp, m.pp}; }

inline double det(const Mat2& m) { return m.xx * m.pp - m.xp * m.px; }

/// S * m * S^T
inline Mat2 sandwich(const Mat2& s, const Mat2& m) {
  return s * m * transpose(s);
}

/// Clockwise rotation by `angle`: maps (1,0) to (cos, -sin).
inline Mat2 clockwise_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, s, -s, c};
}

struct SymEigen {
  double lambda_major = 0.0;  // larger eigenvalue
  double lambda_minor = 0.0;
  Vec2 axis_major;  // unit eigenvector of lambda_major
};

/// Eigen-decomposition of a symmetric 2x2 matrix (uses xx, xp, pp).
inline SymEigen sym_eigen(const Mat2& m) {
  const double tr = m.xx + m.pp;
  const double gap = std::hypot(m.xx - m.pp, 2.0 * m.xp);
  const double lmax = 0.5 * (tr + gap);
  const double lmin = 0.5 * (tr - gap);
  Vec2 v;
  if (m.xp == 0.0) {
    v = (m.xx >= m.pp) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  } else if (std::abs(lmax - m.pp) >= std::abs(lmax - m.xx)) {
    v = {lmax - m.pp, m.xp};
  } else {
    v = {m.xp, lmax - m.xx};
  }
  const double n = norm(v);
  return {lmax, lmin, {v.x / n, v.p / n}};
}

}  // namespace qct
