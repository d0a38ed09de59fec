#include "qct/speed_limits.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qct/errors.hpp"
#include "qct/protocols.hpp"

namespace qct {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ground_state_overlap(double D) {
  if (!(D >= 0.0) || !std::isfinite(D)) {
    throw ValidationError("ground_state_overlap: D must be nonnegative");
  }
  return std::exp(-D * D / 2.0);
}

double mt_bound(double omega, double R, double D, bool exact) {
  if (!(omega > 0.0) || !(R > 0.0)) {
    throw ValidationError("mt_bound: omega and R must be positive");
  }
  const double angle = exact ? std::acos(ground_state_overlap(D)) : kPi / 2.0;
  return angle / (R * omega);
}

double ml_bound(double omega, double R, double D, bool exact) {
  if (!(omega > 0.0) || !(R > 0.0)) {
    throw ValidationError("ml_bound: omega and R must be positive");
  }
  const double angle = exact ? std::acos(ground_state_overlap(D)) : kPi / 2.0;
  return angle / (R * R * omega);
}

double bbb_asymptotic_time(double omega, double R, double D) {
  if (!(omega > 0.0) || !(R > 0.0) || !(D > 0.0)) {
    throw ValidationError("bbb_asymptotic_time: arguments must be positive");
  }
  return 2.0 * std::sqrt(D) / (omega * std::sqrt(R));
}

namespace {

// The QSL bounds rest on |alpha| = R: during both BBB arcs the mean keeps
// distance R from the active trap center. Re-derive that from the evolved
// schedule and refuse to report bounds built on a broken identification.
void check_alpha_is_R(double omega, double R, double D) {
  const EvolutionResult evo = evolve_schedule(bbb_schedule({D, R, omega}));
  for (const EvolutionEvent& ev : evo.events) {
    if (ev.kind != EventKind::Evolve) continue;
    const double r_begin = std::hypot(ev.before.mean.x - ev.trap_center,
                                      ev.before.mean.p);
    const double r_end =
        std::hypot(ev.after.mean.x - ev.trap_center, ev.after.mean.p);
    if (std::abs(r_begin - R) > 1e-9 * R || std::abs(r_end - R) > 1e-9 * R) {
      throw InconsistencyError(
          "|alpha| = R identification failed: evolved radius " +
          std::to_string(r_end) + " vs R = " + std::to_string(R));
    }
  }
}

}  // namespace

QSLScan bbb_vs_bounds(double omega, double D,
                      std::span<const double> r_grid) {
  if (!(omega > 0.0) || !(D > 0.0)) {
    throw ValidationError("bbb_vs_bounds: omega and D must be positive");
  }
  QSLScan scan;
  scan.rows.reserve(r_grid.size());
  for (double R : r_grid) {
    if (!(R > 0.0) || R < D / 4.0) {
      scan.warnings.push_back("R = " + std::to_string(R) +
                              " infeasible (R < D/4), row skipped");
      continue;
    }
    check_alpha_is_R(omega, R, D);
    QSLReport row;
    row.R = R;
    row.overlap = ground_state_overlap(D);
    row.tau_mt = mt_bound(omega, R, D, false);
    row.tau_ml = ml_bound(omega, R, D, false);
    row.tau_mt_exact = mt_bound(omega, R, D, true);
    row.tau_ml_exact = ml_bound(omega, R, D, true);
    row.tau_bbb = bbb_time(omega, R, D);
    row.asymptote = bbb_asymptotic_time(omega, R, D);
    scan.rows.push_back(row);
  }
  return scan;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw ValidationError("log_spaced: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> grid(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    grid[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace qct
