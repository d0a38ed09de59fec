#pragma once

#include <span>
#include <string>
#include <vector>

namespace qct {

/// |<ground(0)|ground(D)>| = exp(-D^2/2) for two displaced trap ground
/// states (amplitude overlap, not probability).
double ground_state_overlap(double D);

/// Mandelstam-Tamm bound for the BBB protocol with coherent amplitude R.
/// Approximate mode uses the pi/2 orthogonality value; exact mode uses
/// acos(overlap(D)).
double mt_bound(double omega, double R, double D, bool exact = false);

/// Margolus-Levitin bound; same conventions with R^2 in the denominator.
double ml_bound(double omega, double R, double D, bool exact = false);

/// Large-R asymptote of bbb_time: 2*sqrt(D) / (omega*sqrt(R)).
double bbb_asymptotic_time(double omega, double R, double D);

struct QSLReport {
  double R = 0.0;
  double overlap = 0.0;
  double tau_mt = 0.0;
  double tau_ml = 0.0;
  double tau_mt_exact = 0.0;
  double tau_ml_exact = 0.0;
  double tau_bbb = 0.0;
  double asymptote = 0.0;
};

struct QSLScan {
  std::vector<QSLReport> rows;
  std::vector<std::string> warnings;  // one per filtered infeasible R
};

/// Evaluates BBB time against both bounds over an R grid. Infeasible R
/// values (R < D/4) are skipped with a warning record. Each row also
/// re-derives |alpha| = R from the evolved mean's distance to the active
/// trap center and fails loudly if that identification breaks.
QSLScan bbb_vs_bounds(double omega, double D, std::span<const double> r_grid);

std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace qct
