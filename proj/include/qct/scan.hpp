#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qct {

struct ScanCell {
  double omega2 = 0.0;
  double t2 = 0.0;
  double theta2 = 0.0;
  double tau_dsbbb = 0.0;
  double advantage = 0.0;  // (tau_dsbbb - pi/omega1) / (pi/omega1)
};

/// Time-advantage map over omega2 in (0, omega1] and t2 in (0, pi/(2 omega1)],
/// both endpoints included, evenly spaced. Cells are ordered omega2-major,
/// t2-minor, both ascending.
struct ScanResult {
  double omega0 = 1.0;
  double omega1 = 2.0;
  int n_omega2 = 0;
  int n_t2 = 0;
  std::vector<ScanCell> cells;
};

ScanResult scan_dsbbb(double omega0, double omega1, int n_omega2, int n_t2);

/// CSV with header omega2,t2,theta2,tau_dsbbb,advantage; 12 significant
/// digits, '.' decimal separator, '\n' line ends. Byte-deterministic for a
/// fixed ScanResult.
void write_scan_csv(const ScanResult& scan, std::ostream& out);

/// Fixed 12-significant-digit formatting shared by all CSV writers.
std::string format_g12(double value);

}  // namespace qct
