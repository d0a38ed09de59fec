#include "qct/scan.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "qct/errors.hpp"
#include "qct/protocols.hpp"
#include "qct/squeeze.hpp"

namespace qct {

std::string format_g12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

ScanResult scan_dsbbb(double omega0, double omega1, int n_omega2, int n_t2) {
  if (!(omega0 > 0.0) || !(omega1 > omega0)) {
    throw ValidationError("scan: need omega1 > omega0 > 0");
  }
  if (n_omega2 < 1 || n_t2 < 1) {
    throw ValidationError("scan: resolutions must be at least 1");
  }
  const double pi = std::numbers::pi;
  const double t2_max = pi / (2.0 * omega1);
  const double sbbb = pi / omega1;

  ScanResult result;
  result.omega0 = omega0;
  result.omega1 = omega1;
  result.n_omega2 = n_omega2;
  result.n_t2 = n_t2;
  result.cells.reserve(static_cast<size_t>(n_omega2) * n_t2);

  for (int i = 0; i < n_omega2; ++i) {
    const double omega2 = omega1 * (i + 1) / n_omega2;
    for (int j = 0; j < n_t2; ++j) {
      const double t2 = t2_max * (j + 1) / n_t2;
      const double th2 = theta2(omega1, omega2, omega1 * t2, omega0);
      const double tau = 2.0 * t2 + (pi - 2.0 * th2) / omega2;
      result.cells.push_back(
          {omega2, t2, th2, tau, (tau - sbbb) / sbbb});
    }
  }
  return result;
}

void write_scan_csv(const ScanResult& scan, std::ostream& out) {
  out << "omega2,t2,theta2,tau_dsbbb,advantage\n";
  for (const ScanCell& c : scan.cells) {
    out << format_g12(c.omega2) << ',' << format_g12(c.t2) << ','
        << format_g12(c.theta2) << ',' << format_g12(c.tau_dsbbb) << ','
        << format_g12(c.advantage) << '\n';
  }
}

}  // namespace qct
