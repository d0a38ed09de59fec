#pragma once

#include <complex>
#include <functional>
#include <span>

#include "qct/schedule.hpp"

namespace qct {

/// |<psi1|psi2>|^2 for two pure Gaussian states in the same frame.
/// Closed form: exp(-d^T (S1+S2)^{-1} d / 2) / (2 sqrt(det(S1+S2))).
/// Two ground states displaced by D give exp(-D^2) (overlap squared).
double gaussian_fidelity(const GaussianState& a, const GaussianState& b);

/// Spatial grid and step control for the wavefunction integrator. The grid
/// lives in the reference (omega = 1) dimensionless coordinates.
struct GridConfig {
  double x_min = -8.0;
  double x_max = 8.0;
  int n_points = 4096;  // power of two, >= 1024
  double dt = 0.002;    // target step; actual step divides each segment

  void validate() const;
};

/// Default grid for a schedule: domain [-8, D + 2R + 8] with R the largest
/// arc radius, n = 4096, dt = 0.0005/omega_max.
GridConfig default_grid(const Schedule& schedule);

enum class OracleMethod { Gaussian, Grid };

struct FidelityResult {
  double fidelity = 0.0;
  OracleMethod method = OracleMethod::Gaussian;
  double residual_momentum = 0.0;  // |<P>| of the end state
  double energy_drift = 0.0;  // max relative <H> change within a segment
  double norm_drift = 0.0;    // max |1 - norm| over the run
};

/// Called at every trap-program discontinuity (and at t = 0 and t = T)
/// with the current wavefunction on the grid.
using GridObserver = std::function<void(
    double t, std::span<const std::complex<double>> psi,
    std::span<const double> x)>;

/// Exact symplectic evolution + closed-form overlap with the destination
/// ground state.
FidelityResult gaussian_oracle(const Schedule& schedule);

/// Split-operator (Strang) integration of the time-dependent Schroedinger
/// equation under the piecewise-constant moving trap, fidelity against the
/// destination ground state. Second order in dt; exactly norm-preserving
/// up to rounding. Throws GridDomainError with suggested bounds if the
/// wavepacket reaches the grid edge.
FidelityResult grid_propagate(const Schedule& schedule, const GridConfig& cfg,
                              const GridObserver& observer = {});

struct CrossReport {
  FidelityResult gaussian;
  FidelityResult grid;
  double gap = 0.0;     // |F_gaussian - F_grid|
  bool at_rest = false;  // both residual momenta below 1e-6
};

/// Runs both oracles and demands agreement within 1e-5. On disagreement
/// the grid is re-run at dt/2 to name the suspect route, and an
/// InconsistencyError is thrown. When expect_at_rest is set (complete
/// transport protocols), a residual end momentum >= 1e-6 is also an error.
CrossReport cross_validate(const Schedule& schedule, const GridConfig& cfg,
                           bool expect_at_rest = true);

constexpr double kCrossOracleTolerance = 1e-5;
constexpr double kAtRestTolerance = 1e-6;

}  // namespace qct
