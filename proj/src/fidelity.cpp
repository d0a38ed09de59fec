#include "qct/fidelity.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "qct/errors.hpp"

namespace qct {

namespace {
constexpr double kPi = std::numbers::pi;
}

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
  a.validate();
  b.validate();
  if (a.frame != b.frame) {
    throw FrameMismatchError(
        "gaussian_fidelity: states must share a frame; convert first");
  }
  const double tol = 1e-9;
  if (a.purity_defect() > tol || b.purity_defect() > tol) {
    throw UnsupportedStateError(
        "gaussian_fidelity: covariance is not a pure state (det != 1/16); "
        "mixed states are unsupported");
  }
  const Mat2 sum = a.cov + b.cov;
  const double d = det(sum);
  const Vec2 delta = b.mean - a.mean;
  const double quad = (sum.pp * delta.x * delta.x -
                       2.0 * sum.xp * delta.x * delta.p +
                       sum.xx * delta.p * delta.p) /
                      d;
  const double f = std::exp(-0.5 * quad) / (2.0 * std::sqrt(d));
  return std::min(f, 1.0);
}

FidelityResult gaussian_oracle(const Schedule& schedule) {
  const EvolutionResult evo = evolve_schedule(schedule);
  const GaussianState target =
      GaussianState::ground(schedule.final_frame, schedule.final_center);
  FidelityResult res;
  res.method = OracleMethod::Gaussian;
  res.fidelity = gaussian_fidelity(evo.final_state, target);
  res.residual_momentum = std::abs(evo.final_state.mean.p);
  return res;
}

void GridConfig::validate() const {
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ValidationError("grid: need x_min < x_max");
  }
  if (n_points < 1024 || (n_points & (n_points - 1)) != 0) {
    throw ValidationError("grid: n_points must be a power of two >= 1024");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("grid: dt must be positive");
  }
}

namespace {

double global_center(const Segment& seg) {
  // Segment centers are stated in their own frame; the grid works in the
  // omega = 1 reference coordinates.
  return seg.center / std::sqrt(seg.frame.omega);
}

double schedule_omega_max(const Schedule& s) {
  double w = std::max(s.initial_frame.omega, s.final_frame.omega);
  for (const Segment& seg : s.segments) w = std::max(w, seg.frame.omega);
  return w;
}

double destination_center_global(const Schedule& s) {
  return s.final_center / std::sqrt(s.final_frame.omega);
}

}  // namespace

namespace {

// Smallest X reached by a clockwise arc of sweep `delta` starting at polar
// angle psi0 on the circle (center, radius).
double arc_x_min(double center, double radius, double psi0, double delta) {
  double lo = std::min(std::cos(psi0), std::cos(psi0 - delta));
  // cos attains -1 at angle pi; the sweep covers it iff (psi0 - pi) mod 2pi
  // fits within delta.
  double a = std::fmod(psi0 - kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (delta >= 2.0 * kPi || a <= delta) lo = -1.0;
  return center + radius * lo;
}

}  // namespace

GridConfig default_grid(const Schedule& schedule) {
  schedule.validate();
  const EvolutionResult evo = evolve_schedule(schedule);
  double arc_max = 0.0;
  double low = 0.0;
  for (const EvolutionEvent& ev : evo.events) {
    if (ev.kind != EventKind::Evolve) continue;
    // Arc geometry in the segment's own frame, X extent rescaled to the
    // reference coordinates afterwards.
    const double inv_scale = 1.0 / std::sqrt(ev.after.frame.omega);
    const double radius =
        std::hypot(ev.before.mean.x - ev.trap_center, ev.before.mean.p);
    const double psi0 =
        std::atan2(ev.before.mean.p, ev.before.mean.x - ev.trap_center);
    const double sweep = ev.after.frame.omega * (ev.t_end - ev.t_begin);
    arc_max = std::max(arc_max, radius * inv_scale);
    low = std::min(
        low, arc_x_min(ev.trap_center, radius, psi0, sweep) * inv_scale);
  }
  GridConfig cfg;
  cfg.x_min = low - 8.0;
  cfg.x_max = destination_center_global(schedule) + 2.0 * arc_max + 8.0;
  cfg.n_points = 4096;
  // 0.0005/omega_max keeps the splitting's phase error small enough that
  // the end state is at rest to well below 1e-6 even for R ~ 10 D arcs.
  cfg.dt = 0.0005 / schedule_omega_max(schedule);
  return cfg;
}

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex g_fftw_planner_mutex;

struct FftwArray {
  explicit FftwArray(int n) : size(n) {
    data = fftw_alloc_complex(static_cast<size_t>(n));
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwArray() { fftw_free(data); }
  FftwArray(const FftwArray&) = delete;
  FftwArray& operator=(const FftwArray&) = delete;

  std::complex<double>* c() {
    return reinterpret_cast<std::complex<double>*>(data);
  }
  const std::complex<double>* c() const {
    return reinterpret_cast<const std::complex<double>*>(data);
  }

  fftw_complex* data = nullptr;
  int size = 0;
};

class SplitStepPropagator {
 public:
  SplitStepPropagator(const Schedule& schedule, const GridConfig& cfg)
      : schedule_(schedule),
        cfg_(cfg),
        n_(cfg.n_points),
        psi_(cfg.n_points),
        work_(cfg.n_points) {
    std::lock_guard<std::mutex> lock(g_fftw_planner_mutex);
    fwd_psi_ = fftw_plan_dft_1d(n_, psi_.data, psi_.data, FFTW_FORWARD,
                                FFTW_ESTIMATE);
    bwd_psi_ = fftw_plan_dft_1d(n_, psi_.data, psi_.data, FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    fwd_work_ = fftw_plan_dft_1d(n_, work_.data, work_.data, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
  }

  ~SplitStepPropagator() {
    std::lock_guard<std::mutex> lock(g_fftw_planner_mutex);
    fftw_destroy_plan(fwd_psi_);
    fftw_destroy_plan(bwd_psi_);
    fftw_destroy_plan(fwd_work_);
  }

  SplitStepPropagator(const SplitStepPropagator&) = delete;
  SplitStepPropagator& operator=(const SplitStepPropagator&) = delete;

  FidelityResult run(const GridObserver& observer) {
    setup_axes();
    prepare_initial_state();

    double t = 0.0;
    double norm_drift = 0.0;
    double energy_drift = 0.0;
    notify(observer, t);
    norm_drift = std::max(norm_drift, std::abs(1.0 - norm()));

    for (const Segment& seg : schedule_.segments) {
      if (seg.duration <= 0.0) {
        notify(observer, t);
        continue;
      }
      const double omega = seg.frame.omega;
      const double center = global_center(seg);
      const int steps =
          std::max(1, static_cast<int>(std::ceil(seg.duration / cfg_.dt)));
      const double dt = seg.duration / steps;
      prepare_phases(omega, center, dt);

      const double e_start = energy(omega, center);
      for (int s = 0; s < steps; ++s) {
        step();
        check_edges();
      }
      const double e_end = energy(omega, center);
      energy_drift = std::max(
          energy_drift, std::abs(e_end - e_start) /
                            std::max(std::abs(e_start), 1e-30));
      t += seg.duration;
      norm_drift = std::max(norm_drift, std::abs(1.0 - norm()));
      notify(observer, t);
    }

    FidelityResult res;
    res.method = OracleMethod::Grid;
    res.fidelity = destination_fidelity();
    res.residual_momentum = std::abs(mean_momentum());
    res.energy_drift = energy_drift;
    res.norm_drift = norm_drift;
    return res;
  }

 private:
  void setup_axes() {
    dx_ = (cfg_.x_max - cfg_.x_min) / n_;
    x_.resize(n_);
    k_.resize(n_);
    for (int i = 0; i < n_; ++i) x_[i] = cfg_.x_min + i * dx_;
    const double dk = 2.0 * kPi / (n_ * dx_);
    for (int j = 0; j < n_; ++j) {
      k_[j] = dk * (j <= n_ / 2 ? j : j - n_);
    }
  }

  // Ground state of the initial trap at the origin, reference coordinates:
  // psi(x) = (2 w / pi)^(1/4) exp(-w x^2).
  void prepare_initial_state() {
    const double w = schedule_.initial_frame.omega;
    const double amp = std::pow(2.0 * w / kPi, 0.25);
    for (int i = 0; i < n_; ++i) {
      psi_.c()[i] = amp * std::exp(-w * x_[i] * x_[i]);
    }
  }

  void prepare_phases(double omega, double center, double dt) {
    v_half_.resize(n_);
    kinetic_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      const double v = omega * omega * (x_[i] - center) * (x_[i] - center);
      v_half_[i] = std::polar(1.0, -0.5 * v * dt);
    }
    for (int j = 0; j < n_; ++j) {
      kinetic_[j] = std::polar(1.0, -0.25 * k_[j] * k_[j] * dt);
    }
  }

  void step() {
    auto* p = psi_.c();
    for (int i = 0; i < n_; ++i) p[i] *= v_half_[i];
    fftw_execute(fwd_psi_);
    for (int j = 0; j < n_; ++j) p[j] *= kinetic_[j];
    fftw_execute(bwd_psi_);
    const double inv_n = 1.0 / n_;
    for (int i = 0; i < n_; ++i) p[i] *= inv_n;
    for (int i = 0; i < n_; ++i) p[i] *= v_half_[i];
  }

  void check_edges() const {
    const auto* p = psi_.c();
    double edge = 0.0;
    for (int i = 0; i < 5; ++i) edge += std::norm(p[i]);
    for (int i = n_ - 5; i < n_; ++i) edge += std::norm(p[i]);
    if (edge * dx_ > 1e-12) {
      const GridConfig suggestion = default_grid(schedule_);
      throw GridDomainError(
          "wavepacket reached the grid boundary; enlarge the domain "
          "(suggested x_min = " + std::to_string(suggestion.x_min) +
          ", x_max = " + std::to_string(suggestion.x_max) + ")");
    }
  }

  double norm() const {
    const auto* p = psi_.c();
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += std::norm(p[i]);
    return acc * dx_;
  }

  double energy(double omega, double center) {
    const auto* p = psi_.c();
    double pot = 0.0;
    for (int i = 0; i < n_; ++i) {
      pot += omega * omega * (x_[i] - center) * (x_[i] - center) *
             std::norm(p[i]);
    }
    pot *= dx_;

    std::copy(p, p + n_, work_.c());
    fftw_execute(fwd_work_);
    const auto* w = work_.c();
    double kin = 0.0;
    double wnorm = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double m = std::norm(w[j]);
      kin += 0.25 * k_[j] * k_[j] * m;
      wnorm += m;
    }
    // Parseval: sum |psi_hat|^2 = n * sum |psi|^2.
    kin *= dx_ / n_;
    const double total_norm = wnorm * dx_ / n_;
    return (kin + pot) / total_norm;
  }

  double mean_momentum() {
    std::copy(psi_.c(), psi_.c() + n_, work_.c());
    fftw_execute(fwd_work_);
    const auto* w = work_.c();
    double acc = 0.0;
    double wnorm = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double m = std::norm(w[j]);
      acc += 0.5 * k_[j] * m;  // P eigenvalue is k/2
      wnorm += m;
    }
    return acc / wnorm;
  }

  double destination_fidelity() const {
    const double w = schedule_.final_frame.omega;
    const double d = destination_center_global(schedule_);
    const double amp = std::pow(2.0 * w / kPi, 0.25);
    std::complex<double> overlap = 0.0;
    double target_norm = 0.0;
    const auto* p = psi_.c();
    for (int i = 0; i < n_; ++i) {
      const double target = amp * std::exp(-w * (x_[i] - d) * (x_[i] - d));
      overlap += target * p[i];
      target_norm += target * target;
    }
    overlap *= dx_;
    target_norm *= dx_;
    const double f = std::norm(overlap) / (target_norm * norm());
    return std::min(f, 1.0);
  }

  void notify(const GridObserver& observer, double t) const {
    if (!observer) return;
    observer(t, std::span<const std::complex<double>>(psi_.c(), n_),
             std::span<const double>(x_.data(), x_.size()));
  }

  const Schedule& schedule_;
  GridConfig cfg_;
  int n_;
  double dx_ = 0.0;
  std::vector<double> x_, k_;
  std::vector<std::complex<double>> v_half_, kinetic_;
  FftwArray psi_;
  FftwArray work_;
  fftw_plan fwd_psi_ = nullptr;
  fftw_plan bwd_psi_ = nullptr;
  fftw_plan fwd_work_ = nullptr;
};

}  // namespace

FidelityResult grid_propagate(const Schedule& schedule, const GridConfig& cfg,
                              const GridObserver& observer) {
  schedule.validate();
  cfg.validate();
  if (!schedule.initial_frame.is_dimensionless()) {
    throw ValidationError(
        "grid_propagate: schedule must use dimensionless frames "
        "(mass = hbar = 1)");
  }
  const double omega_max = schedule_omega_max(schedule);
  if (cfg.dt * omega_max > 0.01 + 1e-15) {
    throw ValidationError(
        "grid: dt * omega_max must not exceed 0.01; got dt = " +
        std::to_string(cfg.dt));
  }
  const double d_global = destination_center_global(schedule);
  if (cfg.x_min > -2.5 || cfg.x_max < d_global + 2.5) {
    throw ValidationError(
        "grid: domain must contain [-5, D+5] ground-state widths");
  }
  SplitStepPropagator prop(schedule, cfg);
  return prop.run(observer);
}

CrossReport cross_validate(const Schedule& schedule, const GridConfig& cfg,
                           bool expect_at_rest) {
  CrossReport report;
  report.gaussian = gaussian_oracle(schedule);
  report.grid = grid_propagate(schedule, cfg);
  report.gap = std::abs(report.gaussian.fidelity - report.grid.fidelity);
  report.at_rest =
      report.gaussian.residual_momentum < kAtRestTolerance &&
      report.grid.residual_momentum < kAtRestTolerance;

  if (report.gap >= kCrossOracleTolerance) {
    // Refine the grid step to decide which route is off: if halving dt moves
    // the grid fidelity toward the Gaussian value, the grid run was
    // unconverged; otherwise the analytic route is the suspect.
    GridConfig finer = cfg;
    finer.dt = cfg.dt / 2.0;
    const FidelityResult refined = grid_propagate(schedule, finer);
    const double gap_refined =
        std::abs(report.gaussian.fidelity - refined.fidelity);
    const char* suspect =
        gap_refined < 0.5 * report.gap ? "grid (unconverged dt)"
                                       : "gaussian (analytic route)";
    throw InconsistencyError(
        "cross-oracle disagreement: F_gaussian = " +
        std::to_string(report.gaussian.fidelity) +
        ", F_grid = " + std::to_string(report.grid.fidelity) +
        ", F_grid(dt/2) = " + std::to_string(refined.fidelity) +
        "; suspect: " + suspect);
  }
  if (expect_at_rest && !report.at_rest) {
    throw InconsistencyError(
        "end state is not at rest: residual momentum gaussian = " +
        std::to_string(report.gaussian.residual_momentum) + ", grid = " +
        std::to_string(report.grid.residual_momentum));
  }
  return report;
}

}  // namespace qct
