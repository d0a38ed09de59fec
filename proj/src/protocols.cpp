#include "qct/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qct/errors.hpp"
#include "qct/squeeze.hpp"

namespace qct {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be positive and finite, got " +
                          std::to_string(v));
  }
}

}  // namespace

void BBBParams::validate() const {
  require_positive(D, "D");
  require_positive(R, "R");
  require_positive(omega, "omega");
  if (R < D / 4.0) {
    throw InfeasibleError(
        "infeasible displacement: R = " + std::to_string(R) + " < D/4 = " +
        std::to_string(D / 4.0) + "; the mean's maximal excursion 2R cannot reach D/2");
  }
}

void DSBBBParams::validate() const {
  require_positive(omega0, "omega0");
  require_positive(omega1, "omega1");
  require_positive(omega2, "omega2");
  require_positive(D, "D");
  require_positive(R, "R");
  if (!(omega1 > omega0)) {
    throw ValidationError("DSBBB requires omega1 > omega0");
  }
  if (!(omega2 <= omega1)) {
    throw ValidationError("DSBBB requires omega2 <= omega1");
  }
  if (!(t2 > 0.0) || !(t2 <= kPi / (2.0 * omega1)) || !std::isfinite(t2)) {
    throw ValidationError("DSBBB requires t2 in (0, pi/(2*omega1)], got " +
                          std::to_string(t2));
  }
  if (!(bbb_start_offset >= 0.0) || !std::isfinite(bbb_start_offset)) {
    throw ValidationError("DSBBB bbb_start_offset must be nonnegative");
  }
}

double forward_speed_limit(double omega) {
  require_positive(omega, "omega");
  return kPi / omega;
}

double bbb_time(double omega, double R, double D) {
  require_positive(omega, "omega");
  require_positive(D, "D");
  require_positive(R, "R");
  if (R < D / 4.0) {
    throw InfeasibleError("infeasible displacement: R = " + std::to_string(R) +
                          " < D/4 = " + std::to_string(D / 4.0));
  }
  const double arg = std::clamp((2.0 * R - D) / (2.0 * R), -1.0, 1.0);
  return 2.0 / omega * std::acos(arg);
}

Schedule bb_schedule(double D, double omega) {
  require_positive(D, "D");
  require_positive(omega, "omega");
  const Frame f{omega};
  Schedule s;
  s.initial_frame = f;
  s.segments = {{D / 2.0, f, kPi / omega}};
  s.final_center = D;
  s.final_frame = f;
  return s;
}

Schedule bbb_schedule(const BBBParams& params) {
  params.validate();
  const double tau = bbb_time(params.omega, params.R, params.D);
  const Frame f{params.omega};
  Schedule s;
  s.initial_frame = f;
  s.segments = {{params.R, f, tau / 2.0},
                {params.D - params.R, f, tau / 2.0}};
  s.final_center = params.D;
  s.final_frame = f;
  return s;
}

double sbbb_time(double omega1) {
  require_positive(omega1, "omega1");
  return kPi / omega1;
}

SBBBSplit sbbb_split(double omega1, double R, double D) {
  const double tau_tr = bbb_time(omega1, R, D);
  const double tau_ex = kPi / omega1 - tau_tr;
  if (tau_ex < -1e-12) {
    throw InfeasibleError(
        "SBBB needs R >= D/2 so the spatial transport fits within pi/omega1");
  }
  return {tau_tr, std::max(tau_ex, 0.0)};
}

Schedule sbbb_schedule(double omega0, double omega1, double R, double D) {
  require_positive(omega0, "omega0");
  const SBBBSplit split = sbbb_split(omega1, R, D);
  const double scale = std::sqrt(omega1 / omega0);
  const Frame rest{omega0};
  const Frame deep{omega1};
  Schedule s;
  s.initial_frame = rest;
  s.segments = {{R * scale, deep, split.tau_tr / 2.0},
                {(D - R) * scale, deep, split.tau_tr / 2.0}};
  if (split.tau_ex > 0.0) {
    s.segments.push_back({D * scale, deep, split.tau_ex});
  }
  s.final_center = D;
  s.final_frame = rest;
  return s;
}

double dsbbb_total_time(double omega0, double omega1, double omega2,
                        double t2) {
  const double th2 = theta2(omega1, omega2, omega1 * t2, omega0);
  return 2.0 * t2 + (kPi - 2.0 * th2) / omega2;
}

DSBBBTiming dsbbb_time(const DSBBBParams& params) {
  params.validate();
  DSBBBTiming timing;
  timing.theta1 = params.omega1 * params.t2;
  timing.theta2 =
      theta2(params.omega1, params.omega2, timing.theta1, params.omega0);
  timing.tau_ori = (kPi - 2.0 * timing.theta2) / params.omega2;
  timing.total_time = 2.0 * params.t2 + timing.tau_ori;
  const double tau_bbb = bbb_time(params.omega2, params.R, params.D);
  timing.strict_window = tau_bbb <= timing.tau_ori + 1e-12;
  timing.relaxed_window = tau_bbb <= timing.total_time + 1e-12;
  return timing;
}

Schedule dsbbb_schedule(const DSBBBParams& params) {
  const DSBBBTiming timing = dsbbb_time(params);
  const double tau_bbb = bbb_time(params.omega2, params.R, params.D);
  if (!timing.strict_window) {
    throw InfeasibleError(
        "DSBBB window violated: flag bbb_fits_orientation_window is false "
        "(bbb_time = " + std::to_string(tau_bbb) + " > tau_ori = " +
        std::to_string(timing.tau_ori) + "); shrink R or enlarge the window");
  }
  const double offset = params.bbb_start_offset;
  double trailing = timing.tau_ori - offset - tau_bbb;
  if (trailing < -1e-12) {
    throw InfeasibleError(
        "DSBBB bbb_start_offset pushes the spatial shifts past the omega2 window");
  }
  trailing = std::max(trailing, 0.0);

  const Frame rest{params.omega0};
  const Frame deep{params.omega1};
  const Frame weak{params.omega2};
  const double to_deep = std::sqrt(params.omega1 / params.omega0);
  const double to_weak = std::sqrt(params.omega2 / params.omega0);

  Schedule s;
  s.initial_frame = rest;
  s.segments.push_back({0.0, deep, params.t2});
  if (offset > 0.0) {
    s.segments.push_back({0.0, weak, offset});
  }
  s.segments.push_back({params.R * to_weak, weak, tau_bbb / 2.0});
  s.segments.push_back({(params.D - params.R) * to_weak, weak, tau_bbb / 2.0});
  if (trailing > 0.0) {
    s.segments.push_back({params.D * to_weak, weak, trailing});
  }
  s.segments.push_back({params.D * to_deep, deep, params.t2});
  s.final_center = params.D;
  s.final_frame = rest;
  return s;
}

namespace {

ProtocolReport finish_report(Schedule schedule,
                             std::map<std::string, bool> flags) {
  EvolutionResult evo = evolve_schedule(schedule);
  ProtocolReport report;
  report.total_time = schedule.total_time();
  report.schedule = std::move(schedule);
  report.constraint_flags = std::move(flags);
  report.snapshots = std::move(evo.events);
  return report;
}

}  // namespace

ProtocolReport report_bb(double D, double omega) {
  return finish_report(bb_schedule(D, omega), {});
}

ProtocolReport report_bbb(const BBBParams& params) {
  return finish_report(bbb_schedule(params),
                       {{"feasible_displacement", params.R >= params.D / 4.0}});
}

ProtocolReport report_sbbb(double omega0, double omega1, double R, double D) {
  const SBBBSplit split = sbbb_split(omega1, R, D);
  return finish_report(sbbb_schedule(omega0, omega1, R, D),
                       {{"transport_fits_half_period", split.tau_ex >= 0.0}});
}

ProtocolReport report_dsbbb(const DSBBBParams& params) {
  const DSBBBTiming timing = dsbbb_time(params);
  return finish_report(
      dsbbb_schedule(params),
      {{"bbb_fits_orientation_window", timing.strict_window},
       {"bbb_fits_total_time", timing.relaxed_window}});
}

}  // namespace qct
