#include "qct/schedule.hpp"

#include <cmath>
#include <string>

#include "qct/errors.hpp"
#include "qct/squeeze.hpp"

namespace qct {

double Schedule::total_time() const {
  double t = 0.0;
  for (const Segment& seg : segments) t += seg.duration;
  return t;
}

void Schedule::validate() const {
  initial_frame.validate();
  final_frame.validate();
  if (!std::isfinite(final_center)) {
    throw ValidationError("schedule: final_center must be finite");
  }
  for (size_t i = 0; i < segments.size(); ++i) {
    const Segment& seg = segments[i];
    seg.frame.validate();
    if (!std::isfinite(seg.center)) {
      throw ValidationError("schedule: segment " + std::to_string(i) +
                            " has non-finite center");
    }
    if (!(seg.duration >= 0.0) || !std::isfinite(seg.duration)) {
      throw ValidationError("schedule: segment " + std::to_string(i) +
                            " has negative or non-finite duration");
    }
    if (seg.frame.mass != initial_frame.mass ||
        seg.frame.hbar != initial_frame.hbar) {
      throw ValidationError("schedule: segment " + std::to_string(i) +
                            " changes mass or hbar");
    }
  }
  if (segments.empty() && (final_center != 0.0 ||
                           final_frame.omega != initial_frame.omega)) {
    throw ValidationError(
        "schedule: empty segment list must keep the initial configuration");
  }
}

GaussianState evolve_segment(const GaussianState& state,
                             const Segment& segment) {
  if (state.frame != segment.frame) {
    throw FrameMismatchError(
        "evolve_segment: state frame omega=" +
        std::to_string(state.frame.omega) + " differs from segment frame omega=" +
        std::to_string(segment.frame.omega) + "; convert with change_frame first");
  }
  if (!(segment.duration >= 0.0) || !std::isfinite(segment.duration)) {
    throw ValidationError("evolve_segment: negative or non-finite duration");
  }
  return rotate_about(state, segment.center,
                      segment.frame.omega * segment.duration);
}

namespace {

// Trap centers rescale like positions under a frame change.
double rescale_center(double center, double omega_from, double omega_to) {
  return center * std::sqrt(omega_to / omega_from);
}

}  // namespace

EvolutionResult evolve_schedule(const GaussianState& initial,
                                const Schedule& schedule) {
  schedule.validate();
  initial.validate();
  if (initial.frame != schedule.initial_frame) {
    throw FrameMismatchError(
        "evolve_schedule: initial state must be expressed in the schedule's "
        "initial frame");
  }

  EvolutionResult result;
  GaussianState state = initial;
  double t = 0.0;
  double center = 0.0;  // trap center, tracked in the current state frame

  auto apply_squeeze = [&](double omega_to) {
    if (state.frame.omega == omega_to) return;
    const GaussianState before = state;
    center = rescale_center(center, state.frame.omega, omega_to);
    state = change_frame(state, omega_to);
    result.events.push_back(
        {EventKind::Squeeze, t, t, before, state, center});
  };

  auto apply_shift = [&](double new_center) {
    // Rounding slack: centers re-derived across frame changes may differ in
    // the last ulp without being a real shift.
    if (std::abs(new_center - center) <= 1e-12 * (1.0 + std::abs(center))) {
      center = new_center;
      return;
    }
    center = new_center;
    result.events.push_back({EventKind::Shift, t, t, state, state, center});
  };

  for (const Segment& seg : schedule.segments) {
    apply_squeeze(seg.frame.omega);
    apply_shift(seg.center);
    if (seg.duration > 0.0) {
      const GaussianState before = state;
      state = evolve_segment(state, seg);
      result.events.push_back(
          {EventKind::Evolve, t, t + seg.duration, before, state, center});
      t += seg.duration;
    }
  }

  apply_squeeze(schedule.final_frame.omega);
  apply_shift(schedule.final_center);

  result.final_state = state;
  return result;
}

EvolutionResult evolve_schedule(const Schedule& schedule) {
  return evolve_schedule(GaussianState::ground(schedule.initial_frame),
                         schedule);
}

Schedule truncate_schedule(const Schedule& schedule, double t) {
  schedule.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ValidationError("truncate_schedule: time must be nonnegative");
  }
  Schedule out = schedule;
  out.segments.clear();
  double remaining = t;
  for (const Segment& seg : schedule.segments) {
    if (remaining <= 0.0) break;
    Segment clipped = seg;
    clipped.duration = std::min(seg.duration, remaining);
    out.segments.push_back(clipped);
    remaining -= clipped.duration;
  }
  return out;
}

}  // namespace qct
