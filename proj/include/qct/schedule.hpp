#pragma once

#include <vector>

#include "qct/gaussian_state.hpp"

namespace qct {

/// One piecewise-constant trap configuration: center (in the segment's own
/// frame), trap frequency (via the frame) and dwell time. A zero-duration
/// segment is a pure shift marker.
struct Segment {
  double center = 0.0;
  Frame frame;
  double duration = 0.0;
};

/// Ordered trap program. The trap sits at (center 0, initial_frame) for
/// t < 0 and at (final_center, final_frame) after the last segment.
struct Schedule {
  Frame initial_frame;
  std::vector<Segment> segments;
  double final_center = 0.0;
  Frame final_frame;

  double total_time() const;
  void validate() const;
};

enum class EventKind { Shift, Squeeze, Evolve };

/// Phase-space snapshot pair around one event. Shift and Squeeze events are
/// instantaneous (t_begin == t_end); a Shift leaves the state untouched and
/// a Squeeze only re-expresses it in the new frame.
struct EvolutionEvent {
  EventKind kind = EventKind::Evolve;
  double t_begin = 0.0;
  double t_end = 0.0;
  GaussianState before;
  GaussianState after;
  double trap_center = 0.0;  // active center, in `after`'s frame
};

struct EvolutionResult {
  GaussianState final_state;  // expressed in the schedule's final frame
  std::vector<EvolutionEvent> events;
};

/// Free evolution for one segment: clockwise rotation about the segment
/// center by omega * duration. The state must already be expressed in the
/// segment's frame (convert with change_frame first).
GaussianState evolve_segment(const GaussianState& state,
                             const Segment& segment);

/// Runs the full schedule: a frame change at every frequency switch, a
/// rotation for every segment, snapshots before and after each event.
EvolutionResult evolve_schedule(const GaussianState& initial,
                                const Schedule& schedule);

/// Same, starting from the initial frame's ground state at the origin.
EvolutionResult evolve_schedule(const Schedule& schedule);

/// Clips the schedule to total duration `t`; the final hold configuration
/// is kept so fidelities still refer to the original destination.
Schedule truncate_schedule(const Schedule& schedule, double t);

}  // namespace qct
