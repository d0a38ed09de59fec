#pragma once

#include <map>
#include <string>

#include "qct/schedule.hpp"

namespace qct {

/// Bang-bang-bang parameters: transport distance D, first-shift
/// displacement R (both in the protocol frame) and trap frequency omega.
struct BBBParams {
  double D = 0.0;
  double R = 0.0;
  double omega = 1.0;

  void validate() const;  // throws InfeasibleError when R < D/4
};

/// Double-squeezed BBB parameters. omega0 is the rest frequency, omega1 the
/// deep squeeze, omega2 the weaker intermediate squeeze; t2 is the hold
/// time at omega1 before the second squeeze. R and D are expressed in the
/// omega0 frame. bbb_start_offset places the spatial shifts inside the
/// omega2 window (0 = at its opening).
struct DSBBBParams {
  double omega0 = 1.0;
  double omega1 = 2.0;
  double omega2 = 1.0;
  double t2 = 0.0;
  double R = 0.0;
  double D = 0.0;
  double bbb_start_offset = 0.0;

  void validate() const;
};

/// Minimum transport time over trap programs that only move forward: pi/omega.
double forward_speed_limit(double omega);

/// Closed-form BBB transport time (2/omega) * acos((2R - D) / (2R)).
/// Strictly decreasing in R; equals pi/omega at R = D/2 and 2*pi/omega at
/// the feasibility boundary R = D/4.
double bbb_time(double omega, double R, double D);

/// Two-shift protocol: trap to D/2 for half a period, then to D.
Schedule bb_schedule(double D, double omega = 1.0);

/// Three-shift protocol: centers R and D - R for bbb_time/2 each, then D.
Schedule bbb_schedule(const BBBParams& params);

/// Single-squeeze BBB total time: always pi/omega1, independent of R.
double sbbb_time(double omega1);

struct SBBBSplit {
  double tau_tr = 0.0;  // spatial transport part, bbb_time(omega1, R, D)
  double tau_ex = 0.0;  // orientation wait, pi/omega1 - tau_tr
};

/// Splits sbbb_time into transport + wait. Requires R >= D/2 (tau_ex >= 0).
SBBBSplit sbbb_split(double omega1, double R, double D);

/// Squeeze to omega1, run BBB there, hold at the destination for tau_ex,
/// squeeze back. Total time pi/omega1.
Schedule sbbb_schedule(double omega0, double omega1, double R, double D);

struct DSBBBTiming {
  double total_time = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double tau_ori = 0.0;       // (pi - 2*theta2) / omega2
  bool strict_window = false;   // bbb_time(omega2,R,D) <= tau_ori
  bool relaxed_window = false;  // bbb_time(omega2,R,D) <= total_time
};

/// Closed-form DSBBB total time 2*t2 + (pi - 2*theta2)/omega2 plus the two
/// feasibility windows for embedding the spatial shifts.
DSBBBTiming dsbbb_time(const DSBBBParams& params);

/// Timing-only path used by parameter scans (no R/D feasibility involved).
double dsbbb_total_time(double omega0, double omega1, double omega2,
                        double t2);

/// Full DSBBB trap program with the BBB shifts embedded in the omega2
/// window. Requires the shifts to fit that window (strict condition);
/// throws InfeasibleError naming the violated flag otherwise.
Schedule dsbbb_schedule(const DSBBBParams& params);

struct ProtocolReport {
  Schedule schedule;
  double total_time = 0.0;
  std::map<std::string, bool> constraint_flags;
  std::vector<EvolutionEvent> snapshots;
};

ProtocolReport report_bb(double D, double omega = 1.0);
ProtocolReport report_bbb(const BBBParams& params);
ProtocolReport report_sbbb(double omega0, double omega1, double R, double D);
ProtocolReport report_dsbbb(const DSBBBParams& params);

}  // namespace qct
