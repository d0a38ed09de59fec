// protocol-lab: builds coherent-transport trap programs (BB, BBB, SBBB,
// DSBBB), verifies them with the Gaussian and grid oracles, sweeps the
// DSBBB parameter plane, tabulates speed-limit comparisons and converts
// physical units.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "qct/errors.hpp"
#include "qct/fidelity.hpp"
#include "qct/protocols.hpp"
#include "qct/scan.hpp"
#include "qct/speed_limits.hpp"
#include "qct/squeeze.hpp"

using json = nlohmann::ordered_json;
using qct::format_g12;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAmuKg = 1.66053906660e-27;
constexpr double kHbar = 1.054571817e-34;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;

struct CommonOpts {
  std::string out;
  std::string format = "csv";
  std::string config;
  long seed = 0;
  bool quiet = false;
};

struct ProtocolOpts {
  std::string kind;
  double D = 6.0;
  double R = 6.0;
  double omega = 1.0;
  double omega0 = 1.0;
  double omega1 = 2.0;
  double omega2 = 1.0;
  double t2 = kPi / 8.0;
  double bbb_offset = 0.0;
};

struct SimulateOpts {
  std::string oracle = "both";
  double truncate = -1.0;
  double x_min = 0.0, x_max = 0.0;  // 0/0 = use defaults
  int n_points = 0;
  double dt = 0.0;
  std::string dump_psi;
};

struct ScanOpts {
  double omega0 = 1.0;
  double omega1 = 2.0;
  int n_omega2 = 200;
  int n_t2 = 200;
  std::string gnuplot;
};

struct QslOpts {
  double D = 3.0;
  double omega = 1.0;
  double r_min = 0.0;  // 0 = default D
  double r_max = 0.0;  // 0 = default 100 D
  int n = 500;
};

struct ConvertOpts {
  double mass_amu = 0.0;
  double mass_kg = 0.0;
  double freq_mhz = 0.0;
  double freq_hz = 0.0;
  double omega_rad_s = 0.0;
  double distance_um = -1.0;
  double distance_m = -1.0;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qct::ValidationError("cannot open output file: " + path);
  f << content;
}

json state_to_json(const qct::GaussianState& s) {
  return json{{"x", s.mean.x},
              {"p", s.mean.p},
              {"cov", {s.cov.xx, s.cov.xp, s.cov.pp}},
              {"omega", s.frame.omega}};
}

json schedule_to_json(const qct::Schedule& s) {
  json segs = json::array();
  for (const qct::Segment& seg : s.segments) {
    segs.push_back({{"center", seg.center},
                    {"omega", seg.frame.omega},
                    {"duration", seg.duration}});
  }
  return json{{"initial_omega", s.initial_frame.omega},
              {"segments", segs},
              {"final_center", s.final_center},
              {"final_omega", s.final_frame.omega}};
}

const char* event_kind_name(qct::EventKind k) {
  switch (k) {
    case qct::EventKind::Shift: return "shift";
    case qct::EventKind::Squeeze: return "squeeze";
    case qct::EventKind::Evolve: return "evolve";
  }
  return "?";
}

json snapshots_to_json(const std::vector<qct::EvolutionEvent>& events) {
  json out = json::array();
  for (const qct::EvolutionEvent& ev : events) {
    out.push_back({{"event", event_kind_name(ev.kind)},
                   {"t_begin", ev.t_begin},
                   {"t_end", ev.t_end},
                   {"trap_center", ev.trap_center},
                   {"before", state_to_json(ev.before)},
                   {"after", state_to_json(ev.after)}});
  }
  return out;
}

qct::Schedule build_schedule(const ProtocolOpts& p) {
  if (p.kind == "bb") return qct::bb_schedule(p.D, p.omega);
  if (p.kind == "bbb") return qct::bbb_schedule({p.D, p.R, p.omega});
  if (p.kind == "sbbb")
    return qct::sbbb_schedule(p.omega0, p.omega1, p.R, p.D);
  if (p.kind == "dsbbb")
    return qct::dsbbb_schedule(
        {p.omega0, p.omega1, p.omega2, p.t2, p.R, p.D, p.bbb_offset});
  throw qct::ValidationError("unknown protocol kind: " + p.kind);
}

qct::ProtocolReport build_report(const ProtocolOpts& p) {
  if (p.kind == "bb") return qct::report_bb(p.D, p.omega);
  if (p.kind == "bbb") return qct::report_bbb({p.D, p.R, p.omega});
  if (p.kind == "sbbb")
    return qct::report_sbbb(p.omega0, p.omega1, p.R, p.D);
  if (p.kind == "dsbbb")
    return qct::report_dsbbb(
        {p.omega0, p.omega1, p.omega2, p.t2, p.R, p.D, p.bbb_offset});
  throw qct::ValidationError("unknown protocol kind: " + p.kind);
}

json params_to_json(const ProtocolOpts& p) {
  json j{{"kind", p.kind}, {"D", p.D}};
  if (p.kind == "bb") {
    j["omega"] = p.omega;
  } else if (p.kind == "bbb") {
    j["R"] = p.R;
    j["omega"] = p.omega;
  } else {
    j["R"] = p.R;
    j["omega0"] = p.omega0;
    j["omega1"] = p.omega1;
    if (p.kind == "dsbbb") {
      j["omega2"] = p.omega2;
      j["t2"] = p.t2;
      j["bbb_start_offset"] = p.bbb_offset;
    }
  }
  return j;
}

std::string schedule_csv(const qct::Schedule& s) {
  std::string csv = "index,center,omega,duration,t_begin,t_end\n";
  double t = 0.0;
  for (size_t i = 0; i < s.segments.size(); ++i) {
    const qct::Segment& seg = s.segments[i];
    csv += std::to_string(i) + ',' + format_g12(seg.center) + ',' +
           format_g12(seg.frame.omega) + ',' + format_g12(seg.duration) +
           ',' + format_g12(t) + ',' + format_g12(t + seg.duration) + '\n';
    t += seg.duration;
  }
  return csv;
}

int cmd_protocol(const CommonOpts& common, const ProtocolOpts& p) {
  const qct::ProtocolReport report = build_report(p);

  if (!common.quiet) {
    std::printf("protocol %s\n", p.kind.c_str());
    std::printf("  %-7s %14s %10s %14s\n", "segment", "center", "omega",
                "duration");
    double t = 0.0;
    for (size_t i = 0; i < report.schedule.segments.size(); ++i) {
      const qct::Segment& seg = report.schedule.segments[i];
      std::printf("  %-7zu %14.6g %10.6g %14.6g\n", i, seg.center,
                  seg.frame.omega, seg.duration);
      t += seg.duration;
    }
    std::printf("  final hold: center %.6g, omega %.6g\n",
                report.schedule.final_center,
                report.schedule.final_frame.omega);
    std::printf("  total time: %s (units 1/omega0)\n",
                format_g12(report.total_time).c_str());
    for (const auto& [name, value] : report.constraint_flags) {
      std::printf("  flag %s: %s\n", name.c_str(), value ? "true" : "false");
    }
  }

  if (!common.out.empty()) {
    if (common.format == "json") {
      json j{{"command", "protocol"},
             {"params", params_to_json(p)},
             {"total_time", report.total_time},
             {"constraint_flags", report.constraint_flags},
             {"schedule", schedule_to_json(report.schedule)},
             {"snapshots", snapshots_to_json(report.snapshots)}};
      write_text_file(common.out, j.dump(2) + "\n");
    } else {
      write_text_file(common.out, schedule_csv(report.schedule));
    }
  }
  return kExitOk;
}

int cmd_simulate(const CommonOpts& common, const ProtocolOpts& p,
                 const SimulateOpts& sim) {
  qct::Schedule schedule = build_schedule(p);
  const bool truncated = sim.truncate >= 0.0;
  if (truncated) schedule = qct::truncate_schedule(schedule, sim.truncate);

  qct::GridConfig grid = qct::default_grid(truncated ? build_schedule(p)
                                                     : schedule);
  if (sim.x_min != 0.0 || sim.x_max != 0.0) {
    grid.x_min = sim.x_min;
    grid.x_max = sim.x_max;
  }
  if (sim.n_points != 0) grid.n_points = sim.n_points;
  if (sim.dt != 0.0) grid.dt = sim.dt;

  std::ofstream dump;
  qct::GridObserver observer;
  if (!sim.dump_psi.empty()) {
    dump.open(sim.dump_psi, std::ios::binary);
    if (!dump)
      throw qct::ValidationError("cannot open dump file: " + sim.dump_psi);
    dump << "t,x,re_psi,im_psi\n";
    observer = [&dump](double t, std::span<const std::complex<double>> psi,
                       std::span<const double> x) {
      for (size_t i = 0; i < psi.size(); ++i) {
        dump << format_g12(t) << ',' << format_g12(x[i]) << ','
             << format_g12(psi[i].real()) << ',' << format_g12(psi[i].imag())
             << '\n';
      }
    };
  }

  json j{{"command", "simulate"}, {"params", params_to_json(p)}};
  if (truncated) j["truncated_at"] = sim.truncate;
  j["oracle"] = sim.oracle;

  double fid_gauss = -1.0, fid_grid = -1.0;
  if (sim.oracle == "gaussian") {
    const qct::FidelityResult g = qct::gaussian_oracle(schedule);
    fid_gauss = g.fidelity;
    j["fidelity_gaussian"] = g.fidelity;
    j["residual_momentum_gaussian"] = g.residual_momentum;
  } else if (sim.oracle == "grid") {
    const qct::FidelityResult g = qct::grid_propagate(schedule, grid, observer);
    fid_grid = g.fidelity;
    j["fidelity_grid"] = g.fidelity;
    j["residual_momentum_grid"] = g.residual_momentum;
    j["energy_drift"] = g.energy_drift;
    j["norm_drift"] = g.norm_drift;
  } else if (sim.oracle == "both") {
    // Cross-validation; a disagreement throws InconsistencyError (exit 1).
    // Truncated runs are not expected to end at rest.
    if (observer) {
      qct::grid_propagate(schedule, grid, observer);  // dump pass
    }
    const qct::CrossReport r =
        qct::cross_validate(schedule, grid, /*expect_at_rest=*/!truncated);
    fid_gauss = r.gaussian.fidelity;
    fid_grid = r.grid.fidelity;
    j["fidelity_gaussian"] = r.gaussian.fidelity;
    j["fidelity_grid"] = r.grid.fidelity;
    j["gap"] = r.gap;
    j["at_rest"] = r.at_rest;
    j["residual_momentum_gaussian"] = r.gaussian.residual_momentum;
    j["residual_momentum_grid"] = r.grid.residual_momentum;
    j["energy_drift"] = r.grid.energy_drift;
    j["norm_drift"] = r.grid.norm_drift;
  } else {
    throw qct::ValidationError("unknown oracle: " + sim.oracle);
  }

  if (!common.quiet) {
    if (fid_gauss >= 0.0)
      std::printf("fidelity (gaussian oracle): %s\n",
                  format_g12(fid_gauss).c_str());
    if (fid_grid >= 0.0)
      std::printf("fidelity (grid oracle):     %s\n",
                  format_g12(fid_grid).c_str());
    if (fid_gauss >= 0.0 && fid_grid >= 0.0)
      std::printf("cross-oracle gap:           %s\n",
                  format_g12(std::abs(fid_gauss - fid_grid)).c_str());
    if (j.contains("residual_momentum_grid"))
      std::printf("residual momentum (grid):   %s\n",
                  format_g12(j["residual_momentum_grid"].get<double>()).c_str());
  }

  if (!common.out.empty()) write_text_file(common.out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_scan(const CommonOpts& common, const ScanOpts& s) {
  const qct::ScanResult scan =
      qct::scan_dsbbb(s.omega0, s.omega1, s.n_omega2, s.n_t2);

  int negative = 0;
  for (const qct::ScanCell& c : scan.cells) {
    if (c.advantage < 0.0) ++negative;
  }

  std::string payload;
  if (common.format == "json") {
    json cells = json::array();
    for (const qct::ScanCell& c : scan.cells) {
      cells.push_back({c.omega2, c.t2, c.theta2, c.tau_dsbbb, c.advantage});
    }
    json j{{"command", "scan"},
           {"omega0", scan.omega0},
           {"omega1", scan.omega1},
           {"n_omega2", scan.n_omega2},
           {"n_t2", scan.n_t2},
           {"columns", {"omega2", "t2", "theta2", "tau_dsbbb", "advantage"}},
           {"cells", cells}};
    payload = j.dump() + "\n";
  } else {
    std::ostringstream csv;
    qct::write_scan_csv(scan, csv);
    payload = csv.str();
  }
  if (!common.out.empty()) {
    write_text_file(common.out, payload);
  } else {
    std::cout << payload;
  }

  if (!s.gnuplot.empty()) {
    std::string gp;
    gp += "# heat map of the DSBBB time advantage\n";
    gp += "set datafile separator ','\n";
    gp += "set xlabel 'omega2'\n";
    gp += "set ylabel 't2 (first hold at omega1)'\n";
    gp += "set view map\n";
    gp += "set palette defined (-1 'blue', 0 'white', 1 'red')\n";
    gp += "splot '" + (common.out.empty() ? std::string("scan.csv") : common.out) +
          "' every ::1 using 1:2:5 with points pt 5 ps 0.5 palette\n";
    write_text_file(s.gnuplot, gp);
  }

  if (!common.quiet) {
    std::fprintf(stderr, "scan: %dx%d cells, %d with negative advantage\n",
                 scan.n_omega2, scan.n_t2, negative);
  }
  return kExitOk;
}

int cmd_qsl(const CommonOpts& common, const QslOpts& q) {
  const double r_lo = q.r_min > 0.0 ? q.r_min : q.D;
  const double r_hi = q.r_max > 0.0 ? q.r_max : 100.0 * q.D;
  const auto grid = qct::log_spaced(r_lo, r_hi, q.n);
  const qct::QSLScan scan = qct::bbb_vs_bounds(q.omega, q.D, grid);

  // Ordering invariant checked before anything is written.
  for (const qct::QSLReport& row : scan.rows) {
    if (!(row.tau_bbb > row.tau_mt) ||
        (row.R > 1.0 && !(row.tau_mt > row.tau_ml))) {
      throw qct::InconsistencyError(
          "QSL ordering violated at R = " + std::to_string(row.R));
    }
  }

  std::string payload;
  if (common.format == "json") {
    json rows = json::array();
    for (const qct::QSLReport& row : scan.rows) {
      rows.push_back({{"R", row.R},
                      {"overlap", row.overlap},
                      {"tau_bbb", row.tau_bbb},
                      {"tau_mt", row.tau_mt},
                      {"tau_ml", row.tau_ml},
                      {"tau_mt_exact", row.tau_mt_exact},
                      {"tau_ml_exact", row.tau_ml_exact},
                      {"asymptote", row.asymptote}});
    }
    json j{{"command", "qsl"}, {"D", q.D},       {"omega", q.omega},
           {"rows", rows},     {"warnings", scan.warnings}};
    payload = j.dump() + "\n";
  } else {
    payload = "R,tau_bbb,tau_mt,tau_ml,asymptote\n";
    for (const qct::QSLReport& row : scan.rows) {
      payload += format_g12(row.R) + ',' + format_g12(row.tau_bbb) + ',' +
                 format_g12(row.tau_mt) + ',' + format_g12(row.tau_ml) + ',' +
                 format_g12(row.asymptote) + '\n';
    }
  }
  if (!common.out.empty()) {
    write_text_file(common.out, payload);
  } else {
    std::cout << payload;
  }

  for (const std::string& w : scan.warnings) {
    if (!common.quiet) std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  return kExitOk;
}

int cmd_convert(const CommonOpts& common, const ConvertOpts& c) {
  const bool has_amu = c.mass_amu > 0.0;
  const bool has_kg = c.mass_kg > 0.0;
  if (has_amu == has_kg) {
    throw qct::ValidationError(
        "convert: give exactly one of --mass-amu or --mass-kg");
  }
  const double mass = has_amu ? c.mass_amu * kAmuKg : c.mass_kg;

  const int freq_flags = (c.freq_mhz > 0.0) + (c.freq_hz > 0.0) +
                         (c.omega_rad_s > 0.0);
  if (freq_flags != 1) {
    throw qct::ValidationError(
        "convert: give exactly one of --freq-mhz, --freq-hz or --omega-rad-s");
  }
  double omega = 0.0;
  std::string convention;
  if (c.omega_rad_s > 0.0) {
    omega = c.omega_rad_s;
    convention = "angular (omega given directly in rad/s)";
  } else if (c.freq_hz > 0.0) {
    omega = 2.0 * kPi * c.freq_hz;
    convention = "cyclic (omega = 2*pi*f)";
  } else {
    omega = 2.0 * kPi * c.freq_mhz * 1e6;
    convention = "cyclic (omega = 2*pi*f)";
  }

  const bool has_um = c.distance_um >= 0.0;
  const bool has_m = c.distance_m >= 0.0;
  if (has_um == has_m) {
    throw qct::ValidationError(
        "convert: give exactly one of --distance-um or --distance-m");
  }
  const double distance = has_um ? c.distance_um * 1e-6 : c.distance_m;

  const qct::Frame frame{omega, mass, kHbar};
  const double D = qct::to_dimensionless(distance, 0.0, frame).x;

  const double tau_bb_s = kPi / omega;
  const double tau_bbb_s = D > 0.0 ? qct::bbb_time(omega, D, D) : 0.0;

  if (!common.quiet) {
    std::printf("mass:                 %s kg\n", format_g12(mass).c_str());
    std::printf("trap frequency:       %s rad/s [%s]\n",
                format_g12(omega).c_str(), convention.c_str());
    std::printf("distance:             %s m\n", format_g12(distance).c_str());
    std::printf("dimensionless D:      %s\n", format_g12(D).c_str());
    std::printf("|alpha| (D convention):   %s\n", format_g12(D).c_str());
    std::printf("|alpha| (D/2 convention): %s\n",
                format_g12(D / 2.0).c_str());
    std::printf("tau_BB  = pi/omega:       %s s\n",
                format_g12(tau_bb_s).c_str());
    if (D > 0.0) {
      std::printf("tau_BBB (R = D):          %s s (2/3 of tau_BB)\n",
                  format_g12(tau_bbb_s).c_str());
    }
  }

  if (!common.out.empty()) {
    json j{{"command", "convert"},
           {"mass_kg", mass},
           {"omega_rad_s", omega},
           {"frequency_convention", convention},
           {"distance_m", distance},
           {"D", D},
           {"alpha_D_convention", D},
           {"alpha_half_convention", D / 2.0},
           {"tau_bb_s", tau_bb_s}};
    if (D > 0.0) j["tau_bbb_R_eq_D_s"] = tau_bbb_s;
    write_text_file(common.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// Config file values act as defaults; explicit command-line flags win.
void apply_config_defaults(CLI::App* sub, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw qct::ValidationError("cannot open config file: " + path);
  json cfg;
  try {
    f >> cfg;
  } catch (const json::parse_error& e) {
    throw qct::ValidationError("config file is not valid JSON: " +
                               std::string(e.what()));
  }
  if (!cfg.is_object()) {
    throw qct::ValidationError("config file must hold a JSON object");
  }
  for (auto& [key, value] : cfg.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw qct::ValidationError("config key not recognized by this command: " +
                                 key);
    }
    if (value.is_string()) {
      opt->default_val(value.get<std::string>());
    } else if (value.is_boolean()) {
      opt->default_val(value.get<bool>() ? "true" : "false");
    } else {
      opt->default_val(value.dump());
    }
    // A value supplied by the config satisfies a required option.
    opt->required(false);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent-state transport protocol laboratory"};
  app.require_subcommand(1);

  CommonOpts common;
  ProtocolOpts popt;
  SimulateOpts sopt;
  ScanOpts scopt;
  QslOpts qopt;
  ConvertOpts copt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output file path");
    sub->add_option("--format", common.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", common.seed,
                    "seed for randomized property searches");
    sub->add_flag("--quiet", common.quiet, "suppress human-readable output");
    sub->add_option("--config", common.config,
                    "JSON config file (defaults; flags override)");
  };

  auto add_protocol_params = [&](CLI::App* sub) {
    sub->add_option("--kind", popt.kind, "bb|bbb|sbbb|dsbbb")
        ->required()
        ->check(CLI::IsMember({"bb", "bbb", "sbbb", "dsbbb"}));
    sub->add_option("--D", popt.D, "transport distance (dimensionless)");
    sub->add_option("--R", popt.R, "first-shift displacement");
    sub->add_option("--omega", popt.omega, "trap frequency (bb/bbb)");
    sub->add_option("--omega0", popt.omega0, "rest frequency (sbbb/dsbbb)");
    sub->add_option("--omega1", popt.omega1, "deep frequency (sbbb/dsbbb)");
    sub->add_option("--omega2", popt.omega2, "weak frequency (dsbbb)");
    sub->add_option("--t2", popt.t2, "first hold time at omega1 (dsbbb)");
    sub->add_option("--bbb-offset", popt.bbb_offset,
                    "shift placement inside the omega2 window (dsbbb)");
  };

  CLI::App* protocol =
      app.add_subcommand("protocol", "build a schedule and report timings");
  add_protocol_params(protocol);
  add_common(protocol);

  CLI::App* simulate =
      app.add_subcommand("simulate", "run the fidelity oracles on a protocol");
  add_protocol_params(simulate);
  simulate->add_option("--oracle", sopt.oracle, "gaussian|grid|both")
      ->check(CLI::IsMember({"gaussian", "grid", "both"}));
  simulate->add_option("--truncate", sopt.truncate,
                       "stop the schedule at this time");
  simulate->add_option("--x-min", sopt.x_min, "grid lower bound");
  simulate->add_option("--x-max", sopt.x_max, "grid upper bound");
  simulate->add_option("--n-points", sopt.n_points, "grid size (power of 2)");
  simulate->add_option("--dt", sopt.dt, "time step");
  simulate->add_option("--dump-psi", sopt.dump_psi,
                       "write wavefunction snapshots (t,x,re,im) to this file");
  add_common(simulate);

  CLI::App* scan =
      app.add_subcommand("scan", "sweep the DSBBB (omega2, t2) plane");
  scan->add_option("--omega0", scopt.omega0, "rest frequency");
  scan->add_option("--omega1", scopt.omega1, "deep frequency");
  scan->add_option("--n-omega2", scopt.n_omega2, "omega2 resolution");
  scan->add_option("--n-t2", scopt.n_t2, "t2 resolution");
  scan->add_option("--gnuplot", scopt.gnuplot,
                   "also emit a gnuplot script to this path");
  add_common(scan);

  CLI::App* qsl = app.add_subcommand(
      "qsl", "tabulate BBB time against MT/ML quantum speed limits");
  qsl->add_option("--D", qopt.D, "transport distance");
  qsl->add_option("--omega", qopt.omega, "trap frequency");
  qsl->add_option("--r-min", qopt.r_min, "grid start (default D)");
  qsl->add_option("--r-max", qopt.r_max, "grid end (default 100 D)");
  qsl->add_option("--n", qopt.n, "number of log-spaced grid points");
  add_common(qsl);

  CLI::App* convert =
      app.add_subcommand("convert", "physical <-> dimensionless units");
  convert->add_option("--mass-amu", copt.mass_amu, "particle mass in amu");
  convert->add_option("--mass-kg", copt.mass_kg, "particle mass in kg");
  convert->add_option("--freq-mhz", copt.freq_mhz,
                      "cyclic trap frequency in MHz (omega = 2 pi f)");
  convert->add_option("--freq-hz", copt.freq_hz, "cyclic trap frequency in Hz");
  convert->add_option("--omega-rad-s", copt.omega_rad_s,
                      "angular trap frequency in rad/s");
  convert->add_option("--distance-um", copt.distance_um,
                      "transport distance in micrometers");
  convert->add_option("--distance-m", copt.distance_m,
                      "transport distance in meters");
  add_common(convert);

  // Config file pre-pass: locate --config and install its values as
  // defaults on the invoked subcommand before parsing.
  try {
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config" && argc >= 2) {
        CLI::App* sub = app.get_subcommand_no_throw(argv[1]);
        if (sub != nullptr) apply_config_defaults(sub, argv[i + 1]);
        break;
      }
    }
  } catch (const qct::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (protocol->parsed()) return cmd_protocol(common, popt);
    if (simulate->parsed()) return cmd_simulate(common, popt, sopt);
    if (scan->parsed()) return cmd_scan(common, scopt);
    if (qsl->parsed()) return cmd_qsl(common, qopt);
    if (convert->parsed()) return cmd_convert(common, copt);
  } catch (const qct::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitOk;
}
