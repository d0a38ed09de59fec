#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qct/errors.hpp"
#include "qct/fidelity.hpp"
#include "qct/protocols.hpp"
#include "qct/squeeze.hpp"

using namespace qct;

namespace {
constexpr double kPi = std::numbers::pi;

GaussianState random_pure_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> um(-4.0, 4.0);
  std::uniform_real_distribution<double> ur(-0.8, 0.8);
  std::uniform_real_distribution<double> ua(0.0, kPi);
  GaussianState s = GaussianState::ground(Frame{1.0});
  s.mean = {um(rng), um(rng)};
  const double stretch = std::exp(ur(rng));
  s.cov = Mat2::diagonal(0.25 * stretch, 0.25 / stretch);
  s.cov = sandwich(clockwise_rotation(ua(rng)), s.cov);
  return s;
}
}  // namespace

TEST_CASE("identical states have unit fidelity") {
  const GaussianState g = GaussianState::ground(Frame{1.0}, 2.0);
  CHECK(gaussian_fidelity(g, g) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("displaced ground states: exp(-D^2) in probability") {
  const GaussianState a = GaussianState::ground(Frame{1.0}, 0.0);
  const GaussianState b = GaussianState::ground(Frame{1.0}, 3.0);
  const double f = gaussian_fidelity(a, b);
  CHECK(f == doctest::Approx(std::exp(-9.0)).epsilon(1e-13));
  // amplitude overlap ~ 1.11%, fidelity ~ 1.23e-4
  CHECK(f == doctest::Approx(1.234e-4).epsilon(1e-3));
}

TEST_CASE("closed form matches wavefunction quadrature on random pure states") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const GaussianState a = random_pure_state(rng);
    const GaussianState b = random_pure_state(rng);
    const double closed = gaussian_fidelity(a, b);
    const double quad =
        oracles::overlap_fidelity_quadrature(a, b, -40.0, 40.0, 120001);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("post-BBB state is the destination ground state") {
  const EvolutionResult evo = evolve_schedule(bbb_schedule({6.0, 6.0, 1.0}));
  const GaussianState target = GaussianState::ground(Frame{1.0}, 6.0);
  CHECK(1.0 - gaussian_fidelity(evo.final_state, target) < 1e-12);
}

TEST_CASE("mixed covariance and frame mismatch are rejected") {
  const GaussianState g = GaussianState::ground(Frame{1.0});
  GaussianState mixed = g;
  mixed.cov = Mat2::diagonal(0.5, 0.5);  // det = 1/4: not pure
  CHECK_THROWS_AS(gaussian_fidelity(g, mixed), UnsupportedStateError);

  const GaussianState other = GaussianState::ground(Frame{2.0});
  CHECK_THROWS_AS(gaussian_fidelity(g, other), FrameMismatchError);
}

TEST_CASE("fidelity is invariant under a common frame change") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const GaussianState a = random_pure_state(rng);
    const GaussianState b = random_pure_state(rng);
    const double f0 = gaussian_fidelity(a, b);
    const double f1 =
        gaussian_fidelity(change_frame(a, 2.0), change_frame(b, 2.0));
    CHECK(f0 == doctest::Approx(f1).epsilon(1e-12));
  }
}

TEST_CASE("gaussian oracle on protocols") {
  CHECK(gaussian_oracle(bb_schedule(6.0, 1.0)).fidelity ==
        doctest::Approx(1.0).epsilon(1e-12));
  const FidelityResult r = gaussian_oracle(bbb_schedule({6.0, 4.5, 1.0}));
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.residual_momentum < 1e-10);
}

TEST_CASE("default grid covers the schedule") {
  const GridConfig cfg = default_grid(bbb_schedule({6.0, 6.0, 1.0}));
  CHECK(cfg.x_min == doctest::Approx(-8.0));
  CHECK(cfg.x_max == doctest::Approx(6.0 + 12.0 + 8.0));
  CHECK(cfg.n_points == 4096);
  CHECK(cfg.dt == doctest::Approx(0.0005));
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("grid config validation") {
  GridConfig bad;
  bad.n_points = 1000;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.n_points = 512;  // too small
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  GridConfig coarse = default_grid(bb_schedule(6.0, 1.0));
  coarse.dt = 0.02;  // dt * omega_max > 0.01
  CHECK_THROWS_AS(grid_propagate(bb_schedule(6.0, 1.0), coarse),
                  ValidationError);

  GridConfig narrow = default_grid(bb_schedule(6.0, 1.0));
  narrow.x_max = 7.0;  // misses [D-5w, D+5w]
  CHECK_THROWS_AS(grid_propagate(bb_schedule(6.0, 1.0), narrow),
                  ValidationError);
}

TEST_CASE("grid oracle: BB and BBB transport fidelities") {
  for (const Schedule& s :
       {bb_schedule(6.0, 1.0), bbb_schedule({6.0, 6.0, 1.0})}) {
    const FidelityResult r = grid_propagate(s, default_grid(s));
    CHECK(r.fidelity >= 1.0 - 1e-6);
    CHECK(r.norm_drift < 1e-10);
    CHECK(r.residual_momentum < 1e-6);
  }
}

TEST_CASE("truncated BBB matches the gaussian prediction mid-protocol") {
  const Schedule full = bbb_schedule({6.0, 6.0, 1.0});
  const double tau = full.total_time();
  for (double frac : {0.5, 0.75}) {
    const Schedule part = truncate_schedule(full, frac * tau);
    const FidelityResult grid = grid_propagate(part, default_grid(full));
    const FidelityResult gauss = gaussian_oracle(part);
    CHECK(std::abs(grid.fidelity - gauss.fidelity) < 1e-5);
  }
}

TEST_CASE("cross validation of BB, BBB and DSBBB") {
  const Schedule bb = bb_schedule(6.0, 1.0);
  const CrossReport r1 = cross_validate(bb, default_grid(bb));
  CHECK(r1.gap < 1e-5);
  CHECK(r1.at_rest);

  const Schedule bbb = bbb_schedule({6.0, 6.0, 1.0});
  const CrossReport r2 = cross_validate(bbb, default_grid(bbb));
  CHECK(r2.gap < 1e-5);

  const Schedule ds = dsbbb_schedule({1.0, 2.0, 1.0, kPi / 8.0, 60.0, 6.0});
  const CrossReport r3 = cross_validate(ds, default_grid(ds));
  CHECK(r3.gap < 1e-5);
  CHECK(r3.grid.fidelity >= 1.0 - 1e-6);
}

TEST_CASE("grid states stay gaussian: excess kurtosis below 1e-6") {
  const Schedule s = bbb_schedule({6.0, 6.0, 1.0});
  double worst = 0.0;
  grid_propagate(s, default_grid(s),
                 [&](double, std::span<const std::complex<double>> psi,
                     std::span<const double> x) {
                   const auto m = oracles::density_moments(psi, x);
                   worst = std::max(worst, std::abs(m.excess_kurtosis));
                 });
  CHECK(worst < 1e-6);
}

TEST_CASE("grid fidelity error converges at order >= 2 in dt") {
  const Schedule s = bbb_schedule({6.0, 6.0, 1.0});
  GridConfig cfg = default_grid(s);
  std::vector<double> errs;
  for (double dt : {0.01, 0.005, 0.0025}) {
    cfg.dt = dt;
    errs.push_back(1.0 - grid_propagate(s, cfg).fidelity);
  }
  REQUIRE(errs[0] > 1e-13);  // above the noise floor
  const double order1 = std::log2(errs[0] / errs[1]);
  const double order2 = std::log2(errs[1] / errs[2]);
  CHECK(order1 >= 2.0);
  CHECK(order2 >= 2.0);
}

TEST_CASE("energy is conserved within segments at fine dt") {
  const Schedule s = bb_schedule(6.0, 1.0);
  GridConfig cfg;
  cfg.x_min = -8.0;
  cfg.x_max = 20.0;
  cfg.n_points = 2048;
  cfg.dt = 1e-4;
  const FidelityResult r = grid_propagate(s, cfg);
  CHECK(r.energy_drift < 1e-8);
}

TEST_CASE("escaping wavepacket raises a domain error with suggested bounds") {
  Schedule runaway;
  runaway.initial_frame = Frame{1.0};
  runaway.segments = {{20.0, Frame{1.0}, kPi}};  // swings out to x = 40
  runaway.final_center = 0.0;
  runaway.final_frame = Frame{1.0};

  GridConfig cfg;
  cfg.x_min = -4.0;
  cfg.x_max = 30.0;
  cfg.n_points = 2048;
  cfg.dt = 0.002;
  try {
    grid_propagate(runaway, cfg);
    FAIL("expected GridDomainError");
  } catch (const GridDomainError& e) {
    CHECK(std::string(e.what()).find("suggested") != std::string::npos);
  }
}

TEST_CASE("empty schedule has unit fidelity on the grid") {
  Schedule s;
  s.initial_frame = Frame{1.0};
  s.final_frame = Frame{1.0};
  GridConfig cfg;
  cfg.x_min = -8.0;
  cfg.x_max = 8.0;
  const FidelityResult r = grid_propagate(s, cfg);
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
}
