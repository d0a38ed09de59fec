#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qct/errors.hpp"
#include "qct/protocols.hpp"
#include "qct/schedule.hpp"

using namespace qct;

namespace {
constexpr double kPi = std::numbers::pi;

GaussianState unit_ground() { return GaussianState::ground(Frame{1.0}); }

double max_cov_diff(const Mat2& a, const Mat2& b) {
  return std::max(std::max(std::abs(a.xx - b.xx), std::abs(a.xp - b.xp)),
                  std::max(std::abs(a.px - b.px), std::abs(a.pp - b.pp)));
}
}  // namespace

TEST_CASE("rotate_about half and quarter turns") {
  const double R = 2.5;
  GaussianState s = unit_ground();

  const GaussianState half = rotate_about(s, R, kPi);
  CHECK(half.mean.x == doctest::Approx(2.0 * R).epsilon(1e-14));
  CHECK(half.mean.p == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  const GaussianState quarter = rotate_about(s, R, kPi / 2.0);
  CHECK(quarter.mean.x == doctest::Approx(R).epsilon(1e-14));
  CHECK(quarter.mean.p == doctest::Approx(R).epsilon(1e-14));
}

TEST_CASE("half turn about D/2 catches the state at D") {
  const double D = 6.0;
  const GaussianState out = rotate_about(unit_ground(), D / 2.0, kPi);
  CHECK(out.mean.x == doctest::Approx(D).epsilon(1e-14));
  CHECK(std::abs(out.mean.p) < 1e-14);
  CHECK(max_cov_diff(out.cov, Mat2::diagonal(0.25, 0.25)) < 1e-15);
}

TEST_CASE("rotations compose and preserve det(cov)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 4.0 * kPi);
  std::uniform_real_distribution<double> um(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    GaussianState s = unit_ground();
    s.mean = {um(rng), um(rng)};
    // arbitrary pure squeezed covariance
    const double r = std::exp(um(rng) / 5.0);
    s.cov = Mat2::diagonal(0.25 * r, 0.25 / r);
    s.cov = sandwich(clockwise_rotation(u(rng)), s.cov);

    const double c = um(rng);
    const double t1 = u(rng), t2 = u(rng);
    const GaussianState two_steps =
        rotate_about(rotate_about(s, c, t1), c, t2);
    const GaussianState one_step = rotate_about(s, c, t1 + t2);
    CHECK(std::abs(two_steps.mean.x - one_step.mean.x) < 1e-12);
    CHECK(std::abs(two_steps.mean.p - one_step.mean.p) < 1e-12);
    CHECK(max_cov_diff(two_steps.cov, one_step.cov) < 1e-12);
    CHECK(det(two_steps.cov) ==
          doctest::Approx(det(s.cov)).epsilon(1e-12));
  }
}

TEST_CASE("negative angle is rejected") {
  CHECK_THROWS_AS(rotate_about(unit_ground(), 0.0, -0.1), ValidationError);
}

TEST_CASE("evolve_segment reaches D after half period about D/2") {
  const double D = 6.0;
  const Frame f{1.0};
  const Segment seg{D / 2.0, f, kPi};
  const GaussianState out = evolve_segment(unit_ground(), seg);
  CHECK(out.mean.x == doctest::Approx(D).epsilon(1e-13));
  CHECK(std::abs(out.mean.p) < 1e-13);
}

TEST_CASE("zero duration segment is the identity") {
  const Segment seg{3.0, Frame{2.0}, 0.0};
  GaussianState s = GaussianState::ground(Frame{2.0}, 1.0);
  s.mean.p = 0.7;
  const GaussianState out = evolve_segment(s, seg);
  CHECK(out.mean.x == s.mean.x);
  CHECK(out.mean.p == s.mean.p);
  CHECK(max_cov_diff(out.cov, s.cov) == 0.0);
}

TEST_CASE("evolve_segment matches the RK4 oracle, frozen midpoint value") {
  // First BBB arc with R = D = 6: after tau/2 the mean must sit at
  // (3, 3*sqrt(3)) = (3, 5.196152422706632); value frozen from the
  // independent RK4 integration of the classical flow.
  const double R = 6.0, D = 6.0;
  const double tau = bbb_time(1.0, R, D);
  const Segment seg{R, Frame{1.0}, tau / 2.0};
  const GaussianState out = evolve_segment(unit_ground(), seg);

  const Vec2 ref = oracles::rk4_orbit({0.0, 0.0}, R, 1.0, tau / 2.0, 200000);
  CHECK(out.mean.x == doctest::Approx(ref.x).epsilon(1e-9));
  CHECK(out.mean.p == doctest::Approx(ref.p).epsilon(1e-9));
  CHECK(out.mean.x == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(out.mean.p == doctest::Approx(5.196152422706632).epsilon(1e-12));
  CHECK(out.mean.p > 0.0);
}

TEST_CASE("covariance conjugation matches the fundamental-matrix oracle") {
  const double omega = 1.7;
  const double duration = 1.1;
  GaussianState s = GaussianState::ground(Frame{omega}, 0.5);
  s.cov = Mat2::diagonal(0.4, 1.0 / 16.0 / 0.4);
  const Segment seg{2.0, Frame{omega}, duration};
  const GaussianState out = evolve_segment(s, seg);

  const Mat2 m = oracles::rk4_fundamental(omega, duration, 100000);
  const Mat2 ref = sandwich(m, s.cov);
  CHECK(max_cov_diff(out.cov, ref) < 1e-9);
}

TEST_CASE("frame mismatch is an error") {
  const Segment seg{1.0, Frame{2.0}, 0.5};
  CHECK_THROWS_AS(evolve_segment(unit_ground(), seg), FrameMismatchError);
}

TEST_CASE("ground state at the trap center is a fixed point") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double c = u(rng) - 5.0;
    const Frame f{0.5 + u(rng)};
    const GaussianState g = GaussianState::ground(f, c);
    const GaussianState out = evolve_segment(g, {c, f, u(rng)});
    CHECK(std::abs(out.mean.x - c) < 1e-12);
    CHECK(std::abs(out.mean.p) < 1e-12);
    CHECK(max_cov_diff(out.cov, g.cov) < 1e-12);
  }
}

TEST_CASE("mean stays on the circle of radius R about (R, 0)") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  const double R = 4.0;
  GaussianState s = unit_ground();  // at origin: distance R from (R, 0)
  for (int i = 0; i < 100; ++i) {
    s = evolve_segment(s, {R, Frame{1.0}, u(rng)});
    const double dist = std::hypot(s.mean.x - R, s.mean.p);
    CHECK(dist == doctest::Approx(R).epsilon(1e-12));
  }
}

TEST_CASE("BB schedule transports the ground state") {
  const double D = 6.0;
  const EvolutionResult evo = evolve_schedule(bb_schedule(D, 1.0));
  CHECK(evo.final_state.mean.x == doctest::Approx(D).epsilon(1e-12));
  CHECK(std::abs(evo.final_state.mean.p) < 1e-12);
  CHECK(max_cov_diff(evo.final_state.cov, Mat2::diagonal(0.25, 0.25)) <
        1e-13);
  // shift to D/2, evolve, shift to D
  REQUIRE(evo.events.size() == 3);
  CHECK(evo.events[0].kind == EventKind::Shift);
  CHECK(evo.events[1].kind == EventKind::Evolve);
  CHECK(evo.events[2].kind == EventKind::Shift);
  CHECK(evo.events[1].t_end == doctest::Approx(kPi));
}

TEST_CASE("empty schedule returns the initial state") {
  Schedule s;
  s.initial_frame = Frame{1.0};
  s.final_frame = Frame{1.0};
  s.final_center = 0.0;
  const EvolutionResult evo = evolve_schedule(s);
  CHECK(evo.final_state.mean.x == 0.0);
  CHECK(evo.final_state.mean.p == 0.0);
  CHECK(evo.events.empty());
}

TEST_CASE("BBB schedule: midpoint snapshot and end state") {
  const double D = 6.0;
  const EvolutionResult evo = evolve_schedule(bbb_schedule({D, 6.0, 1.0}));
  CHECK(evo.final_state.mean.x == doctest::Approx(D).epsilon(1e-12));
  CHECK(std::abs(evo.final_state.mean.p) < 1e-12);

  bool found_midpoint = false;
  for (const EvolutionEvent& ev : evo.events) {
    if (ev.kind == EventKind::Evolve &&
        ev.t_end == doctest::Approx(bbb_time(1.0, 6.0, D) / 2.0)) {
      CHECK(ev.after.mean.x == doctest::Approx(D / 2.0).epsilon(1e-12));
      found_midpoint = true;
    }
  }
  CHECK(found_midpoint);
}

TEST_CASE("invalid schedules are rejected before evolution") {
  Schedule s = bb_schedule(6.0, 1.0);
  s.segments[0].duration = -1.0;
  CHECK_THROWS_AS(evolve_schedule(s), ValidationError);

  Schedule s2 = bb_schedule(6.0, 1.0);
  s2.segments[0].frame.omega = -2.0;
  CHECK_THROWS_AS(evolve_schedule(s2), ValidationError);

  Schedule empty_moved;
  empty_moved.final_center = 3.0;  // empty list cannot move the trap
  CHECK_THROWS_AS(evolve_schedule(empty_moved), ValidationError);
}

TEST_CASE("truncate_schedule clips durations") {
  const Schedule s = bbb_schedule({6.0, 6.0, 1.0});
  const double tau = s.total_time();
  const Schedule half = truncate_schedule(s, tau / 2.0);
  CHECK(half.total_time() == doctest::Approx(tau / 2.0));
  CHECK(half.segments.size() == 1);
  const Schedule full = truncate_schedule(s, 2.0 * tau);
  CHECK(full.total_time() == doctest::Approx(tau));
}
