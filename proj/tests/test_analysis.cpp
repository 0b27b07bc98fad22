#include <cmath>
#include <random>

#include "doctest.h"
#include "hexcpg/analysis.hpp"
#include "hexcpg/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hexcpg;

namespace {

Trace sine_trace(double shift, double dt, double duration) {
  Trace t;
  t.n = 1;
  t.dt = dt;
  const auto steps = static_cast<std::size_t>(std::lround(duration / dt));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double time = k * dt;
    NetworkState s(1);
    s[0].phi = time - shift;
    s[0].r = 1.0;
    t.push(time, s);
  }
  return t;
}

NetworkParams two_oscillators(double detune, double w) {
  NetworkParams p = NetworkParams::uncoupled(2, 0.0);
  p.omega = {kTwoPi, kTwoPi + detune};
  p.target_amplitude = {1.0, 1.0};
  p.coupling(0, 1) = p.coupling(1, 0) = w;
  return p;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("wrap_phase examples") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(wrap_phase(-kPi) == kPi);
  CHECK(wrap_phase(kPi) == kPi);
}

TEST_CASE("property: wrap_phase is idempotent, periodic and lands in (-pi, pi]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = u(rng);
    const double w = wrap_phase(a);
    REQUIRE(w > -kPi);
    REQUIRE(w <= kPi);
    REQUIRE(wrap_phase(w) == doctest::Approx(w).epsilon(1e-15));
    REQUIRE(std::abs(wrap_phase(a + kTwoPi * 3) - w) < 1e-12);
    REQUIRE(std::abs(std::remainder(a - w, kTwoPi)) < 1e-12);
  }
}

TEST_CASE("locking_error examples") {
  const NetworkParams sync = test::gait_params("sync_default");
  const LockReport all_equal = locking_error(test::on_targets(sync, {2.0, 2.0, 2.0}), sync);
  CHECK(all_equal.max_error == 0.0);
  CHECK(all_equal.locked);
  CHECK(all_equal.entries.size() == 6);

  const NetworkParams fwd = test::gait_params("forward");
  NetworkState s = test::on_targets(fwd, {0.0, -kPi / 2, kPi / 2});
  const LockReport fixed = locking_error(s, fwd);
  CHECK(fixed.entries.size() == 2);
  CHECK(fixed.max_error < 1e-15);
  CHECK(fixed.locked);

  s[kLeft].phi += 0.3;
  const LockReport displaced = locking_error(s, fwd);
  CHECK(displaced.max_error == doctest::Approx(0.3));
  CHECK(!displaced.locked);
}

TEST_CASE("forward gait converges to its algebraic fixed point") {
  const NetworkParams fwd = test::gait_params("forward");
  std::mt19937_64 rng(4);
  NetworkState s = test::on_targets(fwd, test::random_phases(3, rng));
  for (int k = 0; k < 1000; ++k) s = euler_step(s, fwd, 0.01);
  CHECK(wrap_phase(s[kLeft].phi - s[kMiddle].phi + kPi / 2) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(wrap_phase(s[kRight].phi - s[kMiddle].phi - kPi / 2) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("property: locking error is invariant under a common phase shift") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (const char* name : {"forward", "counter_phase_sides", "sync_default"}) {
    const NetworkParams p = test::gait_params(name);
    for (int trial = 0; trial < 50; ++trial) {
      NetworkState s = test::on_targets(p, test::random_phases(3, rng));
      const double base = locking_error(s, p).max_error;
      const double shift = u(rng);
      for (auto& o : s) o.phi += shift;
      REQUIRE(locking_error(s, p).max_error == doctest::Approx(base).epsilon(1e-9));
    }
  }
}

TEST_CASE("settling_time: already settled trace") {
  const NetworkParams fwd = test::gait_params("forward");
  Schedule s;
  s.duration = 2.0;
  s.params = fwd;
  s.initial_state = locked_state(fwd);
  const auto t = settling_time(run(s), fwd);
  REQUIRE(t.has_value());
  CHECK(*t == 0.0);
}

TEST_CASE("settling_time: amplitude step response matches the oracle") {
  const double expected = oracle::step_settling_time(kDefaultTolerance);
  CHECK(expected == doctest::Approx(6.6384).epsilon(1e-4));
  Schedule s;
  s.duration = 10.0;
  s.dt = 0.01;
  s.integrator = Integrator::rk4;
  s.params = NetworkParams::uncoupled(1, kTwoPi);
  s.params.target_amplitude = {1.0};
  const auto t = settling_time(run(s), s.params);
  REQUIRE(t.has_value());
  CHECK(std::abs(*t - expected) <= 0.01);
}

TEST_CASE("oracle: two-oscillator locking threshold is 2 w r") {
  // Brute-force sweep over the detuning; the onset of drift brackets 2 w r.
  const double k = 0.5;  // w r
  double threshold = 0.0;
  for (double detune = 0.0; detune <= 2.0; detune += 0.01) {
    if (std::abs(oracle::phase_drift_rate(detune, k)) > 1e-3) {
      threshold = detune;
      break;
    }
  }
  CHECK(threshold == doctest::Approx(2 * k).epsilon(0.02));
}

TEST_CASE("settling_time: detuned pair never settles") {
  // Beyond 2 w r the pair drifts; below it the pair frequency-locks with a
  // non-zero coupling argument asin(detune / 2 w r). Neither settles.
  const double w = 0.5;
  for (double detune : {0.5, 1.5, 3.0}) {
    CAPTURE(detune);
    const NetworkParams p = two_oscillators(detune, w);
    Schedule s;
    s.duration = 20.0;
    s.params = p;
    s.initial_state = test::on_targets(p, {0.0, 0.0});
    const Trace t = run(s);
    CHECK(!settling_time(t, p).has_value());
    const double spread = t.states.back()[1].phi - t.states.back()[0].phi;
    if (detune < 2 * w) {
      CHECK(spread == doctest::Approx(std::asin(detune / (2 * w))).epsilon(1e-3));
    } else {
      CHECK(spread > kTwoPi);
    }
  }
}

TEST_CASE("property: settling time is monotone in the tolerance") {
  const Schedule s = transitions_demo();
  const Trace t = run(s);
  const NetworkParams p = final_params(s);
  double previous = 0.0;
  for (double tol : {0.5, 0.1, 0.05, 0.01, 0.005, 0.001}) {
    const auto st = settling_time(t, p, tol);
    REQUIRE(st.has_value());
    CHECK(*st >= previous);
    previous = *st;
  }
}

TEST_CASE("settling_time: requires the final sample to be settled") {
  Trace t = sine_trace(0.0, 0.01, 1.0);
  NetworkParams p = NetworkParams::uncoupled(1, 1.0);
  p.target_amplitude = {2.0};
  CHECK(!settling_time(t, p).has_value());
}

TEST_CASE("compare_to_reference") {
  const Trace a = sine_trace(0.0, 0.01, 20.0);
  const Trace b = sine_trace(0.3, 0.01, 20.0);
  for (double d : compare_to_reference(a, a)) CHECK(d == 0.0);

  const double raw = compare_to_reference(a, b)[0];
  CHECK(raw == doctest::Approx(2 * std::sin(0.15)).epsilon(1e-3));

  CompareOptions aligned;
  aligned.align = Align::phase;
  CHECK(compare_to_reference(a, b, aligned)[0] < 1e-3);

  const Trace short_trace = sine_trace(0.0, 0.01, 10.0);
  CHECK_THROWS_AS(compare_to_reference(a, short_trace), ContractError);
}

TEST_CASE("max pairwise phase difference") {
  NetworkState s(3);
  s[0].phi = 0.1;
  s[1].phi = kTwoPi + 0.3;
  s[2].phi = -0.2;
  CHECK(max_pairwise_phase_difference(s) == doctest::Approx(0.5));
}

}  // TEST_SUITE
