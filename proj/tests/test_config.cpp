#include <string>

#include "doctest.h"
#include "hexcpg/config.hpp"
#include "hexcpg/errors.hpp"
#include "support.hpp"

using namespace hexcpg;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"({"gait": {"preset": "forward"}, "schedule": {"seed": 3}})";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal config takes the defaults") {
  const Config c = parse_config(kMinimal);
  CHECK(c.network.n == 3);
  CHECK(c.network.frequency_hz == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(c.gait.preset == "forward");
  CHECK(c.schedule.seed == 3);
  CHECK(c.schedule.duration_s == 10.0);
  CHECK(c.schedule.dt_s == 0.01);
  CHECK(c.schedule.integrator == Integrator::euler);
  CHECK(c.schedule.initial == InitialSpec::random_phase);
  CHECK(c.schedule.ramp_in);
  CHECK(c.output.path == "trace.csv");
  CHECK(c.output.decimation == 1);
}

TEST_CASE("syntax errors report the position") {
  const std::string msg = parse_error_of("{\n  \"gait\": {\"preset\": \"forward\"},\n  \"schedule\": {\"seed\": }\n}");
  CHECK(msg.find("cfg.json:3:") != std::string::npos);
}

TEST_CASE("schema errors name the key") {
  CHECK(parse_error_of(R"({"gait": {"preset": "forward"}, "schedule": {"seed": 1, "speed": 2}})")
            .find("schedule.speed") != std::string::npos);
  CHECK(parse_error_of(R"({"gait": {"preset": "forward"}, "schedule": {"dt_s": 0.01}})")
            .find("schedule.seed") != std::string::npos);
  CHECK(parse_error_of(R"({"schedule": {"seed": 1}})").find("gait") != std::string::npos);
  CHECK(parse_error_of(R"({"gait": {"preset": 4}, "schedule": {"seed": 1}})")
            .find("gait.preset") != std::string::npos);
  CHECK(parse_error_of(R"({"gait": {"preset": "forward"}, "schedule": {"seed": -1}})")
            .find("schedule.seed") != std::string::npos);
  CHECK(parse_error_of(R"({"gait": {"phase_bias_rad": [[0, "tau"]]}, "schedule": {"seed": 1}})")
            .find("gait.phase_bias_rad") != std::string::npos);
  CHECK(parse_error_of(R"({"gait": {"preset": "forward"}, "schedule": {"seed": 1,
      "events": [{"time_s": 1, "gait": "backward", "perturb": {"phi_rad": 0.1}}]}})")
            .find("schedule.events[0]") != std::string::npos);
}

TEST_CASE("pi expressions in phase biases") {
  const Config c = parse_config(R"({
    "gait": {"coupling": [[0, 0.5], [0.5, 0]],
             "phase_bias_rad": [[0, "-pi/2"], ["pi/2", 0]],
             "amplitude_deg": [10, 20]},
    "network": {"n": 2, "frequency_hz": 2},
    "schedule": {"seed": 1}})");
  REQUIRE(c.gait.phase_bias);
  CHECK((*c.gait.phase_bias)(0, 1) == -kPi / 2);
  CHECK((*c.gait.phase_bias)(1, 0) == kPi / 2);
  const Schedule s = to_schedule(c);
  CHECK(s.params.omega == std::vector<double>{2 * kTwoPi, 2 * kTwoPi});
}

TEST_CASE("to_schedule: presets, overrides and ramp-in") {
  Config c = parse_config(R"({"gait": {"preset": "forward", "amplitude_deg": [6, 20, 20]},
                              "schedule": {"seed": 1, "events": [{"time_s": 5, "gait": "backward"}]}})");
  const Schedule s = to_schedule(c);
  CHECK(s.params.target_amplitude == std::vector<double>{0.0, 0.0, 0.0});
  REQUIRE(s.events.size() == 2);
  CHECK(s.events[0].label == "ramp-in");
  CHECK(s.events[1].label == "gait=backward");
  const NetworkParams p = final_params(s);
  CHECK(p.phase_bias == preset("backward").phase_bias);
  CHECK(p.target_amplitude == preset("backward").target_amplitude);
  CHECK(p.omega[0] == kTwoPi);

  c.schedule.ramp_in = false;
  c.schedule.events.clear();
  CHECK(to_schedule(c).params.target_amplitude == std::vector<double>{6.0, 20.0, 20.0});
  c.schedule.initial = InitialSpec::locked;
  CHECK(to_schedule(c).initial_state.has_value());
}

TEST_CASE("to_schedule: semantic errors") {
  Config c = parse_config(R"({"gait": {"preset": "forward", "coupling": [[0,0,0],[0.5,0.4,0],[0.5,0,0]]},
                              "schedule": {"seed": 1}})");
  try {
    to_schedule(c);
    FAIL("expected validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("coupling(2,2)") != std::string::npos);
  }
  c = parse_config(R"({"gait": {"preset": "trot"}, "schedule": {"seed": 1}})");
  CHECK_THROWS_AS(to_schedule(c), LookupError);
  c = parse_config(R"({"gait": {"preset": "forward"}, "network": {"n": 2}, "schedule": {"seed": 1}})");
  CHECK_THROWS_AS(to_schedule(c), ValidationError);
  c = parse_config(R"({"gait": {"preset": "forward"}, "schedule": {"seed": 1, "dt_s": 20}})");
  CHECK_THROWS_AS(to_schedule(c), ValidationError);
  c = parse_config(R"({"gait": {"preset": "forward"}, "schedule": {"seed": 1,
                       "events": [{"time_s": 10, "gait": "backward"}]}})");
  CHECK_THROWS_AS(to_schedule(c), ValidationError);
}

TEST_CASE("property: dump and parse round-trip") {
  std::vector<Config> configs;
  configs.push_back(parse_config(kMinimal));
  configs.push_back(parse_config(R"({
    "network": {"n": 3, "frequency_hz": [1.0, 1.5, 0.75], "a_r": 3, "a_x": 1.5},
    "gait": {"preset": "counter_phase_sides", "offset_deg": [1, -2, 0.5],
             "phase_bias_rad": [[0, 0, 0], ["pi/2", 0, "pi"], [0.1234, "-pi", 0]]},
    "schedule": {"duration_s": 30, "dt_s": 0.005, "seed": 18446744073709551615,
                 "integrator": "rk4", "initial": "locked", "ramp_in": false,
                 "events": [{"time_s": 1, "gait": "backward", "label": "turn"},
                            {"time_s": 2, "update": {"amplitude_deg": [0, 0, 0], "frequency_hz": [2, 2, 2]}},
                            {"time_s": 3, "perturb": {"phi_rad": 0.5, "r_deg": [0, 1], "target": 2}}]},
    "output": {"path": "out/run.csv", "decimation": 5, "stream": true}})"));
  Config tweaked = configs[0];
  tweaked.schedule.dt_s = 0.1 + 0.2;  // not representable as a short decimal
  tweaked.gait.amplitude_deg = std::vector<double>{1.0 / 3.0, 7.0, 1e-7};
  configs.push_back(tweaked);

  for (const auto& c : configs) {
    const std::string text = dump_config(c);
    CAPTURE(text);
    const Config back = parse_config(text);
    CHECK(back == c);
    CHECK(dump_config(back) == text);
  }
}

}  // TEST_SUITE
