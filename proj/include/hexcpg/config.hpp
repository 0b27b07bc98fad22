#pragma once

// Experiment configuration documents (JSON).
//
//   {
//     "network":  {"n": 3, "frequency_hz": 1.0, "a_r": 2, "a_x": 2},
//     "gait":     {"preset": "forward", "amplitude_deg": [12, 40, 40]},
//     "schedule": {"duration_s": 10, "dt_s": 0.01, "seed": 7,
//                  "integrator": "euler", "initial": "random_phase",
//                  "ramp_in": true,
//                  "events": [{"time_s": 12, "gait": "backward"},
//                             {"time_s": 14, "perturb": {"phi_rad": 0.5}}]},
//     "output":   {"path": "trace.csv", "decimation": 1, "stream": false}
//   }
//
// Amplitudes and offsets are degrees, phase biases radians (numbers or pi
// expressions such as "-pi/2"), frequencies Hz. Unknown keys are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hexcpg/gaits.hpp"
#include "hexcpg/sim.hpp"

namespace hexcpg {

/// Gait tables as written in a config: an optional preset plus overrides.
struct GaitSpec {
  std::optional<std::string> preset;
  std::optional<SquareMatrix> coupling;
  std::optional<SquareMatrix> phase_bias;          // rad
  std::optional<std::vector<double>> amplitude_deg;
  std::optional<std::vector<double>> offset_deg;

  bool operator==(const GaitSpec&) const = default;
};

struct UpdateSpec {
  GaitSpec gait;
  std::optional<std::vector<double>> frequency_hz;

  bool operator==(const UpdateSpec&) const = default;
};

struct GaitSwitch {
  std::string preset;
  bool operator==(const GaitSwitch&) const = default;
};

struct EventSpec {
  double time_s = 0.0;
  std::string label;
  std::variant<GaitSwitch, UpdateSpec, Perturbation> action;

  bool operator==(const EventSpec&) const = default;
};

enum class InitialSpec { rest, random_phase, locked };

struct Config {
  struct Network {
    std::size_t n = 3;
    std::vector<double> frequency_hz{1.0, 1.0, 1.0};
    double a_r = 2.0;
    double a_x = 2.0;
    bool operator==(const Network&) const = default;
  } network;

  GaitSpec gait;

  struct ScheduleSection {
    double duration_s = 10.0;
    double dt_s = 0.01;
    std::uint64_t seed = 0;
    Integrator integrator = Integrator::euler;
    InitialSpec initial = InitialSpec::random_phase;
    bool ramp_in = true;
    std::vector<EventSpec> events;
    bool operator==(const ScheduleSection&) const = default;
  } schedule;

  struct Output {
    std::string path = "trace.csv";
    std::size_t decimation = 1;
    bool stream = false;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const Config&) const = default;
};

/// Parses and schema-checks a document. Syntax errors, unknown keys, wrong
/// types and missing required keys (gait, schedule.seed) raise ParseError.
Config parse_config(std::string_view text, std::string_view source = "config");

/// Reads a file and parses it.
Config load_config(const std::string& path);

/// Canonical JSON text of a config; parse_config(dump_config(c)) == c.
std::string dump_config(const Config& config);

/// Resolves presets and units into a runnable schedule and validates it.
/// Semantic problems raise ValidationError, ContractError or LookupError.
Schedule to_schedule(const Config& config,
                     const GaitRegistry& registry = GaitRegistry::bundled());

}  // namespace hexcpg
