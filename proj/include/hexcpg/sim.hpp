#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "hexcpg/core.hpp"
#include "hexcpg/gaits.hpp"

namespace hexcpg {

using Rng = std::mt19937_64;

/// Uniform draw in [0, 1) built directly on the generator's bits, so traces
/// are identical across standard library implementations.
double uniform01(Rng& rng);

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  static Range symmetric(double half_width) { return {-half_width, half_width}; }
  bool operator==(const Range&) const = default;
};

/// Additive uniform kicks to the state variables. Phase in rad, amplitude
/// and offset in deg.
struct Perturbation {
  Range phi;
  Range r;
  Range x;
  Range r_dot;
  Range x_dot;
  std::optional<std::size_t> target;  // zero-based oscillator, all when empty

  void validate(std::size_t n) const;
  bool operator==(const Perturbation&) const = default;
};

/// Adds independent uniform samples to the targeted variables. Variables
/// whose range is a single point get that constant without consuming draws.
NetworkState inject_perturbation(const NetworkState& states, const Perturbation& p, Rng& rng);

struct Event {
  double time = 0.0;
  std::variant<ParamUpdate, Perturbation> action;
  std::string label;  // free-form, written to the events sidecar
};

enum class InitialPolicy { rest, random_phase };

struct Schedule {
  double start_time = 0.0;
  double duration = 0.0;
  double dt = 0.01;
  Integrator integrator = Integrator::euler;
  NetworkParams params;
  InitialPolicy initial = InitialPolicy::rest;
  /// Overrides the policy when set.
  std::optional<NetworkState> initial_state;
  std::uint64_t seed = 0;
  std::vector<Event> events;
  std::size_t decimation = 1;

  std::size_t steps() const;
  void validate() const;
};

inline constexpr std::size_t kMaxUndecimatedSamples = 100000;

struct EventMarker {
  double time = 0.0;            // step boundary where the event was applied
  double requested_time = 0.0;  // time given in the schedule
  std::string kind;             // "param_update" or "perturbation"
  std::string details;

  bool operator==(const EventMarker&) const = default;
};

/// Uniformly sampled record of a run. Every sample holds the full state and
/// the output angles (deg).
struct Trace {
  std::size_t n = 0;
  double dt = 0.0;  // sample spacing
  std::vector<double> time;
  std::vector<NetworkState> states;
  std::vector<std::vector<double>> theta;
  std::vector<EventMarker> markers;

  std::size_t size() const noexcept { return time.size(); }
  void push(double t, NetworkState state);
};

/// Step-by-step execution of a schedule. Events fire at the first step
/// boundary at or after their time, as soon as that boundary is reached.
class Simulation {
 public:
  /// Validates the schedule, draws the initial state and applies events due
  /// at the first boundary.
  explicit Simulation(Schedule schedule);

  /// One integrator step followed by the events due at the new boundary.
  /// Divergence errors carry the simulation time.
  void advance();

  bool done() const noexcept { return index_ == steps_; }
  std::size_t step_index() const noexcept { return index_; }
  std::size_t total_steps() const noexcept { return steps_; }
  double time() const noexcept;
  const NetworkState& state() const noexcept { return state_; }
  const NetworkParams& params() const noexcept { return params_; }
  const std::vector<EventMarker>& markers() const noexcept { return markers_; }
  const Schedule& schedule() const noexcept { return schedule_; }

 private:
  void apply_due_events();

  Schedule schedule_;
  Rng rng_;
  NetworkState state_;
  NetworkParams params_;
  std::size_t steps_ = 0;
  std::size_t index_ = 0;
  std::size_t next_event_ = 0;
  std::vector<EventMarker> markers_;
};

/// Integrates the whole schedule, keeping every `decimation`-th boundary
/// (events at a boundary are applied before it is recorded).
Trace run(const Schedule& schedule);

/// Parameters in force after every update in the schedule.
NetworkParams final_params(const Schedule& schedule);

/// The initial state the schedule's policy produces, consuming from rng.
NetworkState initial_state(const Schedule& schedule, Rng& rng);

/// Phases satisfying phi_j - phi_i = phase_bias(i, j) (mod 2 pi) for every
/// coupled pair. The first oscillator of each connected group sits at phase
/// 0. Throws ValidationError when the biases around a cycle are inconsistent.
std::vector<double> locked_phases(const NetworkParams& params);

/// State sitting on the gait's limit cycle: locked phases, r = R, x = X.
NetworkState locked_state(const NetworkParams& params);

/// Event kind label used by markers and the sidecar.
std::string event_kind(const Event& e);
std::string describe(const ParamUpdate& u);
std::string describe(const Perturbation& p);

/// Canned experiments behind the demo command.
struct DemoOptions {
  std::uint64_t seed = 1;
  double omega = kTwoPi;  // rad/s
  double dt = 0.01;
  Integrator integrator = Integrator::euler;
  std::size_t decimation = 1;
};

/// Random phases at rest, ramp-in of `first` at 0 s, `second` at 12 s,
/// `third` at 20 s, 30 s long.
///
/// Switching between two of the walking gaits from a locked state flips one
/// phase bias by exactly pi, which leaves that coupling on the unstable
/// equilibrium of sin(); the network then only escapes through rounding noise.
/// The default sequence passes through sync_default so every switch starts
/// away from such an equilibrium.
Schedule transitions_demo(const DemoOptions& opts = {}, const std::string& first = "forward",
                          const std::string& second = "sync_default",
                          const std::string& third = "backward");

/// Locked forward gait kicked by +-0.5 on (phi, r, x) at 2, 8 and 14 s.
Schedule recovery_demo(const DemoOptions& opts = {});

/// sync_default from random phases with a ramp-in at 0 s, 10 s long.
Schedule sync_demo(const DemoOptions& opts = {});

inline constexpr double kTransitionTimes[] = {12.0, 20.0};
inline constexpr double kTransitionsDuration = 30.0;

}  // namespace hexcpg
