#include "hexcpg/sim.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "hexcpg/analysis.hpp"
#include "hexcpg/errors.hpp"

namespace hexcpg {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

// Slack for event times that land on a step boundary up to rounding.
constexpr double kBoundaryEps = 1e-9;

void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw ValidationError(std::string("perturbation range ") + name + " is not finite");
  if (r.lo > r.hi)
    throw ValidationError(std::string("perturbation range ") + name + " has lo > hi");
}

double draw(const Range& range, Rng& rng) {
  if (range.lo == range.hi) return range.lo;
  return range.lo + (range.hi - range.lo) * uniform01(rng);
}

std::size_t boundary_index(double time, const Schedule& s) {
  const double k = std::ceil((time - s.start_time) / s.dt - kBoundaryEps);
  return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

std::string format_range(const Range& r) {
  std::ostringstream os;
  os << r.lo << ":" << r.hi;
  return os.str();
}

}  // namespace

void Perturbation::validate(std::size_t n) const {
  check_range(phi, "phi");
  check_range(r, "r");
  check_range(x, "x");
  check_range(r_dot, "r_dot");
  check_range(x_dot, "x_dot");
  if (target && *target >= n) {
    throw ValidationError("perturbation target " + std::to_string(*target + 1) +
                          " exceeds network size " + std::to_string(n));
  }
}

NetworkState inject_perturbation(const NetworkState& states, const Perturbation& p, Rng& rng) {
  p.validate(states.size());
  NetworkState out = states;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (p.target && *p.target != i) continue;
    auto& s = out[i];
    s.phi += draw(p.phi, rng);
    s.r += draw(p.r, rng);
    s.x += draw(p.x, rng);
    s.r_dot += draw(p.r_dot, rng);
    s.x_dot += draw(p.x_dot, rng);
    if (!std::isfinite(s.phi) || !std::isfinite(s.r) || !std::isfinite(s.x) ||
        !std::isfinite(s.r_dot) || !std::isfinite(s.x_dot)) {
      throw InputError("perturbation made oscillator " + std::to_string(i + 1) + " non-finite");
    }
  }
  return out;
}

std::size_t Schedule::steps() const {
  return static_cast<std::size_t>(std::floor(duration / dt + kBoundaryEps));
}

void Schedule::validate() const {
  if (!std::isfinite(start_time)) throw ValidationError("start time must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  if (!(duration >= dt) || !std::isfinite(duration))
    throw ValidationError("duration must be finite and at least one step (dt <= duration)");
  if (decimation == 0) throw ValidationError("decimation must be at least 1");
  params.validate();
  if (initial_state) {
    if (initial_state->size() != params.n) {
      throw ContractError("initial state has " + std::to_string(initial_state->size()) +
                          " oscillators, network has " + std::to_string(params.n));
    }
    for (const auto& s : *initial_state) {
      if (!std::isfinite(s.phi) || !std::isfinite(s.r) || !std::isfinite(s.r_dot) ||
          !std::isfinite(s.x) || !std::isfinite(s.x_dot))
        throw InputError("initial state is not finite");
    }
  }
  if (decimation == 1 && steps() + 1 > kMaxUndecimatedSamples) {
    throw ValidationError("run would record " + std::to_string(steps() + 1) +
                          " samples; request a decimation to exceed " +
                          std::to_string(kMaxUndecimatedSamples));
  }
  NetworkParams p = params;
  double previous = start_time;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const Event& e = events[k];
    const std::string who = "event " + std::to_string(k + 1);
    if (!std::isfinite(e.time)) throw ValidationError(who + ": time is not finite");
    if (e.time < start_time || e.time >= start_time + duration) {
      throw ValidationError(who + ": time " + std::to_string(e.time) +
                            " s is outside the run window");
    }
    if (e.time < previous) throw ValidationError(who + ": events must be sorted by time");
    previous = e.time;
    if (const auto* u = std::get_if<ParamUpdate>(&e.action)) {
      p = apply_update(p, *u);
    } else {
      std::get<Perturbation>(e.action).validate(params.n);
    }
  }
}

void Trace::push(double t, NetworkState state) {
  time.push_back(t);
  theta.push_back(output_angles(state));
  states.push_back(std::move(state));
}

NetworkState initial_state(const Schedule& schedule, Rng& rng) {
  if (schedule.initial_state) return *schedule.initial_state;
  NetworkState s(schedule.params.n);
  if (schedule.initial == InitialPolicy::random_phase) {
    for (auto& o : s) o.phi = kTwoPi * uniform01(rng);
  }
  return s;
}

std::string event_kind(const Event& e) {
  return std::holds_alternative<ParamUpdate>(e.action) ? "param_update" : "perturbation";
}

std::string describe(const ParamUpdate& u) {
  std::string fields;
  const auto add = [&](bool present, const char* name) {
    if (present) fields += (fields.empty() ? "" : "+") + std::string(name);
  };
  add(u.omega.has_value(), "omega");
  add(u.target_amplitude.has_value(), "amplitude");
  add(u.target_offset.has_value(), "offset");
  add(u.coupling.has_value(), "coupling");
  add(u.phase_bias.has_value(), "phase_bias");
  return "fields=" + (fields.empty() ? std::string("none") : fields);
}

std::string describe(const Perturbation& p) {
  std::string out =
      "target=" + (p.target ? std::to_string(*p.target + 1) : std::string("all"));
  const auto add = [&](const Range& r, const char* name) {
    if (r.lo != 0.0 || r.hi != 0.0) out += std::string(" ") + name + "=" + format_range(r);
  };
  add(p.phi, "phi_rad");
  add(p.r, "r_deg");
  add(p.x, "x_deg");
  add(p.r_dot, "r_dot_deg_s");
  add(p.x_dot, "x_dot_deg_s");
  return out;
}

Simulation::Simulation(Schedule schedule)
    : schedule_(std::move(schedule)), rng_(schedule_.seed) {
  schedule_.validate();
  state_ = initial_state(schedule_, rng_);
  params_ = schedule_.params;
  steps_ = schedule_.steps();
  apply_due_events();
}

double Simulation::time() const noexcept {
  return schedule_.start_time + static_cast<double>(index_) * schedule_.dt;
}

void Simulation::advance() {
  if (done()) throw ContractError("simulation already reached the end of its schedule");
  try {
    state_ = step(schedule_.integrator, state_, params_, schedule_.dt);
  } catch (const DivergenceError& err) {
    throw err.at_time(schedule_.start_time + static_cast<double>(index_ + 1) * schedule_.dt);
  }
  ++index_;
  apply_due_events();
}

void Simulation::apply_due_events() {
  const auto& events = schedule_.events;
  while (next_event_ < events.size() &&
         boundary_index(events[next_event_].time, schedule_) <= index_) {
    const Event& e = events[next_event_++];
    std::string details;
    if (const auto* u = std::get_if<ParamUpdate>(&e.action)) {
      params_ = apply_update(params_, *u);
      details = describe(*u);
    } else {
      const auto& p = std::get<Perturbation>(e.action);
      state_ = inject_perturbation(state_, p, rng_);
      details = describe(p);
    }
    if (!e.label.empty()) details = e.label + " " + details;
    markers_.push_back({time(), e.time, event_kind(e), std::move(details)});
  }
}

Trace run(const Schedule& schedule) {
  Simulation sim(schedule);
  const std::size_t decimation = schedule.decimation;
  Trace trace;
  trace.n = schedule.params.n;
  trace.dt = schedule.dt * static_cast<double>(decimation);
  const std::size_t samples = sim.total_steps() / decimation + 1;
  trace.time.reserve(samples);
  trace.states.reserve(samples);
  trace.theta.reserve(samples);
  for (;;) {
    if (sim.step_index() % decimation == 0) trace.push(sim.time(), sim.state());
    if (sim.done()) break;
    sim.advance();
  }
  trace.markers = sim.markers();
  return trace;
}

NetworkParams final_params(const Schedule& schedule) {
  NetworkParams p = schedule.params;
  for (const auto& e : schedule.events) {
    if (const auto* u = std::get_if<ParamUpdate>(&e.action)) p = apply_update(p, *u);
  }
  return p;
}

std::vector<double> locked_phases(const NetworkParams& params) {
  params.validate();
  const std::size_t n = params.n;
  std::vector<double> phase(n, 0.0);
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] || v == u) continue;
        if (params.coupling(v, u) != 0.0) {
          phase[v] = phase[u] - params.phase_bias(v, u);
        } else if (params.coupling(u, v) != 0.0) {
          phase[v] = phase[u] + params.phase_bias(u, v);
        } else {
          continue;
        }
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  NetworkState probe(n);
  for (std::size_t i = 0; i < n; ++i) probe[i].phi = phase[i];
  const LockReport report = locking_error(probe, params, 1e-9);
  if (!report.locked) {
    throw ValidationError("phase biases admit no locked state (cycle mismatch " +
                          std::to_string(report.max_error) + " rad)");
  }
  return phase;
}

NetworkState locked_state(const NetworkParams& params) {
  const auto phase = locked_phases(params);
  NetworkState s(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    s[i].phi = phase[i];
    s[i].r = params.target_amplitude[i];
    s[i].x = params.target_offset[i];
  }
  return s;
}

namespace {

Schedule ramped(const GaitPreset& gait, const DemoOptions& opts, double duration) {
  Schedule s;
  s.duration = duration;
  s.dt = opts.dt;
  s.integrator = opts.integrator;
  s.seed = opts.seed;
  s.decimation = opts.decimation;
  s.initial = InitialPolicy::random_phase;
  s.params = hexapod_params(gait, opts.omega);
  s.params.target_amplitude.assign(kHexapodJoints, 0.0);
  ParamUpdate ramp;
  ramp.target_amplitude = gait.target_amplitude;
  s.events.push_back({0.0, ramp, "ramp-in gait=" + gait.name});
  return s;
}

}  // namespace

Schedule transitions_demo(const DemoOptions& opts, const std::string& first,
                          const std::string& second, const std::string& third) {
  Schedule s = ramped(preset(first), opts, kTransitionsDuration);
  s.events.push_back({kTransitionTimes[0], update_for(preset(second)), "gait=" + second});
  s.events.push_back({kTransitionTimes[1], update_for(preset(third)), "gait=" + third});
  return s;
}

Schedule recovery_demo(const DemoOptions& opts) {
  Schedule s;
  s.duration = 20.0;
  s.dt = opts.dt;
  s.integrator = opts.integrator;
  s.seed = opts.seed;
  s.decimation = opts.decimation;
  s.params = hexapod_params(preset("forward"), opts.omega);
  s.initial_state = locked_state(s.params);
  Perturbation kick;
  kick.phi = Range::symmetric(0.5);
  kick.r = Range::symmetric(0.5);
  kick.x = Range::symmetric(0.5);
  for (double t : {2.0, 8.0, 14.0}) s.events.push_back({t, kick, ""});
  return s;
}

Schedule sync_demo(const DemoOptions& opts) {
  return ramped(preset("sync_default"), opts, 10.0);
}

}  // namespace hexcpg
