#include "hexcpg/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "hexcpg/analysis.hpp"
#include "hexcpg/errors.hpp"
#include "hexcpg/trace_io.hpp"
#include "json_util.hpp"

namespace hexcpg {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const LookupError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ContractError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InputError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string format_settling(const std::optional<double>& t) {
  return t ? format_fixed(*t, 3) : std::string("none");
}

std::string joined(const std::vector<double>& v, int decimals) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + format_fixed(x, decimals);
  return s;
}

std::string matrix_line(const SquareMatrix& m, bool angles) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) s += " | ";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) s += " ";
      const auto v = angles ? detail::angle_to_json(m(i, j)) : detail::json(m(i, j));
      s += v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return s;
}

void print_summary(const Trace& trace, const NetworkParams& params, std::ostream& out) {
  const LockReport lock = locking_error(trace.states.back(), params);
  out << "samples=" << trace.size() << " t_end_s=" << format_fixed(trace.time.back(), 3)
      << " settling_time_s=" << format_settling(settling_time(trace, params))
      << " final_locking_error_rad=" << format_sci(lock.max_error)
      << " locked=" << (lock.locked ? "yes" : "no") << '\n';
}

}  // namespace

void apply_overrides(Config& config, const SimulateOverrides& o) {
  if (o.duration) config.schedule.duration_s = *o.duration;
  if (o.dt) config.schedule.dt_s = *o.dt;
  if (o.seed) config.schedule.seed = *o.seed;
  if (o.integrator) config.schedule.integrator = *o.integrator;
  if (o.output) config.output.path = *o.output;
  if (o.decimation) config.output.decimation = *o.decimation;
}

int cmd_simulate(const std::string& config_path, const SimulateOverrides& overrides,
                 std::ostream& out, std::ostream& err, const GaitRegistry& registry) {
  return guarded(err, [&] {
    Config config = load_config(config_path);
    apply_overrides(config, overrides);
    const Schedule schedule = to_schedule(config, registry);
    const Trace trace = run(schedule);
    save_trace(trace, config.output.path);
    if (config.output.stream) {
      for (std::size_t k = 0; k < trace.size(); ++k) {
        out << format_fixed(trace.time[k], 3);
        for (double th : trace.theta[k]) out << ',' << format_fixed(th, 3);
        out << '\n';
      }
    }
    out << "wrote " << config.output.path << ' ';
    print_summary(trace, final_params(schedule), out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_gaits_list(std::ostream& out, const GaitRegistry& registry) {
  for (const auto& name : registry.names()) {
    const GaitPreset& g = registry.get(name);
    out << g.name << " [" << g.provenance << "]\n";
    if (!g.note.empty()) out << "  note: " << g.note << '\n';
    out << "  coupling_per_s: " << matrix_line(g.coupling, false) << '\n';
    out << "  phase_bias_rad: " << matrix_line(g.phase_bias, true) << '\n';
    out << "  amplitude_deg:  " << joined(g.target_amplitude, 1) << '\n';
    out << "  offset_deg:     " << joined(g.target_offset, 1) << '\n';
  }
  return kExitOk;
}

int cmd_demo(const std::string& name, const DemoOptions& options, const std::string& output_path,
             std::ostream& out, std::ostream& err,
             const std::vector<std::string>& transition_gaits) {
  return guarded(err, [&] {
    Schedule schedule;
    if (name == "transitions") {
      if (transition_gaits.empty()) {
        schedule = transitions_demo(options);
      } else if (transition_gaits.size() == 3) {
        schedule = transitions_demo(options, transition_gaits[0], transition_gaits[1],
                                    transition_gaits[2]);
      } else {
        throw ValidationError("transitions demo takes exactly three gaits");
      }
    } else if (name == "recovery") {
      schedule = recovery_demo(options);
    } else if (name == "sync") {
      schedule = sync_demo(options);
    } else {
      throw ValidationError("unknown demo '" + name + "'; valid demos: recovery, transitions, sync");
    }
    const Trace trace = run(schedule);
    save_trace(trace, output_path);
    out << "wrote " << output_path << " and " << sidecar_path(output_path) << '\n';
    for (const auto& m : trace.markers) {
      out << "event t=" << format_fixed(m.time, 3) << ' ' << m.kind << ' ' << m.details << '\n';
    }
    if (name == "sync") {
      out << "final_pairwise_phase_spread_rad="
          << format_sci(max_pairwise_phase_difference(trace.states.back())) << '\n';
    }
    print_summary(trace, final_params(schedule), out);
    return static_cast<int>(kExitOk);
  });
}

void stream_angles(const Schedule& schedule, const StreamOptions& options, std::ostream& out,
                   std::ostream& err) {
  if (!(options.rate_hz > 0.0) || !std::isfinite(options.rate_hz))
    throw ValidationError("stream rate must be positive");
  Simulation sim(schedule);
  const double period = 1.0 / options.rate_hz;
  const auto start = std::chrono::steady_clock::now();
  bool warned = false;
  for (std::size_t tick = 0;; ++tick) {
    const double t = static_cast<double>(tick) * period;
    if (t >= schedule.duration - 1e-9) break;
    if (options.stop && options.stop->load()) break;
    const auto target = static_cast<std::size_t>(std::floor(t / schedule.dt + 1e-9));
    while (sim.step_index() < target && !sim.done()) sim.advance();

    if (options.pace) {
      const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                        std::chrono::duration<double>(t));
      const auto now = std::chrono::steady_clock::now();
      if (now < deadline) {
        std::this_thread::sleep_until(deadline);
      } else if (!warned && now - deadline > std::chrono::duration<double>(period)) {
        err << "warning: stream rate " << options.rate_hz
            << " Hz is faster than the simulation can keep up with; pacing best-effort\n";
        warned = true;
      }
    }
    out << format_fixed(sim.time(), 3);
    for (const auto& s : sim.state()) out << ',' << format_fixed(output_angle(s), 3);
    out << '\n';
    out.flush();
  }
}

int cmd_stream(const std::string& config_path, const StreamOptions& options, std::ostream& out,
               std::ostream& err, const GaitRegistry& registry) {
  return guarded(err, [&] {
    const Schedule schedule = to_schedule(load_config(config_path), registry);
    stream_angles(schedule, options, out, err);
    return static_cast<int>(kExitOk);
  });
}

int cmd_analyze(const std::string& trace_path, const AnalyzeOptions& options, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const Trace trace = load_trace(trace_path);
    if (trace.size() == 0) throw ValidationError("trace has no samples");
    out << "samples=" << trace.size() << '\n';
    out << "oscillators=" << trace.n << '\n';
    out << "t_end_s=" << format_fixed(trace.time.back(), 6) << '\n';
    for (std::size_t i = 0; i < trace.n; ++i) {
      double peak = 0.0;
      for (const auto& th : trace.theta) peak = std::max(peak, std::abs(th[i]));
      out << "max_abs_theta_" << i + 1 << "_deg=" << format_fixed(peak, 6) << '\n';
    }
    out << "final_pairwise_phase_spread_rad="
        << format_sci(max_pairwise_phase_difference(trace.states.back())) << '\n';

    std::optional<NetworkParams> params;
    if (options.config_path) {
      params = final_params(to_schedule(load_config(*options.config_path)));
    } else if (options.gait) {
      params = hexapod_params(preset(*options.gait), 0.0);
    }
    if (params) {
      if (params->n != trace.n) throw ContractError("trace and parameters disagree on n");
      const LockReport lock = locking_error(trace.states.back(), *params, options.tolerance);
      out << "final_locking_error_rad=" << format_sci(lock.max_error) << '\n';
      out << "locked=" << (lock.locked ? "yes" : "no") << '\n';
      out << "settling_time_s=" << format_settling(settling_time(trace, *params, options.tolerance))
          << '\n';
    }
    if (options.reference_path) {
      const Trace ref = load_trace(*options.reference_path);
      CompareOptions co;
      co.align = options.align_phase ? Align::phase : Align::none;
      const auto dev = compare_to_reference(trace, ref, co);
      for (std::size_t i = 0; i < dev.size(); ++i)
        out << "max_abs_dtheta_" << i + 1 << "_deg=" << format_fixed(dev[i], 6) << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace hexcpg
