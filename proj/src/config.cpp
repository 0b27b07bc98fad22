#include "hexcpg/config.hpp"

#include <fstream>
#include <sstream>

#include "hexcpg/errors.hpp"
#include "json_util.hpp"

namespace hexcpg {

using detail::json;

namespace {

GaitSpec read_gait_spec(const json& obj, const std::string& path, bool allow_frequency) {
  std::vector<std::string_view> allowed = {"preset"};
  allowed.insert(allowed.end(), detail::kGaitFieldKeys.begin(), detail::kGaitFieldKeys.end());
  if (allow_frequency) allowed.push_back("frequency_hz");
  detail::reject_unknown(obj, path, allowed);
  GaitSpec g;
  if (obj.contains("preset")) g.preset = detail::as_string(obj["preset"], detail::key_path(path, "preset"));
  auto f = detail::read_gait_fields(obj, path);
  g.coupling = std::move(f.coupling);
  g.phase_bias = std::move(f.phase_bias);
  g.amplitude_deg = std::move(f.amplitude_deg);
  g.offset_deg = std::move(f.offset_deg);
  return g;
}

void write_gait_spec(json& obj, const GaitSpec& g) {
  if (g.preset) obj["preset"] = *g.preset;
  detail::write_gait_fields(obj, {g.coupling, g.phase_bias, g.amplitude_deg, g.offset_deg});
}

Range read_range(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double h = v.get<double>();
    if (h < 0.0) throw ParseError(path + ": half-width must be non-negative");
    return Range::symmetric(h);
  }
  if (v.is_array() && v.size() == 2) {
    return {detail::as_number(v[0], detail::index_path(path, 0)),
            detail::as_number(v[1], detail::index_path(path, 1))};
  }
  throw ParseError(path + ": expected a half-width or a [lo, hi] pair");
}

json range_to_json(const Range& r) {
  if (r.lo == -r.hi && r.hi >= 0.0) return r.hi;
  return json::array({r.lo, r.hi});
}

Perturbation read_perturbation(const json& obj, const std::string& path) {
  using detail::key_path;
  detail::reject_unknown(obj, path,
                         {"phi_rad", "r_deg", "x_deg", "r_dot_deg_s", "x_dot_deg_s", "target"});
  Perturbation p;
  if (obj.contains("phi_rad")) p.phi = read_range(obj["phi_rad"], key_path(path, "phi_rad"));
  if (obj.contains("r_deg")) p.r = read_range(obj["r_deg"], key_path(path, "r_deg"));
  if (obj.contains("x_deg")) p.x = read_range(obj["x_deg"], key_path(path, "x_deg"));
  if (obj.contains("r_dot_deg_s"))
    p.r_dot = read_range(obj["r_dot_deg_s"], key_path(path, "r_dot_deg_s"));
  if (obj.contains("x_dot_deg_s"))
    p.x_dot = read_range(obj["x_dot_deg_s"], key_path(path, "x_dot_deg_s"));
  if (obj.contains("target")) {
    const json& t = obj["target"];
    if (t.is_string() && t.get<std::string>() == "all") {
      p.target.reset();
    } else if (t.is_number_unsigned() && t.get<std::uint64_t>() >= 1) {
      p.target = static_cast<std::size_t>(t.get<std::uint64_t>() - 1);
    } else {
      throw ParseError(key_path(path, "target") + ": expected \"all\" or a 1-based oscillator index");
    }
  }
  return p;
}

json perturbation_to_json(const Perturbation& p) {
  json obj = json::object();
  const auto put = [&](const char* key, const Range& r) {
    if (r.lo != 0.0 || r.hi != 0.0) obj[key] = range_to_json(r);
  };
  put("phi_rad", p.phi);
  put("r_deg", p.r);
  put("x_deg", p.x);
  put("r_dot_deg_s", p.r_dot);
  put("x_dot_deg_s", p.x_dot);
  if (p.target) obj["target"] = *p.target + 1;
  return obj;
}

EventSpec read_event(const json& obj, const std::string& path) {
  using detail::key_path;
  detail::reject_unknown(obj, path, {"time_s", "label", "gait", "update", "perturb"});
  if (!obj.contains("time_s")) throw ParseError(key_path(path, "time_s") + ": missing");
  EventSpec e;
  e.time_s = detail::as_number(obj["time_s"], key_path(path, "time_s"));
  if (obj.contains("label")) e.label = detail::as_string(obj["label"], key_path(path, "label"));
  const int kinds = int(obj.contains("gait")) + int(obj.contains("update")) + int(obj.contains("perturb"));
  if (kinds != 1) throw ParseError(path + ": needs exactly one of gait, update, perturb");
  if (obj.contains("gait")) {
    e.action = GaitSwitch{detail::as_string(obj["gait"], key_path(path, "gait"))};
  } else if (obj.contains("update")) {
    const std::string upath = key_path(path, "update");
    UpdateSpec u;
    u.gait = read_gait_spec(obj["update"], upath, true);
    if (obj["update"].contains("frequency_hz"))
      u.frequency_hz = detail::as_vector(obj["update"]["frequency_hz"], key_path(upath, "frequency_hz"));
    e.action = std::move(u);
  } else {
    e.action = read_perturbation(obj["perturb"], key_path(path, "perturb"));
  }
  return e;
}

json event_to_json(const EventSpec& e) {
  json obj = json::object();
  obj["time_s"] = e.time_s;
  if (!e.label.empty()) obj["label"] = e.label;
  if (const auto* g = std::get_if<GaitSwitch>(&e.action)) {
    obj["gait"] = g->preset;
  } else if (const auto* u = std::get_if<UpdateSpec>(&e.action)) {
    json up = json::object();
    write_gait_spec(up, u->gait);
    if (u->frequency_hz) up["frequency_hz"] = *u->frequency_hz;
    obj["update"] = std::move(up);
  } else {
    obj["perturb"] = perturbation_to_json(std::get<Perturbation>(e.action));
  }
  return obj;
}

InitialSpec read_initial(const json& v, const std::string& path) {
  const std::string s = detail::as_string(v, path);
  if (s == "rest") return InitialSpec::rest;
  if (s == "random_phase") return InitialSpec::random_phase;
  if (s == "locked") return InitialSpec::locked;
  throw ParseError(path + ": expected rest, random_phase or locked");
}

const char* initial_name(InitialSpec s) {
  switch (s) {
    case InitialSpec::rest: return "rest";
    case InitialSpec::random_phase: return "random_phase";
    case InitialSpec::locked: return "locked";
  }
  return "rest";
}

std::vector<double> to_omega(const std::vector<double>& hz) {
  std::vector<double> omega;
  omega.reserve(hz.size());
  for (double f : hz) omega.push_back(kTwoPi * f);
  return omega;
}

ParamUpdate resolve_gait(const GaitSpec& g, std::size_t n, const GaitRegistry& registry) {
  ParamUpdate u;
  if (g.preset) {
    if (n != kHexapodJoints) {
      throw ValidationError("gait preset '" + *g.preset + "' needs n = 3, network has n = " +
                            std::to_string(n));
    }
    u = update_for(registry.get(*g.preset));
  }
  if (g.coupling) u.coupling = g.coupling;
  if (g.phase_bias) u.phase_bias = g.phase_bias;
  if (g.amplitude_deg) u.target_amplitude = g.amplitude_deg;
  if (g.offset_deg) u.target_offset = g.offset_deg;
  return u;
}

}  // namespace

Config parse_config(std::string_view text, std::string_view source) {
  using detail::key_path;
  const json doc = detail::parse_json(text, source);
  detail::reject_unknown(doc, "", {"network", "gait", "schedule", "output"});
  Config c;

  if (doc.contains("network")) {
    const json& net = doc["network"];
    detail::reject_unknown(net, "network", {"n", "frequency_hz", "a_r", "a_x"});
    if (net.contains("n")) {
      c.network.n = static_cast<std::size_t>(detail::as_uint(net["n"], "network.n"));
    }
    c.network.frequency_hz.assign(c.network.n, 1.0);
    if (net.contains("frequency_hz")) {
      const json& f = net["frequency_hz"];
      if (f.is_number()) {
        c.network.frequency_hz.assign(c.network.n, f.get<double>());
      } else {
        c.network.frequency_hz = detail::as_vector(f, "network.frequency_hz");
      }
    }
    if (net.contains("a_r")) c.network.a_r = detail::as_number(net["a_r"], "network.a_r");
    if (net.contains("a_x")) c.network.a_x = detail::as_number(net["a_x"], "network.a_x");
  }

  if (!doc.contains("gait")) throw ParseError("gait: missing section");
  c.gait = read_gait_spec(doc["gait"], "gait", false);

  if (!doc.contains("schedule")) throw ParseError("schedule: missing section (schedule.seed is required)");
  const json& sch = doc["schedule"];
  detail::reject_unknown(sch, "schedule",
                         {"duration_s", "dt_s", "seed", "integrator", "initial", "ramp_in", "events"});
  if (sch.contains("duration_s")) c.schedule.duration_s = detail::as_number(sch["duration_s"], "schedule.duration_s");
  if (sch.contains("dt_s")) c.schedule.dt_s = detail::as_number(sch["dt_s"], "schedule.dt_s");
  if (!sch.contains("seed")) throw ParseError("schedule.seed: missing (runs must be seeded)");
  c.schedule.seed = detail::as_uint(sch["seed"], "schedule.seed");
  if (sch.contains("integrator")) {
    const std::string name = detail::as_string(sch["integrator"], "schedule.integrator");
    if (name != "euler" && name != "rk4") throw ParseError("schedule.integrator: expected euler or rk4");
    c.schedule.integrator = parse_integrator(name);
  }
  if (sch.contains("initial")) c.schedule.initial = read_initial(sch["initial"], "schedule.initial");
  if (sch.contains("ramp_in")) c.schedule.ramp_in = detail::as_bool(sch["ramp_in"], "schedule.ramp_in");
  if (sch.contains("events")) {
    const json& ev = sch["events"];
    if (!ev.is_array()) throw ParseError("schedule.events: expected an array");
    for (std::size_t k = 0; k < ev.size(); ++k)
      c.schedule.events.push_back(read_event(ev[k], detail::index_path("schedule.events", k)));
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    detail::reject_unknown(out, "output", {"path", "decimation", "stream"});
    if (out.contains("path")) c.output.path = detail::as_string(out["path"], "output.path");
    if (out.contains("decimation")) {
      c.output.decimation = static_cast<std::size_t>(detail::as_uint(out["decimation"], "output.decimation"));
    }
    if (out.contains("stream")) c.output.stream = detail::as_bool(out["stream"], "output.stream");
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string dump_config(const Config& c) {
  json doc = json::object();
  doc["network"] = {{"n", c.network.n},
                    {"frequency_hz", c.network.frequency_hz},
                    {"a_r", c.network.a_r},
                    {"a_x", c.network.a_x}};
  json gait = json::object();
  write_gait_spec(gait, c.gait);
  doc["gait"] = std::move(gait);
  json events = json::array();
  for (const auto& e : c.schedule.events) events.push_back(event_to_json(e));
  doc["schedule"] = {{"duration_s", c.schedule.duration_s},
                     {"dt_s", c.schedule.dt_s},
                     {"seed", c.schedule.seed},
                     {"integrator", std::string(to_string(c.schedule.integrator))},
                     {"initial", initial_name(c.schedule.initial)},
                     {"ramp_in", c.schedule.ramp_in},
                     {"events", std::move(events)}};
  doc["output"] = {{"path", c.output.path},
                   {"decimation", c.output.decimation},
                   {"stream", c.output.stream}};
  return doc.dump(2) + "\n";
}

Schedule to_schedule(const Config& c, const GaitRegistry& registry) {
  const std::size_t n = c.network.n;
  if (n == 0) throw ValidationError("network.n must be at least 1");
  if (c.network.frequency_hz.size() != n) {
    throw ValidationError("network.frequency_hz has " + std::to_string(c.network.frequency_hz.size()) +
                          " entries, expected " + std::to_string(n));
  }
  if (!c.gait.preset && (!c.gait.coupling || !c.gait.phase_bias || !c.gait.amplitude_deg)) {
    throw ValidationError("gait: give a preset or all of coupling, phase_bias_rad, amplitude_deg");
  }

  NetworkParams base = NetworkParams::uncoupled(n, 0.0);
  base.omega = to_omega(c.network.frequency_hz);
  base.amplitude_gain = c.network.a_r;
  base.offset_gain = c.network.a_x;
  const NetworkParams gait_params = apply_update(base, resolve_gait(c.gait, n, registry));

  Schedule s;
  s.duration = c.schedule.duration_s;
  s.dt = c.schedule.dt_s;
  s.seed = c.schedule.seed;
  s.integrator = c.schedule.integrator;
  s.decimation = c.output.decimation;
  s.params = gait_params;

  switch (c.schedule.initial) {
    case InitialSpec::rest: s.initial = InitialPolicy::rest; break;
    case InitialSpec::random_phase: s.initial = InitialPolicy::random_phase; break;
    case InitialSpec::locked: s.initial_state = locked_state(gait_params); break;
  }

  if (c.schedule.ramp_in) {
    ParamUpdate ramp;
    ramp.target_amplitude = gait_params.target_amplitude;
    s.params.target_amplitude.assign(n, 0.0);
    s.events.push_back({0.0, std::move(ramp), "ramp-in"});
  }

  for (const auto& e : c.schedule.events) {
    Event ev;
    ev.time = e.time_s;
    ev.label = e.label;
    if (const auto* g = std::get_if<GaitSwitch>(&e.action)) {
      if (n != kHexapodJoints) throw ValidationError("gait switch needs n = 3");
      ev.action = update_for(registry.get(g->preset));
      if (ev.label.empty()) ev.label = "gait=" + g->preset;
    } else if (const auto* u = std::get_if<UpdateSpec>(&e.action)) {
      ParamUpdate pu = resolve_gait(u->gait, n, registry);
      if (u->frequency_hz) pu.omega = to_omega(*u->frequency_hz);
      ev.action = std::move(pu);
    } else {
      ev.action = std::get<Perturbation>(e.action);
    }
    s.events.push_back(std::move(ev));
  }
  s.validate();
  return s;
}

}  // namespace hexcpg
