#include "hexcpg/core.hpp"

#include <cmath>
#include <string>

#include "hexcpg/errors.hpp"

namespace hexcpg {

DivergenceError::DivergenceError(std::size_t oscillator, std::string variable,
                                 std::optional<double> time)
    : Error("divergence: oscillator " + std::to_string(oscillator + 1) + " variable " + variable +
            " became non-finite" + (time ? " at t=" + std::to_string(*time) + " s" : "")),
      oscillator_(oscillator),
      variable_(std::move(variable)),
      time_(time) {}

DivergenceError DivergenceError::at_time(double t) const {
  return DivergenceError(oscillator_, variable_, t);
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ContractError("matrix row " + std::to_string(i + 1) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> SquareMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

SquareMatrix SquareMatrix::negated() const {
  SquareMatrix m = *this;
  for (double& v : m.values_) v = -v;
  return m;
}

NetworkParams NetworkParams::uncoupled(std::size_t n, double omega) {
  NetworkParams p;
  p.n = n;
  p.omega.assign(n, omega);
  p.target_amplitude.assign(n, 0.0);
  p.target_offset.assign(n, 0.0);
  p.coupling = SquareMatrix(n);
  p.phase_bias = SquareMatrix(n);
  return p;
}

namespace {

std::string entry_name(const char* what, std::size_t i) {
  return std::string(what) + "[" + std::to_string(i + 1) + "]";
}

std::string entry_name(const char* what, std::size_t i, std::size_t j) {
  return std::string(what) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_finite(double v, const std::string& name) {
  if (!std::isfinite(v)) throw ValidationError(name + " is not finite");
}

}  // namespace

void NetworkParams::validate() const {
  if (n == 0) throw ValidationError("network needs at least one oscillator");
  const auto check_len = [&](std::size_t len, const char* what) {
    if (len != n) {
      throw ContractError(std::string(what) + " has " + std::to_string(len) +
                          " entries, expected " + std::to_string(n));
    }
  };
  check_len(omega.size(), "omega");
  check_len(target_amplitude.size(), "target_amplitude");
  check_len(target_offset.size(), "target_offset");
  check_len(coupling.size(), "coupling");
  check_len(phase_bias.size(), "phase_bias");

  if (!(amplitude_gain > 0.0) || !std::isfinite(amplitude_gain))
    throw ValidationError("amplitude gain a_r must be positive and finite");
  if (!(offset_gain > 0.0) || !std::isfinite(offset_gain))
    throw ValidationError("offset gain a_x must be positive and finite");

  for (std::size_t i = 0; i < n; ++i) {
    require_finite(omega[i], entry_name("omega", i));
    require_finite(target_amplitude[i], entry_name("target_amplitude", i));
    require_finite(target_offset[i], entry_name("target_offset", i));
    if (target_amplitude[i] < 0.0)
      throw ValidationError(entry_name("target_amplitude", i) + " is negative");
    for (std::size_t j = 0; j < n; ++j) {
      require_finite(coupling(i, j), entry_name("coupling", i, j));
      require_finite(phase_bias(i, j), entry_name("phase_bias", i, j));
    }
    if (coupling(i, i) != 0.0) {
      throw ValidationError(entry_name("coupling", i, i) + " = " +
                            std::to_string(coupling(i, i)) +
                            ": self-coupling must be zero");
    }
  }
}

std::string_view to_string(Integrator integrator) {
  return integrator == Integrator::euler ? "euler" : "rk4";
}

Integrator parse_integrator(std::string_view name) {
  if (name == "euler") return Integrator::euler;
  if (name == "rk4") return Integrator::rk4;
  throw ValidationError("unknown integrator '" + std::string(name) + "' (expected euler or rk4)");
}

namespace {

void check_states(std::span<const OscillatorState> states, const NetworkParams& params) {
  params.validate();
  if (states.size() != params.n) {
    throw ContractError("state has " + std::to_string(states.size()) +
                        " oscillators, params have " + std::to_string(params.n));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (!std::isfinite(s.phi) || !std::isfinite(s.r) || !std::isfinite(s.r_dot) ||
        !std::isfinite(s.x) || !std::isfinite(s.x_dot)) {
      throw InputError("oscillator " + std::to_string(i + 1) + " has a non-finite state");
    }
  }
}

std::vector<StateDerivative> rhs(std::span<const OscillatorState> states,
                                 const NetworkParams& p) {
  std::vector<StateDerivative> out(p.n);
  const double ar = p.amplitude_gain;
  const double ax = p.offset_gain;
  for (std::size_t i = 0; i < p.n; ++i) {
    double phi_dot = p.omega[i];
    for (std::size_t j = 0; j < p.n; ++j) {
      const double w = p.coupling(i, j);
      if (w == 0.0) continue;
      phi_dot += w * states[j].r * std::sin(states[j].phi - states[i].phi - p.phase_bias(i, j));
    }
    out[i].phi_dot = phi_dot;
    out[i].r_ddot = ar * ((ar / 4.0) * (p.target_amplitude[i] - states[i].r) - states[i].r_dot);
    out[i].x_ddot = ax * ((ax / 4.0) * (p.target_offset[i] - states[i].x) - states[i].x_dot);
  }
  return out;
}

void check_result(const NetworkState& states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (!std::isfinite(s.phi)) throw DivergenceError(i, "phi");
    if (!std::isfinite(s.r)) throw DivergenceError(i, "r");
    if (!std::isfinite(s.r_dot)) throw DivergenceError(i, "r_dot");
    if (!std::isfinite(s.x)) throw DivergenceError(i, "x");
    if (!std::isfinite(s.x_dot)) throw DivergenceError(i, "x_dot");
  }
}

void check_dt(double dt) {
  if (!std::isfinite(dt)) throw InputError("time step is not finite");
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
}

// Time derivative of the full first-order state, packed into OscillatorState.
NetworkState state_rate(std::span<const OscillatorState> states, const NetworkParams& p) {
  const auto d = rhs(states, p);
  NetworkState rate(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    rate[i] = {d[i].phi_dot, states[i].r_dot, d[i].r_ddot, states[i].x_dot, d[i].x_ddot};
  }
  return rate;
}

NetworkState advance(std::span<const OscillatorState> base, const NetworkState& rate, double h) {
  NetworkState out(base.begin(), base.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].phi += h * rate[i].phi;
    out[i].r += h * rate[i].r;
    out[i].r_dot += h * rate[i].r_dot;
    out[i].x += h * rate[i].x;
    out[i].x_dot += h * rate[i].x_dot;
  }
  return out;
}

}  // namespace

std::vector<StateDerivative> derivatives(std::span<const OscillatorState> states,
                                         const NetworkParams& params) {
  check_states(states, params);
  return rhs(states, params);
}

NetworkState euler_step(std::span<const OscillatorState> states, const NetworkParams& params,
                        double dt) {
  check_dt(dt);
  check_states(states, params);
  const auto d = rhs(states, params);
  NetworkState next(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    next[i].phi = s.phi + dt * d[i].phi_dot;
    next[i].r_dot = s.r_dot + dt * d[i].r_ddot;
    next[i].r = s.r + dt * s.r_dot;
    next[i].x_dot = s.x_dot + dt * d[i].x_ddot;
    next[i].x = s.x + dt * s.x_dot;
  }
  check_result(next);
  return next;
}

NetworkState rk4_step(std::span<const OscillatorState> states, const NetworkParams& params,
                      double dt) {
  check_dt(dt);
  check_states(states, params);
  const auto k1 = state_rate(states, params);
  const auto k2 = state_rate(advance(states, k1, dt / 2.0), params);
  const auto k3 = state_rate(advance(states, k2, dt / 2.0), params);
  const auto k4 = state_rate(advance(states, k3, dt), params);
  NetworkState next(states.begin(), states.end());
  const double h6 = dt / 6.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i].phi += h6 * (k1[i].phi + 2.0 * k2[i].phi + 2.0 * k3[i].phi + k4[i].phi);
    next[i].r += h6 * (k1[i].r + 2.0 * k2[i].r + 2.0 * k3[i].r + k4[i].r);
    next[i].r_dot += h6 * (k1[i].r_dot + 2.0 * k2[i].r_dot + 2.0 * k3[i].r_dot + k4[i].r_dot);
    next[i].x += h6 * (k1[i].x + 2.0 * k2[i].x + 2.0 * k3[i].x + k4[i].x);
    next[i].x_dot += h6 * (k1[i].x_dot + 2.0 * k2[i].x_dot + 2.0 * k3[i].x_dot + k4[i].x_dot);
  }
  check_result(next);
  return next;
}

NetworkState step(Integrator integrator, std::span<const OscillatorState> states,
                  const NetworkParams& params, double dt) {
  return integrator == Integrator::euler ? euler_step(states, params, dt)
                                         : rk4_step(states, params, dt);
}

double output_angle(const OscillatorState& state) {
  return state.x + state.r * std::sin(state.phi);
}

std::vector<double> output_angles(std::span<const OscillatorState> states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(output_angle(s));
  return out;
}

}  // namespace hexcpg
