#include "hexcpg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hexcpg/errors.hpp"

namespace hexcpg {

double wrap_phase(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

LockReport locking_error(std::span<const OscillatorState> states, const NetworkParams& params,
                         double tolerance) {
  params.validate();
  if (states.size() != params.n) {
    throw ContractError("state has " + std::to_string(states.size()) +
                        " oscillators, params have " + std::to_string(params.n));
  }
  LockReport report;
  for (std::size_t i = 0; i < params.n; ++i) {
    for (std::size_t j = 0; j < params.n; ++j) {
      if (params.coupling(i, j) == 0.0) continue;
      const double e = wrap_phase(states[j].phi - states[i].phi - params.phase_bias(i, j));
      report.entries.push_back({i, j, e});
      report.max_error = std::max(report.max_error, std::abs(e));
    }
  }
  report.locked = report.max_error < tolerance;
  return report;
}

double max_pairwise_phase_difference(std::span<const OscillatorState> states) {
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      worst = std::max(worst, std::abs(wrap_phase(states[j].phi - states[i].phi)));
  return worst;
}

std::optional<double> settling_time(const Trace& trace, const NetworkParams& params,
                                    double tolerance) {
  const auto settled = [&](const NetworkState& s) {
    if (!locking_error(s, params, tolerance).locked) return false;
    for (std::size_t i = 0; i < params.n; ++i) {
      if (!(std::abs(s[i].r - params.target_amplitude[i]) < tolerance)) return false;
    }
    return true;
  };
  std::optional<double> since;
  for (std::size_t k = trace.size(); k-- > 0;) {
    if (!settled(trace.states[k])) break;
    since = trace.time[k];
  }
  return since;
}

namespace {

double reference_period(const Trace& ref) {
  if (ref.size() < 2 || ref.n == 0) return 0.0;
  const double span = ref.time.back() - ref.time.front();
  const double velocity = (ref.states.back()[0].phi - ref.states.front()[0].phi) / span;
  if (velocity == 0.0 || !std::isfinite(velocity)) return 0.0;
  return kTwoPi / std::abs(velocity);
}

}  // namespace

std::vector<double> compare_to_reference(const Trace& trace, const Trace& reference,
                                         const CompareOptions& options) {
  if (trace.n != reference.n) throw ContractError("traces have different oscillator counts");
  if (trace.size() != reference.size()) throw ContractError("traces have different lengths");
  if (trace.size() > 1 && std::abs(trace.dt - reference.dt) > 1e-12 * reference.dt)
    throw ContractError("traces have different sample spacing");

  long max_shift = 0;
  if (options.align == Align::phase && reference.dt > 0.0) {
    const double window = options.max_shift > 0.0 ? options.max_shift : reference_period(reference);
    max_shift = std::lround(window / reference.dt);
  }

  const long count = static_cast<long>(reference.size());
  std::vector<double> best(reference.n, std::numeric_limits<double>::infinity());
  double best_worst = std::numeric_limits<double>::infinity();
  for (long shift = 0; shift <= 2 * max_shift; ++shift) {
    // 0, -1, +1, -2, +2, ... so ties go to the smallest offset.
    const long s = (shift % 2 == 0) ? shift / 2 : -(shift + 1) / 2;
    std::vector<double> dev(reference.n, 0.0);
    bool any = false;
    for (long k = 0; k < count; ++k) {
      const long m = k + s;
      if (m < 0 || m >= count) continue;
      if (reference.time[static_cast<std::size_t>(k)] < options.window_start) continue;
      any = true;
      const auto& a = trace.theta[static_cast<std::size_t>(m)];
      const auto& b = reference.theta[static_cast<std::size_t>(k)];
      for (std::size_t c = 0; c < reference.n; ++c) dev[c] = std::max(dev[c], std::abs(a[c] - b[c]));
    }
    if (!any) continue;
    const double worst = *std::max_element(dev.begin(), dev.end());
    if (worst < best_worst) {
      best_worst = worst;
      best = dev;
    }
  }
  if (!std::isfinite(best_worst)) throw ContractError("no samples inside the comparison window");
  return best;
}

double output_jump_bound(const Trace& trace, std::size_t k, std::size_t oscillator) {
  if (k + 1 >= trace.size() || oscillator >= trace.n)
    throw ContractError("output_jump_bound: sample or oscillator out of range");
  const auto& a = trace.states[k][oscillator];
  const auto& b = trace.states[k + 1][oscillator];
  const double h = trace.time[k + 1] - trace.time[k];
  const double phi_rate = std::abs(b.phi - a.phi) / h;
  const double x_rate = std::max(std::abs(a.x_dot), std::abs(b.x_dot));
  const double r_rate = std::max(std::abs(a.r_dot), std::abs(b.r_dot));
  const double r_max = std::max(std::abs(a.r), std::abs(b.r));
  return h * (x_rate + r_rate + r_max * phi_rate);
}

}  // namespace hexcpg
