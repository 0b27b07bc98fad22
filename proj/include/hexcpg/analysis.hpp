#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hexcpg/core.hpp"
#include "hexcpg/sim.hpp"

namespace hexcpg {

/// Default lock/settle tolerance: rad for phase errors, deg for |r - R|.
inline constexpr double kDefaultTolerance = 1e-2;

/// Representative of a in (-pi, pi].
double wrap_phase(double a);

struct CouplingError {
  std::size_t i = 0;  // influenced oscillator, zero-based
  std::size_t j = 0;  // influencing oscillator
  double error = 0.0; // wrap_phase(phi_j - phi_i - phase_bias(i, j))
};

struct LockReport {
  std::vector<CouplingError> entries;
  double max_error = 0.0;
  bool locked = true;
};

/// Coupling-argument errors for every (i, j) with a non-zero weight.
LockReport locking_error(std::span<const OscillatorState> states, const NetworkParams& params,
                         double tolerance = kDefaultTolerance);

/// Largest wrapped phase difference over all oscillator pairs.
double max_pairwise_phase_difference(std::span<const OscillatorState> states);

/// Earliest sample time from which every later sample is locked and has
/// |r_i - R_i| < tolerance for all i. Empty if the final sample fails.
std::optional<double> settling_time(const Trace& trace, const NetworkParams& params,
                                    double tolerance = kDefaultTolerance);

enum class Align { none, phase };

struct CompareOptions {
  Align align = Align::none;
  /// Largest time shift searched with Align::phase, seconds. Zero means one
  /// period estimated from the reference trace's phase velocity.
  double max_shift = 0.0;
  /// Only reference samples at or after this time are compared.
  double window_start = -1e300;
};

/// Per-channel max |theta - theta_ref| in degrees. With Align::phase the trace
/// is shifted by the single whole-sample offset (applied to every channel)
/// that minimises the largest deviation. Both traces must share n and
/// sampling.
std::vector<double> compare_to_reference(const Trace& trace, const Trace& reference,
                                         const CompareOptions& options = {});

/// Largest allowed |theta(t+dt) - theta(t)| for consecutive samples k, k+1:
/// dt * (max|x_dot| + max|r_dot| + max r * max|phi_dot|), maxima over both
/// samples, with phi_dot taken from the recorded phase increment.
double output_jump_bound(const Trace& trace, std::size_t k, std::size_t oscillator);

}  // namespace hexcpg
