#pragma once

// Amplitude-controlled phase oscillator network.
//
// Units: phases and phase biases are radians; amplitudes, offsets and the
// output angle are degrees (the values handed to the joint servos); time is
// seconds. The coupling term w_ij * r_j therefore scales with the amplitude
// in degrees.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hexcpg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Dense row-major n x n matrix. Entry (i, j) describes how oscillator j
/// influences oscillator i.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

  /// Throws ContractError if the rows are ragged or not square.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

  std::vector<std::vector<double>> rows() const;
  SquareMatrix negated() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct OscillatorState {
  double phi = 0.0;    // rad, unwrapped
  double r = 0.0;      // deg
  double r_dot = 0.0;  // deg/s
  double x = 0.0;      // deg
  double x_dot = 0.0;  // deg/s

  bool operator==(const OscillatorState&) const = default;
};

struct StateDerivative {
  double phi_dot = 0.0;  // rad/s
  double r_ddot = 0.0;   // deg/s^2
  double x_ddot = 0.0;   // deg/s^2
};

struct NetworkParams {
  std::size_t n = 0;
  std::vector<double> omega;             // natural frequency, rad/s
  std::vector<double> target_amplitude;  // R_i, deg
  std::vector<double> target_offset;     // X_i, deg
  double amplitude_gain = 2.0;           // a_r, 1/s
  double offset_gain = 2.0;              // a_x, 1/s
  SquareMatrix coupling;                 // w_ij, 1/s
  SquareMatrix phase_bias;               // varphi_ij, rad

  /// n oscillators at omega rad/s, no coupling, zero targets, gains 2.
  static NetworkParams uncoupled(std::size_t n, double omega);

  /// Throws ContractError on size mismatch and ValidationError on any other
  /// invariant violation (non-finite entry, self-coupling, negative target
  /// amplitude, non-positive gain). Messages use 1-based oscillator indices.
  void validate() const;

  bool operator==(const NetworkParams&) const = default;
};

using NetworkState = std::vector<OscillatorState>;

enum class Integrator { euler, rk4 };

std::string_view to_string(Integrator integrator);
Integrator parse_integrator(std::string_view name);

/// Right-hand side of the network ODE. Pure; validates its inputs.
std::vector<StateDerivative> derivatives(std::span<const OscillatorState> states,
                                         const NetworkParams& params);

/// One explicit Euler step. Every derivative is evaluated on the old state
/// before anything is committed, and r/x advance with the old r_dot/x_dot.
NetworkState euler_step(std::span<const OscillatorState> states, const NetworkParams& params,
                        double dt);

/// Classical RK4 step on (phi, r, r_dot, x, x_dot). Used as a reference.
NetworkState rk4_step(std::span<const OscillatorState> states, const NetworkParams& params,
                      double dt);

NetworkState step(Integrator integrator, std::span<const OscillatorState> states,
                  const NetworkParams& params, double dt);

/// theta = x + r sin(phi), in degrees.
double output_angle(const OscillatorState& state);

std::vector<double> output_angles(std::span<const OscillatorState> states);

}  // namespace hexcpg
