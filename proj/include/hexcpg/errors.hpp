#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hexcpg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (mismatched dimensions, bad indices).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A numeric input was NaN or infinite.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parameters, schedules or configs that are well-formed but violate an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Unknown gait preset name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Syntax or schema error in a config, manifest or trace file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The integrator produced a non-finite value.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t oscillator, std::string variable,
                  std::optional<double> time = std::nullopt);

  std::size_t oscillator() const noexcept { return oscillator_; }
  const std::string& variable() const noexcept { return variable_; }
  std::optional<double> time() const noexcept { return time_; }

  /// Same error, annotated with the simulation time at which it happened.
  DivergenceError at_time(double t) const;

 private:
  std::size_t oscillator_;
  std::string variable_;
  std::optional<double> time_;
};

}  // namespace hexcpg
