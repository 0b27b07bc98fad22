#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexcpg/core.hpp"

namespace hexcpg {

/// Joint order of the three-oscillator hexapod network.
enum Joint : std::size_t { kMiddle = 0, kLeft = 1, kRight = 2 };

inline constexpr std::size_t kHexapodJoints = 3;
/// Amplitude ceilings per joint, degrees.
inline constexpr double kMaxAmplitudeMiddle = 12.0;
inline constexpr double kMaxAmplitudeSide = 40.0;

struct GaitPreset {
  std::string name;
  SquareMatrix coupling;                 // 1/s
  SquareMatrix phase_bias;               // rad
  std::vector<double> target_amplitude;  // deg
  std::vector<double> target_offset;     // deg
  std::string provenance;                // "paper-verbatim" or "non-paper variant"
  std::string note;

  /// Zero diagonal, three joints, amplitudes within the joint ceilings.
  void validate() const;
};

/// Atomic replacement of any subset of the network's control inputs.
struct ParamUpdate {
  std::optional<std::vector<double>> omega;
  std::optional<std::vector<double>> target_amplitude;
  std::optional<std::vector<double>> target_offset;
  std::optional<SquareMatrix> coupling;
  std::optional<SquareMatrix> phase_bias;

  bool empty() const noexcept {
    return !omega && !target_amplitude && !target_offset && !coupling && !phase_bias;
  }
  bool operator==(const ParamUpdate&) const = default;
};

/// Returns params with the fields present in update replaced. The result is
/// validated; a size mismatch raises ContractError, a non-zero diagonal
/// ValidationError.
NetworkParams apply_update(const NetworkParams& params, const ParamUpdate& update);

/// The update that switches params to the preset's tables.
ParamUpdate update_for(const GaitPreset& preset);

/// Only the preset fields that differ from params.
ParamUpdate diff(const NetworkParams& params, const GaitPreset& preset);

class GaitRegistry {
 public:
  /// Parses a JSON manifest of the form
  /// {"gaits": [{"name", "provenance", "note", <gait block>}, ...]}
  /// where the gait block uses the config schema (coupling, phase_bias_rad,
  /// amplitude_deg, offset_deg). Throws ParseError or ValidationError.
  static GaitRegistry from_text(std::string_view text, std::string_view source = "manifest");

  /// The manifest compiled into the library.
  static const GaitRegistry& bundled();

  /// Throws LookupError listing valid names.
  const GaitPreset& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Adds or replaces presets from another registry.
  void merge(const GaitRegistry& other);

  void add(GaitPreset preset);

 private:
  std::map<std::string, GaitPreset, std::less<>> presets_;
  std::vector<std::string> order_;
};

/// Looks a preset up in the bundled registry.
const GaitPreset& preset(std::string_view name);

/// Network parameters for a hexapod running the given preset at a common
/// natural frequency (rad/s).
NetworkParams hexapod_params(const GaitPreset& preset, double omega);

}  // namespace hexcpg
