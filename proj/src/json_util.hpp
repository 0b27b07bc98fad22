#pragma once

// Schema helpers shared by the gait manifest and config readers. Every
// failure raises ParseError naming the offending key path.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hexcpg/core.hpp"

namespace hexcpg::detail {

using json = nlohmann::ordered_json;

/// Syntax errors report line and column.
json parse_json(std::string_view text, std::string_view source);

std::string key_path(const std::string& parent, std::string_view key);
std::string index_path(const std::string& parent, std::size_t index);

void require_object(const json& v, const std::string& path);
void reject_unknown(const json& obj, const std::string& path,
                    const std::vector<std::string_view>& allowed);

double as_number(const json& v, const std::string& path);
std::uint64_t as_uint(const json& v, const std::string& path);
bool as_bool(const json& v, const std::string& path);
std::string as_string(const json& v, const std::string& path);

/// A number, or a string such as "pi", "-pi/2", "0.25*pi", "3pi/4".
double as_angle_rad(const json& v, const std::string& path);

std::vector<double> as_vector(const json& v, const std::string& path);
SquareMatrix as_matrix(const json& v, const std::string& path, bool angles = false);

/// Encodes a radian value as a pi expression when it is an exact multiple of
/// pi/12, otherwise as a plain number.
json angle_to_json(double rad);
json matrix_to_json(const SquareMatrix& m, bool angles = false);

struct GaitFields {
  std::optional<SquareMatrix> coupling;
  std::optional<SquareMatrix> phase_bias;
  std::optional<std::vector<double>> amplitude_deg;
  std::optional<std::vector<double>> offset_deg;
};

inline const std::vector<std::string_view> kGaitFieldKeys = {
    "coupling", "phase_bias_rad", "amplitude_deg", "offset_deg"};

/// Reads whichever gait-table keys are present (does not reject others).
GaitFields read_gait_fields(const json& obj, const std::string& path);
void write_gait_fields(json& obj, const GaitFields& fields);

}  // namespace hexcpg::detail
