#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "hexcpg/errors.hpp"

namespace hexcpg::detail {

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < offset; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": syntax error: " + e.what());
  }
}

std::string key_path(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

std::string index_path(const std::string& parent, std::size_t index) {
  return parent + "[" + std::to_string(index) + "]";
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ParseError((path.empty() ? "document" : path) + ": expected an object");
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::vector<std::string_view>& allowed) {
  require_object(obj, path);
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(key_path(path, key) + ": unknown key");
    }
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path + ": expected a number");
  return v.get<double>();
}

std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) throw ParseError(path + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path + ": expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path + ": expected a string");
  return v.get<std::string>();
}

double as_angle_rad(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw ParseError(path + ": expected a number or a pi expression");
  static const std::regex pattern(
      R"(^\s*([+-])?\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  const std::string text = v.get<std::string>();
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ParseError(path + ": cannot read angle '" + text + "'");
  }
  double value = kPi;
  if (m[2].matched) value *= std::stod(m[2].str());
  if (m[3].matched) {
    const double denom = std::stod(m[3].str());
    if (denom == 0.0) throw ParseError(path + ": division by zero in '" + text + "'");
    value /= denom;
  }
  if (m[1].matched && m[1].str() == "-") value = -value;
  return value;
}

std::vector<double> as_vector(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(as_number(v[k], index_path(path, k)));
  return out;
}

SquareMatrix as_matrix(const json& v, const std::string& path, bool angles) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of rows");
  SquareMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_path = index_path(path, i);
    if (!v[i].is_array() || v[i].size() != v.size()) {
      throw ParseError(row_path + ": expected a row of " + std::to_string(v.size()) + " entries");
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      const std::string cell = index_path(row_path, j);
      m(i, j) = angles ? as_angle_rad(v[i][j], cell) : as_number(v[i][j], cell);
    }
  }
  return m;
}

json angle_to_json(double rad) {
  if (rad == 0.0) return 0;
  // Multiples of pi/12 cover every table the bundled manifest uses.
  const double twelfths = rad / kPi * 12.0;
  const double k = std::round(twelfths);
  if (k == 0.0 || std::abs(twelfths - k) > 1e-12 || std::abs(k) > 1200.0) return rad;
  long num = static_cast<long>(k);
  long den = 12;
  for (long g : {2L, 2L, 3L}) {
    if (num % g == 0 && den % g == 0) {
      num /= g;
      den /= g;
    }
  }
  std::string s = num < 0 ? "-" : "";
  const long mag = std::labs(num);
  if (mag != 1) s += std::to_string(mag);
  s += "pi";
  if (den != 1) s += "/" + std::to_string(den);
  // Only emit the expression when it reads back bit-identically.
  if (as_angle_rad(json(s), "") != rad) return rad;
  return s;
}

json matrix_to_json(const SquareMatrix& m, bool angles) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      row.push_back(angles ? angle_to_json(m(i, j)) : json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GaitFields read_gait_fields(const json& obj, const std::string& path) {
  GaitFields f;
  if (obj.contains("coupling")) f.coupling = as_matrix(obj["coupling"], key_path(path, "coupling"));
  if (obj.contains("phase_bias_rad"))
    f.phase_bias = as_matrix(obj["phase_bias_rad"], key_path(path, "phase_bias_rad"), true);
  if (obj.contains("amplitude_deg"))
    f.amplitude_deg = as_vector(obj["amplitude_deg"], key_path(path, "amplitude_deg"));
  if (obj.contains("offset_deg"))
    f.offset_deg = as_vector(obj["offset_deg"], key_path(path, "offset_deg"));
  return f;
}

void write_gait_fields(json& obj, const GaitFields& fields) {
  if (fields.coupling) obj["coupling"] = matrix_to_json(*fields.coupling);
  if (fields.phase_bias) obj["phase_bias_rad"] = matrix_to_json(*fields.phase_bias, true);
  if (fields.amplitude_deg) obj["amplitude_deg"] = *fields.amplitude_deg;
  if (fields.offset_deg) obj["offset_deg"] = *fields.offset_deg;
}

}  // namespace hexcpg::detail
