#include "hexcpg/gaits.hpp"

#include <cmath>
#include <string>

#include "hexcpg/errors.hpp"
#include "json_util.hpp"

namespace hexcpg {

namespace detail {
// Generated from data/gaits.json at configure time.
extern const char* const kBundledGaitManifest;
}  // namespace detail

void GaitPreset::validate() const {
  const std::string who = "gait '" + name + "'";
  if (coupling.size() != kHexapodJoints || phase_bias.size() != kHexapodJoints ||
      target_amplitude.size() != kHexapodJoints || target_offset.size() != kHexapodJoints) {
    throw ValidationError(who + ": presets describe exactly 3 joints");
  }
  for (std::size_t i = 0; i < kHexapodJoints; ++i) {
    if (coupling(i, i) != 0.0) {
      throw ValidationError(who + ": coupling(" + std::to_string(i + 1) + "," +
                            std::to_string(i + 1) + ") must be zero");
    }
    for (std::size_t j = 0; j < kHexapodJoints; ++j) {
      if (!std::isfinite(coupling(i, j)) || !std::isfinite(phase_bias(i, j)))
        throw ValidationError(who + ": non-finite table entry");
    }
    const double ceiling = i == kMiddle ? kMaxAmplitudeMiddle : kMaxAmplitudeSide;
    if (!(target_amplitude[i] >= 0.0) || target_amplitude[i] > ceiling) {
      throw ValidationError(who + ": amplitude " + std::to_string(i + 1) + " must lie in [0, " +
                            std::to_string(ceiling) + "] deg");
    }
    if (!std::isfinite(target_offset[i])) throw ValidationError(who + ": non-finite offset");
  }
  if (provenance != "paper-verbatim" && provenance != "non-paper variant") {
    throw ValidationError(who + ": provenance must be 'paper-verbatim' or 'non-paper variant'");
  }
}

NetworkParams apply_update(const NetworkParams& params, const ParamUpdate& update) {
  NetworkParams out = params;
  const auto check_vec = [&](const std::vector<double>& v, const char* what) {
    if (v.size() != params.n) {
      throw ContractError(std::string("update.") + what + " has " + std::to_string(v.size()) +
                          " entries, network has " + std::to_string(params.n));
    }
  };
  const auto check_mat = [&](const SquareMatrix& m, const char* what) {
    if (m.size() != params.n) {
      throw ContractError(std::string("update.") + what + " is " + std::to_string(m.size()) +
                          "x" + std::to_string(m.size()) + ", network has " +
                          std::to_string(params.n));
    }
  };
  if (update.omega) {
    check_vec(*update.omega, "omega");
    out.omega = *update.omega;
  }
  if (update.target_amplitude) {
    check_vec(*update.target_amplitude, "target_amplitude");
    out.target_amplitude = *update.target_amplitude;
  }
  if (update.target_offset) {
    check_vec(*update.target_offset, "target_offset");
    out.target_offset = *update.target_offset;
  }
  if (update.coupling) {
    check_mat(*update.coupling, "coupling");
    out.coupling = *update.coupling;
  }
  if (update.phase_bias) {
    check_mat(*update.phase_bias, "phase_bias");
    out.phase_bias = *update.phase_bias;
  }
  out.validate();
  return out;
}

ParamUpdate update_for(const GaitPreset& preset) {
  ParamUpdate u;
  u.coupling = preset.coupling;
  u.phase_bias = preset.phase_bias;
  u.target_amplitude = preset.target_amplitude;
  u.target_offset = preset.target_offset;
  return u;
}

ParamUpdate diff(const NetworkParams& params, const GaitPreset& preset) {
  ParamUpdate u;
  if (!(params.coupling == preset.coupling)) u.coupling = preset.coupling;
  if (!(params.phase_bias == preset.phase_bias)) u.phase_bias = preset.phase_bias;
  if (params.target_amplitude != preset.target_amplitude)
    u.target_amplitude = preset.target_amplitude;
  if (params.target_offset != preset.target_offset) u.target_offset = preset.target_offset;
  return u;
}

GaitRegistry GaitRegistry::from_text(std::string_view text, std::string_view source) {
  using namespace detail;
  const json doc = parse_json(text, source);
  reject_unknown(doc, "", {"gaits"});
  if (!doc.contains("gaits") || !doc["gaits"].is_array())
    throw ParseError("gaits: expected an array of gait blocks");

  std::vector<std::string_view> allowed = {"name", "provenance", "note"};
  allowed.insert(allowed.end(), kGaitFieldKeys.begin(), kGaitFieldKeys.end());

  GaitRegistry reg;
  const json& list = doc["gaits"];
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = index_path("gaits", k);
    reject_unknown(list[k], path, allowed);
    for (const char* required : {"name", "provenance", "coupling", "phase_bias_rad", "amplitude_deg"}) {
      if (!list[k].contains(required)) throw ParseError(key_path(path, required) + ": missing");
    }
    GaitPreset p;
    p.name = as_string(list[k]["name"], key_path(path, "name"));
    p.provenance = as_string(list[k]["provenance"], key_path(path, "provenance"));
    if (list[k].contains("note")) p.note = as_string(list[k]["note"], key_path(path, "note"));
    GaitFields f = read_gait_fields(list[k], path);
    p.coupling = *f.coupling;
    p.phase_bias = *f.phase_bias;
    p.target_amplitude = *f.amplitude_deg;
    p.target_offset = f.offset_deg.value_or(std::vector<double>(p.target_amplitude.size(), 0.0));
    if (reg.contains(p.name)) throw ValidationError(path + ": duplicate gait '" + p.name + "'");
    reg.add(std::move(p));
  }
  return reg;
}

const GaitRegistry& GaitRegistry::bundled() {
  static const GaitRegistry registry = from_text(detail::kBundledGaitManifest, "bundled gaits");
  return registry;
}

const GaitPreset& GaitRegistry::get(std::string_view name) const {
  const auto it = presets_.find(name);
  if (it == presets_.end()) {
    std::string valid;
    for (const auto& n : order_) valid += (valid.empty() ? "" : ", ") + n;
    throw LookupError("unknown gait '" + std::string(name) + "'; valid gaits: " + valid);
  }
  return it->second;
}

bool GaitRegistry::contains(std::string_view name) const {
  return presets_.find(name) != presets_.end();
}

std::vector<std::string> GaitRegistry::names() const { return order_; }

void GaitRegistry::merge(const GaitRegistry& other) {
  for (const auto& n : other.order_) add(other.presets_.find(n)->second);
}

void GaitRegistry::add(GaitPreset preset) {
  preset.validate();
  if (!contains(preset.name)) order_.push_back(preset.name);
  std::string key = preset.name;
  presets_.insert_or_assign(std::move(key), std::move(preset));
}

const GaitPreset& preset(std::string_view name) { return GaitRegistry::bundled().get(name); }

NetworkParams hexapod_params(const GaitPreset& preset, double omega) {
  return apply_update(NetworkParams::uncoupled(kHexapodJoints, omega), update_for(preset));
}

}  // namespace hexcpg
