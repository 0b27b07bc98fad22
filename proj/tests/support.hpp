#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "hexcpg/core.hpp"
#include "hexcpg/gaits.hpp"

namespace hexcpg::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hexcpg-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

/// Hexapod network at 1 Hz running a bundled preset.
inline NetworkParams gait_params(const std::string& name) {
  return hexapod_params(preset(name), kTwoPi);
}

/// States with the given phases, r = R and x = X.
inline NetworkState on_targets(const NetworkParams& p, const std::vector<double>& phases) {
  NetworkState s(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    s[i].phi = phases[i];
    s[i].r = p.target_amplitude[i];
    s[i].x = p.target_offset[i];
  }
  return s;
}

inline std::vector<double> random_phases(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

}  // namespace hexcpg::test
