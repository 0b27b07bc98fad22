// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hexcpg/analysis.hpp"
#include "hexcpg/commands.hpp"
#include "hexcpg/sim.hpp"
#include "hexcpg/trace_io.hpp"

using namespace hexcpg;

namespace {

// Tolerances.
constexpr int kSeeds = 20;
constexpr double kLockTol = 1e-2;              // rad
constexpr double kPhaseVelocityRelTol = 0.01;  // fraction of omega
constexpr double kAmplitudeTol = 1e-2;         // deg
constexpr double kOvershootTol = 1e-6;         // deg
constexpr double kRecoveryWindow = 5.0;        // s after the kick
constexpr double kAlignedThetaTolRad = 5e-2;   // rad of joint angle
constexpr double kIntegratorBoundDeg = 7.0;    // pinned from the dt convergence study
constexpr double kRatioLo = 0.4;
constexpr double kRatioHi = 0.6;
constexpr double kCeilingTol = 1e-3;  // deg

constexpr double kDegPerRad = 180.0 / kPi;

struct Result {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

std::size_t index_at(const Trace& t, double time) {
  return static_cast<std::size_t>(std::lround((time - t.time.front()) / t.dt));
}

Result t1_synchronization() {
  double worst_spread = 0.0;
  double worst_velocity = 0.0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const Schedule s = sync_demo({.seed = static_cast<std::uint64_t>(seed)});
    const Trace t = run(s);
    worst_spread = std::max(worst_spread, max_pairwise_phase_difference(t.states.back()));
    const auto& a = t.states[index_at(t, 9.0)];
    const auto& b = t.states.back();
    for (std::size_t i = 0; i < t.n; ++i) {
      const double velocity = (b[i].phi - a[i].phi) / (t.time.back() - 9.0);
      worst_velocity =
          std::max(worst_velocity, std::abs(velocity - s.params.omega[i]) / s.params.omega[i]);
    }
  }
  return {worst_spread < kLockTol && worst_velocity < kPhaseVelocityRelTol,
          "max spread " + fmt("%.3e", worst_spread) + " rad, max phase velocity error " +
              fmt("%.3e", worst_velocity) + " of omega"};
}

Result t2_critically_damped() {
  Schedule s;
  s.duration = 10.0;
  s.dt = 0.01;
  s.params = NetworkParams::uncoupled(1, kTwoPi);
  s.params.target_amplitude = {1.0};
  const Trace t = run(s);
  const double analytic = 1.0 - 11.0 * std::exp(-10.0);
  const double err = std::abs(t.states.back()[0].r - analytic);
  double peak = 0.0;
  for (const auto& st : t.states) peak = std::max(peak, st[0].r);
  return {err < kAmplitudeTol && peak <= 1.0 + kOvershootTol,
          "|r(10) - analytic| " + fmt("%.3e", err) + ", max r " + fmt("%.9f", peak)};
}

Result t3_gait_lock() {
  double worst_lock = 0.0;
  double worst_fixed_point = 0.0;
  for (const char* name : {"forward", "backward", "rotate_cw"}) {
    for (int seed = 1; seed <= kSeeds; ++seed) {
      Schedule s;
      s.duration = 10.0;
      s.params = hexapod_params(preset(name), kTwoPi);
      ParamUpdate ramp;
      ramp.target_amplitude = s.params.target_amplitude;
      s.params.target_amplitude.assign(3, 0.0);
      s.events.push_back({0.0, ramp, "ramp-in"});
      s.initial = InitialPolicy::random_phase;
      s.seed = static_cast<std::uint64_t>(seed);
      const Trace t = run(s);
      const NetworkParams p = final_params(s);
      const auto& last = t.states.back();
      worst_lock = std::max(worst_lock, locking_error(last, p).max_error);
      const auto fixed = locked_phases(p);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const double diff = wrap_phase((last[j].phi - last[i].phi) - (fixed[j] - fixed[i]));
          worst_fixed_point = std::max(worst_fixed_point, std::abs(diff));
        }
    }
  }
  return {worst_lock < kLockTol && worst_fixed_point < kLockTol,
          "max locking error " + fmt("%.3e", worst_lock) + " rad, max distance to fixed point " +
              fmt("%.3e", worst_fixed_point) + " rad"};
}

Result t4_recovery() {
  constexpr double kick_time = 2.0;
  Schedule base;
  base.duration = kick_time + kRecoveryWindow + 3.0;
  base.params = hexapod_params(preset("forward"), kTwoPi);
  base.initial_state = locked_state(base.params);
  const Trace unperturbed = run(base);

  Perturbation kick;
  kick.phi = kick.r = kick.x = Range::symmetric(0.5);
  double worst_lock = 0.0, worst_amp = 0.0, worst_theta = 0.0;
  int failures = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    Schedule s = base;
    s.seed = static_cast<std::uint64_t>(seed);
    s.events.push_back({kick_time, kick, ""});
    const Trace t = run(s);
    double lock = 0.0, amp = 0.0;
    for (std::size_t k = index_at(t, kick_time + kRecoveryWindow); k < t.size(); ++k) {
      lock = std::max(lock, locking_error(t.states[k], s.params).max_error);
      for (std::size_t i = 0; i < 3; ++i)
        amp = std::max(amp, std::abs(t.states[k][i].r - s.params.target_amplitude[i]));
    }
    CompareOptions co;
    co.align = Align::phase;
    co.window_start = kick_time + kRecoveryWindow;
    const double theta = max_of(compare_to_reference(t, unperturbed, co)) / kDegPerRad;
    if (!(lock < kLockTol && amp < kAmplitudeTol && theta < kAlignedThetaTolRad)) ++failures;
    worst_lock = std::max(worst_lock, lock);
    worst_amp = std::max(worst_amp, amp);
    worst_theta = std::max(worst_theta, theta);
  }
  return {failures == 0, std::to_string(failures) + "/" + std::to_string(kSeeds) +
                             " seeds fail; worst after 5 s: locking error " +
                             fmt("%.3e", worst_lock) + " rad, |r - R| " + fmt("%.3e", worst_amp) +
                             " deg, aligned theta deviation " + fmt("%.3e", worst_theta) + " rad"};
}

Trace every_nth(const Trace& t, std::size_t n) {
  Trace out;
  out.n = t.n;
  out.dt = t.dt * static_cast<double>(n);
  for (std::size_t k = 0; k < t.size(); k += n) out.push(t.time[k], t.states[k]);
  return out;
}

Result t5_integrator_oracle() {
  DemoOptions ref_opts;
  ref_opts.dt = 1e-4;
  ref_opts.integrator = Integrator::rk4;
  ref_opts.decimation = 25;
  const Trace reference = run(transitions_demo(ref_opts));  // sampled every 0.0025 s

  std::vector<double> errors;
  for (double dt : {0.01, 0.005, 0.0025}) {
    DemoOptions o;
    o.dt = dt;
    const Trace euler = run(transitions_demo(o));
    const auto stride = static_cast<std::size_t>(std::lround(dt / 0.0025));
    errors.push_back(max_of(compare_to_reference(euler, every_nth(reference, stride))));
  }
  const double r1 = errors[1] / errors[0];
  const double r2 = errors[2] / errors[1];
  const bool ratios_ok = r1 >= kRatioLo && r1 <= kRatioHi && r2 >= kRatioLo && r2 <= kRatioHi;
  return {errors[0] < kIntegratorBoundDeg && ratios_ok,
          "max |dtheta| " + fmt("%.3f", errors[0]) + " deg at dt=0.01 (bound " +
              fmt("%.1f", kIntegratorBoundDeg) + "), " + fmt("%.3f", errors[1]) +
              " at 0.005, " + fmt("%.3f", errors[2]) + " at 0.0025; ratios " + fmt("%.3f", r1) +
              ", " + fmt("%.3f", r2)};
}

Result t6_smoothness() {
  const Trace t = run(transitions_demo());
  const double ceilings[] = {kMaxAmplitudeMiddle, kMaxAmplitudeSide, kMaxAmplitudeSide};
  std::size_t jump_violations = 0;
  double worst_ratio = 0.0, worst_excess = -1e9;
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (std::size_t i = 0; i < t.n; ++i) {
      worst_excess = std::max(worst_excess, std::abs(t.theta[k][i]) - ceilings[i]);
      if (k + 1 == t.size()) continue;
      const double jump = std::abs(t.theta[k + 1][i] - t.theta[k][i]);
      const double bound = output_jump_bound(t, k, i);
      if (jump > bound) ++jump_violations;
      if (bound > 0) worst_ratio = std::max(worst_ratio, jump / bound);
    }
  }
  return {jump_violations == 0 && worst_excess <= kCeilingTol,
          std::to_string(jump_violations) + " jump-bound violations (max jump/bound " +
              fmt("%.3f", worst_ratio) + "), max |theta| - ceiling " + fmt("%.3e", worst_excess) +
              " deg"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Result t7_reproducibility() {
  const auto dir = std::filesystem::temp_directory_path() / "hexcpg-acceptance-t7";
  std::filesystem::create_directories(dir);
  bool identical = true;
  std::string detail;
  for (const char* name : {"transitions", "recovery", "sync"}) {
    std::string first, second;
    for (int pass = 0; pass < 2; ++pass) {
      const std::string path = (dir / (std::string(name) + std::to_string(pass) + ".csv")).string();
      std::ostringstream out, err;
      if (cmd_demo(name, {.seed = 42}, path, out, err) != kExitOk) identical = false;
      (pass == 0 ? first : second) = slurp(path) + slurp(sidecar_path(path));
    }
    const bool same = !first.empty() && first == second;
    identical = identical && same;
    detail += std::string(detail.empty() ? "" : ", ") + name + (same ? " identical" : " DIFFERS");
  }
  std::filesystem::remove_all(dir);
  return {identical, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"T1 synchronization", t1_synchronization},
      {"T2 critically damped amplitude", t2_critically_damped},
      {"T3 gait-lock fixed points", t3_gait_lock},
      {"T4 perturbation recovery", t4_recovery},
      {"T5 integrator oracle", t5_integrator_oracle},
      {"T6 transition smoothness", t6_smoothness},
      {"T7 reproducibility", t7_reproducibility},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const Result r = check();
    if (!r.pass) ++failed;
    std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
