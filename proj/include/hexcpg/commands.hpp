#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hexcpg/config.hpp"
#include "hexcpg/gaits.hpp"
#include "hexcpg/sim.hpp"

namespace hexcpg {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and anything unexpected
  kExitParse = 2,
  kExitValidation = 3,
  kExitDivergence = 4,
};

struct SimulateOverrides {
  std::optional<double> duration;
  std::optional<double> dt;
  std::optional<std::uint64_t> seed;
  std::optional<Integrator> integrator;
  std::optional<std::string> output;
  std::optional<std::size_t> decimation;
};

void apply_overrides(Config& config, const SimulateOverrides& overrides);

/// Runs a config, writes the trace CSV and events sidecar, and prints a
/// one-line summary (settling time, final locking error).
int cmd_simulate(const std::string& config_path, const SimulateOverrides& overrides,
                 std::ostream& out, std::ostream& err,
                 const GaitRegistry& registry = GaitRegistry::bundled());

/// Prints every preset with its tables and provenance.
int cmd_gaits_list(std::ostream& out, const GaitRegistry& registry = GaitRegistry::bundled());

/// name is recovery, transitions or sync. transition_gaits, when given for
/// the transitions demo, names the three gaits in order.
int cmd_demo(const std::string& name, const DemoOptions& options, const std::string& output_path,
             std::ostream& out, std::ostream& err,
             const std::vector<std::string>& transition_gaits = {});

struct StreamOptions {
  double rate_hz = 100.0;
  bool pace = true;  // follow the wall clock; false emits as fast as possible
  const std::atomic<bool>* stop = nullptr;
};

/// Emits `t_s,theta_1_deg,...` lines with three decimals, one per tick of
/// rate_hz, until the schedule ends or *stop becomes true.
void stream_angles(const Schedule& schedule, const StreamOptions& options, std::ostream& out,
                   std::ostream& err);

int cmd_stream(const std::string& config_path, const StreamOptions& options, std::ostream& out,
               std::ostream& err, const GaitRegistry& registry = GaitRegistry::bundled());

struct AnalyzeOptions {
  std::optional<std::string> gait;         // preset giving the lock/amplitude targets
  std::optional<std::string> config_path;  // or the final params of a config
  double tolerance = 1e-2;
  std::optional<std::string> reference_path;
  bool align_phase = false;
};

/// Key=value report for a trace CSV.
int cmd_analyze(const std::string& trace_path, const AnalyzeOptions& options, std::ostream& out,
                std::ostream& err);

}  // namespace hexcpg
