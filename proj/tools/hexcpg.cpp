// hexcpg: run, stream and inspect the hexapod oscillator network.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hexcpg/commands.hpp"
#include "hexcpg/errors.hpp"

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_interrupt(int) { g_stop.store(true); }

}  // namespace

int main(int argc, char** argv) {
  using namespace hexcpg;

  CLI::App app{"Central pattern generator for a 3-DOF hexapod"};
  app.require_subcommand(1);

  std::string manifest;
  app.add_option("--gait-manifest", manifest,
                 "Extra gait manifest (JSON) merged over the bundled presets")
      ->check(CLI::ExistingFile);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a config and write a trace CSV");
  std::string config_path;
  simulate->add_option("config", config_path, "Config file (JSON)")->required();
  SimulateOverrides overrides;
  std::string integrator_name;
  simulate->add_option("--duration", overrides.duration, "Duration override, seconds");
  simulate->add_option("--dt", overrides.dt, "Step override, seconds");
  simulate->add_option("--seed", overrides.seed, "Seed override");
  simulate->add_option("--integrator", integrator_name, "euler or rk4")
      ->check(CLI::IsMember({"euler", "rk4"}));
  simulate->add_option("--output", overrides.output, "Trace CSV path override");
  simulate->add_option("--decimation", overrides.decimation, "Keep every k-th step");

  // gaits
  auto* gaits = app.add_subcommand("gaits", "List the gait presets");

  // demo
  auto* demo = app.add_subcommand("demo", "Run a canned experiment");
  std::string demo_name;
  std::string demo_output;
  DemoOptions demo_options;
  std::string demo_integrator = "euler";
  demo->add_option("name", demo_name, "recovery, transitions or sync")
      ->required()
      ->check(CLI::IsMember({"recovery", "transitions", "sync"}));
  demo->add_option("--output", demo_output, "Trace CSV path (default <name>.csv)");
  demo->add_option("--seed", demo_options.seed, "Seed")->capture_default_str();
  demo->add_option("--dt", demo_options.dt, "Step, seconds")->capture_default_str();
  demo->add_option("--integrator", demo_integrator, "euler or rk4")
      ->check(CLI::IsMember({"euler", "rk4"}))
      ->capture_default_str();
  demo->add_option("--decimation", demo_options.decimation, "Keep every k-th step")
      ->capture_default_str();
  std::vector<std::string> transition_gaits;
  demo->add_option("--gaits", transition_gaits, "Three gaits for the transitions demo")
      ->delimiter(',')
      ->expected(3);

  // stream
  auto* stream = app.add_subcommand("stream", "Emit paced joint angles, one line per tick");
  std::string stream_config;
  StreamOptions stream_options;
  bool no_pace = false;
  stream->add_option("config", stream_config, "Config file (JSON)")->required();
  stream->add_option("--rate", stream_options.rate_hz, "Lines per second")->capture_default_str();
  stream->add_flag("--no-pace", no_pace, "Do not follow the wall clock");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Report on a trace CSV");
  std::string trace_path;
  AnalyzeOptions analyze_options;
  std::string align = "none";
  analyze->add_option("trace", trace_path, "Trace CSV")->required()->check(CLI::ExistingFile);
  auto* gait_opt = analyze->add_option("--gait", analyze_options.gait, "Preset giving the targets");
  analyze->add_option("--config", analyze_options.config_path, "Config giving the targets")
      ->excludes(gait_opt);
  analyze->add_option("--tol", analyze_options.tolerance, "Lock/settle tolerance")
      ->capture_default_str();
  analyze->add_option("--reference", analyze_options.reference_path, "Reference trace CSV");
  analyze->add_option("--align", align, "none or phase")->check(CLI::IsMember({"none", "phase"}));

  CLI11_PARSE(app, argc, argv);

  GaitRegistry registry = GaitRegistry::bundled();
  if (!manifest.empty()) {
    try {
      std::ifstream in(manifest);
      std::stringstream buf;
      buf << in.rdbuf();
      registry.merge(GaitRegistry::from_text(buf.str(), manifest));
    } catch (const ParseError& e) {
      std::cerr << "parse error: " << e.what() << '\n';
      return kExitParse;
    } catch (const Error& e) {
      std::cerr << "validation error: " << e.what() << '\n';
      return kExitValidation;
    }
  }

  if (*simulate) {
    if (!integrator_name.empty()) overrides.integrator = parse_integrator(integrator_name);
    return cmd_simulate(config_path, overrides, std::cout, std::cerr, registry);
  }
  if (*gaits) return cmd_gaits_list(std::cout, registry);
  if (*demo) {
    demo_options.integrator = parse_integrator(demo_integrator);
    if (demo_output.empty()) demo_output = demo_name + ".csv";
    return cmd_demo(demo_name, demo_options, demo_output, std::cout, std::cerr, transition_gaits);
  }
  if (*stream) {
    std::signal(SIGINT, on_interrupt);
    stream_options.pace = !no_pace;
    stream_options.stop = &g_stop;
    return cmd_stream(stream_config, stream_options, std::cout, std::cerr, registry);
  }
  if (*analyze) {
    analyze_options.align_phase = align == "phase";
    return cmd_analyze(trace_path, analyze_options, std::cout, std::cerr);
  }
  return kExitFailure;
}
