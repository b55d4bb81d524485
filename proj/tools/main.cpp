#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fwm/cli/config.hpp"
#include "fwm/cli/scenario.hpp"
#include "fwm/errors.hpp"

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const fwm::ValidationError*>(&e)) return 2;
  if (dynamic_cast<const fwm::NumericalError*>(&e)) return 3;
  if (dynamic_cast<const fwm::IoError*>(&e)) return 4;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spontaneous four-wave mixing scenario runner for step-index fibres"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string preset;
  std::string out_dir;
  int threads = 0;
  long long seed = 0;
  app.add_option("--config", config_path, "Scenario file (key = value with [sections])");
  app.add_option("--preset", preset, "Bundled scenario: fig1, fig2b, fig3, fig4");
  app.add_option("--out", out_dir, "Output directory (overrides [output] directory)");
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Reserved; no stage is stochastic");

  for (const auto& name : fwm::cli::subcommands()) {
    app.add_subcommand(name, "Run the " + name + " stage")->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (config_path.empty() == preset.empty()) {
      throw fwm::ValidationError("exactly one of --config or --preset is required");
    }
    const std::string path = preset.empty() ? config_path : fwm::cli::preset_path(preset);
    const auto doc = fwm::cli::IniDocument::load(path);
    const auto config = fwm::cli::build_scenario(doc);
    if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::string dir = out_dir.empty() ? config.output.directory : out_dir;
    const std::string sub = app.get_subcommands().front()->get_name();
    for (const auto& name : fwm::cli::run(sub, config, dir, threads)) {
      std::printf("%s/%s\n", dir.c_str(), name.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
  return 0;
}
