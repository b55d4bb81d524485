#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fwm/biphoton.hpp"
#include "fwm/cli/config.hpp"
#include "fwm/cli/output.hpp"
#include "fwm/dispersion.hpp"

namespace fwm::cli {

struct OutputFile {
  std::string name;
  std::string content;
};

struct StageOutput {
  std::vector<OutputFile> files;
  Summary summary;
};

/// Pump after "auto" resolution.
struct ResolvedPump {
  double omega_p = 0.0;
  double power_w = 0.0;
  double sigma = 0.0;  // 0 for a cw pump
  std::optional<FgvmPoint> fgvm;
};

/// One scenario: the dispersion profile and pump are resolved once on
/// construction and shared by every stage.
class Scenario {
 public:
  Scenario(ScenarioConfig config, int threads);

  const ScenarioConfig& config() const { return config_; }
  const DispersionProfile& profile() const { return *profile_; }
  const std::vector<FgvmPoint>& fgvm_points() const { return fgvm_; }
  const ResolvedPump& pump() const;
  /// Configuration lines plus every "auto" resolution.
  const std::vector<std::string>& resolved() const { return resolved_; }

  StageOutput dispersion() const;
  StageOutput contours() const;
  StageOutput spectrum() const;
  StageOutput jsa() const;
  StageOutput purity() const;

  /// Signal/idler centre frequencies used by the JSA stages.
  std::pair<double, double> jsa_centres() const;
  PumpSpec pump_spec() const;
  TauSet tau() const;

 private:
  ScenarioConfig config_;
  int threads_;
  std::optional<DispersionProfile> profile_;
  std::vector<FgvmPoint> fgvm_;
  std::optional<ResolvedPump> pump_;
  std::vector<std::string> resolved_;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"dispersion", "contours", "spectrum",
                                                 "jsa",        "purity",   "design-report"};
  return names;
}

/// Runs `subcommand` and writes its files into `out_dir`. Returns the file
/// names written, in order.
std::vector<std::string> run(const std::string& subcommand, const ScenarioConfig& config,
                             const std::filesystem::path& out_dir, int threads);

}  // namespace fwm::cli
