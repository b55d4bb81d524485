#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fwm/fiber_modes.hpp"

namespace fwm::cli {

/// Parsed `key = value` file with bracketed sections and `#` comments.
///
/// Sections and keys keep their first-appearance order. Every value remembers
/// its source line so that validation errors can point at it.
class IniDocument {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
    const Entry* find(const std::string& key) const;
  };

  static IniDocument parse(const std::string& text, const std::string& source = "<config>");
  static IniDocument load(const std::string& path);

  const Section* section(const std::string& name) const;
  const std::vector<Section>& sections() const { return sections_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Section> sections_;
};

/// Typed view of one section; every accessor reports errors as
/// `<source>:<line>: [section] key: message`.
class SectionReader {
 public:
  SectionReader(const IniDocument& doc, std::string section);

  bool present() const { return section_ != nullptr; }
  bool has(const std::string& key) const;

  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> words(const std::string& key) const;

  /// Keys present in the file but not in `known`.
  void reject_unknown(const std::vector<std::string>& known) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  const IniDocument::Entry& require(const std::string& key) const;

  const IniDocument& doc_;
  std::string name_;
  const IniDocument::Section* section_;
};

struct WavelengthRange {
  double lo_nm = 0.0;
  double hi_nm = 0.0;
};

struct DispersionConfig {
  WavelengthRange window{1000.0, 2400.0};
  int degree = 16;
  int samples = 200;
  int table_points = 400;
  WavelengthRange fgvm_window{0.0, 0.0};  // defaults to the fit window
};

struct PumpConfig {
  bool present = false;
  bool auto_gvm = false;
  double wavelength_nm = 0.0;
  bool auto_critical = false;
  double power_w = 0.0;
  double fwhm_nm = 0.0;  // intensity FWHM; 0 means cw
  int gvm_index = 0;
};

struct ContoursConfig {
  bool present = false;
  WavelengthRange pump_range;
  double detuning_min = 0.0;  // rad/fs
  double detuning_max = 0.0;
  int pump_points = 400;
  int detuning_points = 400;
  std::vector<double> powers_w;  // empty: use the pump power
  bool write_maps = true;
};

struct SpectrumConfig {
  bool present = false;
  double half_width = 0.0;  // rad/fs around the pump
  int points = 4001;
  std::optional<WavelengthRange> sweep;
  int sweep_points = 10;
};

struct JsaConfig {
  bool present = false;
  std::optional<double> signal_wavelength_nm;  // required unless auto-gvm
  double half_width = 0.0;                     // rad/fs around each centre
  int points = 256;
  int nodes = 201;
  bool check_convergence = true;
  double tolerance = 1e-6;
  bool numeric = true;
};

struct PurityConfig {
  bool present = false;
  int points = 512;
  double half_width = 0.0;  // 0: take the [jsa] half width
  std::string method = "analytic";
};

struct OutputConfig {
  std::string directory = "out";
  std::string scenario;
  std::vector<std::string> stages;  // design-report stage list
};

struct MaterialConfig {
  std::string name;
  std::string description;
};

/// Fully validated scenario.
struct ScenarioConfig {
  std::string source;
  FiberSpec fiber;
  std::string core_name;
  std::string cladding_name;
  std::optional<double> index_contrast;
  DispersionConfig dispersion;
  PumpConfig pump;
  ContoursConfig contours;
  SpectrumConfig spectrum;
  JsaConfig jsa;
  PurityConfig purity;
  OutputConfig output;
  std::vector<MaterialConfig> custom_materials;

  /// `section.key = value` lines describing every setting, defaults included.
  std::vector<std::string> describe() const;
};

/// Validates a parsed document. Throws ValidationError naming the first
/// missing or malformed field.
ScenarioConfig build_scenario(const IniDocument& doc);

/// Path of a bundled preset (`fig1`, `fig2b`, `fig3`, `fig4`).
std::string preset_path(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace fwm::cli
