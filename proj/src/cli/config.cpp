#include "fwm/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fwm/errors.hpp"
#include "fwm/materials.hpp"

#ifndef FWM_PRESET_DIR
#define FWM_PRESET_DIR "presets"
#endif

namespace fwm::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::optional<double> parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace

const IniDocument::Entry* IniDocument::Section::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

IniDocument IniDocument::parse(const std::string& text, const std::string& source) {
  IniDocument doc;
  doc.source_ = source;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  Section* current = nullptr;
  const auto fail = [&](const std::string& msg) {
    throw ValidationError(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) fail("empty section name");
      if (doc.section(name)) fail("duplicate section [" + name + "]");
      doc.sections_.push_back({name, line_no, {}});
      current = &doc.sections_.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value', got '" + line + "'");
    if (!current) fail("entry '" + line + "' appears before any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key before '='");
    if (current->find(key)) fail("duplicate key '" + key + "' in [" + current->name + "]");
    current->entries.push_back({key, value, line_no});
  }
  return doc;
}

IniDocument IniDocument::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

const IniDocument::Section* IniDocument::section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

SectionReader::SectionReader(const IniDocument& doc, std::string section)
    : doc_(doc), name_(std::move(section)), section_(doc.section(name_)) {}

bool SectionReader::has(const std::string& key) const {
  return section_ && section_->find(key);
}

void SectionReader::fail(const std::string& key, const std::string& message) const {
  const IniDocument::Entry* e = section_ ? section_->find(key) : nullptr;
  std::string where = doc_.source();
  if (e) {
    where += ":" + std::to_string(e->line);
  } else if (section_) {
    where += ":" + std::to_string(section_->line);
  }
  throw ValidationError(where + ": [" + name_ + "] " + key + ": " + message);
}

const IniDocument::Entry& SectionReader::require(const std::string& key) const {
  const IniDocument::Entry* e = section_ ? section_->find(key) : nullptr;
  if (!e) {
    if (!section_) {
      throw ValidationError(doc_.source() + ": missing required field [" + name_ + "] " + key +
                            " (section [" + name_ + "] not found)");
    }
    fail(key, "missing required field");
  }
  if (e->value.empty()) fail(key, "empty value");
  return *e;
}

std::string SectionReader::text(const std::string& key) const { return require(key).value; }

std::string SectionReader::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double SectionReader::number(const std::string& key) const {
  const auto& e = require(key);
  const auto v = parse_double(e.value);
  if (!v) fail(key, "expected a number, got '" + e.value + "'");
  return *v;
}

double SectionReader::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int SectionReader::integer(const std::string& key) const {
  const auto& e = require(key);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), value);
  if (ec != std::errc() || ptr != e.value.data() + e.value.size()) {
    fail(key, "expected an integer, got '" + e.value + "'");
  }
  return value;
}

int SectionReader::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool SectionReader::boolean_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = text(key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(key, "expected true or false, got '" + v + "'");
}

std::vector<double> SectionReader::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) {
    const auto v = parse_double(item);
    if (!v) fail(key, "expected a comma-separated list of numbers, got '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> SectionReader::words(const std::string& key) const {
  auto out = split_list(text(key));
  if (std::any_of(out.begin(), out.end(), [](const std::string& s) { return s.empty(); })) {
    fail(key, "empty list item");
  }
  return out;
}

void SectionReader::reject_unknown(const std::vector<std::string>& known) const {
  if (!section_) return;
  for (const auto& e : section_->entries) {
    if (std::find(known.begin(), known.end(), e.key) == known.end()) {
      fail(e.key, "unknown key");
    }
  }
}

namespace {

WavelengthRange read_range(const SectionReader& s, const std::string& key) {
  const auto v = s.numbers(key);
  if (v.size() != 2) s.fail(key, "expected two values 'lo, hi'");
  if (!(v[0] > 0.0 && v[1] > v[0])) s.fail(key, "expected 0 < lo < hi");
  return {v[0], v[1]};
}

int positive_int(const SectionReader& s, const std::string& key, int fallback, int minimum) {
  const int v = s.integer_or(key, fallback);
  if (v < minimum) s.fail(key, "must be at least " + std::to_string(minimum));
  return v;
}

double positive(const SectionReader& s, const std::string& key) {
  const double v = s.number(key);
  if (!(v > 0.0)) s.fail(key, "must be > 0");
  return v;
}

Material custom_material(const IniDocument& doc, const std::string& name) {
  const SectionReader s(doc, "material." + name);
  s.reject_unknown({"type", "strengths", "resonances_um2", "range_nm", "index"});
  const std::string type = s.text("type");
  if (type == "constant") {
    const double n = positive(s, "index");
    return Material::constant(n, name);
  }
  if (type != "sellmeier") s.fail("type", "expected 'sellmeier' or 'constant', got '" + type + "'");
  const auto b = s.numbers("strengths");
  const auto c = s.numbers("resonances_um2");
  if (b.size() != c.size()) s.fail("resonances_um2", "needs one entry per strength");
  const auto range = read_range(s, "range_nm");
  SellmeierModel model{name, {}, range.lo_nm, range.hi_nm};
  for (std::size_t j = 0; j < b.size(); ++j) model.terms.push_back({b[j], c[j]});
  try {
    model.validate();
  } catch (const ValidationError& e) {
    s.fail("resonances_um2", e.what());
  }
  return Material::sellmeier(std::move(model));
}

Material resolve_material(const IniDocument& doc, const SectionReader& fiber,
                          const std::string& key, ScenarioConfig& cfg) {
  const std::string name = fiber.text(key);
  if (doc.section("material." + name)) {
    Material m = custom_material(doc, name);
    if (std::none_of(cfg.custom_materials.begin(), cfg.custom_materials.end(),
                     [&](const MaterialConfig& c) { return c.name == name; })) {
      cfg.custom_materials.push_back({name, m.describe()});
    }
    return m;
  }
  if (auto m = builtin_material(name)) return *m;
  fiber.fail(key, "unknown material '" + name + "' (built-in: fused_silica, bismuth_borate, air; "
                  "or define [material." + name + "])");
}

}  // namespace

ScenarioConfig build_scenario(const IniDocument& doc) {
  ScenarioConfig cfg;
  cfg.source = doc.source();

  static const std::vector<std::string> kSections = {"fiber",  "dispersion", "pump",   "contours",
                                                     "spectrum", "jsa",      "purity", "output"};
  for (const auto& s : doc.sections()) {
    if (s.name.rfind("material.", 0) == 0) continue;
    if (std::find(kSections.begin(), kSections.end(), s.name) == kSections.end()) {
      throw ValidationError(doc.source() + ":" + std::to_string(s.line) + ": unknown section [" +
                            s.name + "]");
    }
  }

  const SectionReader fiber(doc, "fiber");
  fiber.reject_unknown(
      {"core_radius_um", "core", "cladding", "index_contrast", "gamma_per_w_km", "length_m"});
  cfg.fiber.core_radius_um = positive(fiber, "core_radius_um");
  cfg.core_name = fiber.text("core");
  cfg.cladding_name = fiber.text("cladding");
  Material core = resolve_material(doc, fiber, "core", cfg);
  cfg.fiber.cladding = resolve_material(doc, fiber, "cladding", cfg);
  if (fiber.has("index_contrast")) {
    const double contrast = fiber.number("index_contrast");
    if (!(contrast > 0.0 && contrast < 1.0)) fiber.fail("index_contrast", "must lie in (0, 1)");
    cfg.index_contrast = contrast;
    core = Material::scaled(core, contrast);
  }
  cfg.fiber.core = core;
  cfg.fiber.gamma_per_w_km = fiber.number("gamma_per_w_km");
  if (cfg.fiber.gamma_per_w_km < 0.0) fiber.fail("gamma_per_w_km", "must be >= 0");
  cfg.fiber.length_m = positive(fiber, "length_m");

  const SectionReader disp(doc, "dispersion");
  disp.reject_unknown({"window_nm", "degree", "samples", "table_points", "fgvm_window_nm"});
  if (disp.has("window_nm")) cfg.dispersion.window = read_range(disp, "window_nm");
  cfg.dispersion.degree = positive_int(disp, "degree", cfg.dispersion.degree, 1);
  cfg.dispersion.samples = positive_int(disp, "samples", cfg.dispersion.samples, 2);
  if (cfg.dispersion.samples < 2 * (cfg.dispersion.degree + 1)) {
    disp.fail("samples", "must be at least 2 * (degree + 1)");
  }
  cfg.dispersion.table_points = positive_int(disp, "table_points", cfg.dispersion.table_points, 2);
  cfg.dispersion.fgvm_window =
      disp.has("fgvm_window_nm") ? read_range(disp, "fgvm_window_nm") : cfg.dispersion.window;

  const SectionReader pump(doc, "pump");
  pump.reject_unknown({"wavelength_nm", "power_w", "fwhm_nm", "gvm_index"});
  if (pump.present()) {
    cfg.pump.present = true;
    const std::string wl = pump.text("wavelength_nm");
    if (wl == "auto-gvm") {
      cfg.pump.auto_gvm = true;
    } else {
      cfg.pump.wavelength_nm = positive(pump, "wavelength_nm");
    }
    const std::string pw = pump.text("power_w");
    if (pw == "auto-critical") {
      if (!cfg.pump.auto_gvm) pump.fail("power_w", "'auto-critical' requires wavelength_nm = auto-gvm");
      cfg.pump.auto_critical = true;
    } else {
      cfg.pump.power_w = pump.number("power_w");
      if (cfg.pump.power_w < 0.0) pump.fail("power_w", "must be >= 0");
    }
    cfg.pump.fwhm_nm = pump.number_or("fwhm_nm", 0.0);
    if (cfg.pump.fwhm_nm < 0.0) pump.fail("fwhm_nm", "must be >= 0");
    cfg.pump.gvm_index = pump.integer_or("gvm_index", 0);
    if (cfg.pump.gvm_index < 0) pump.fail("gvm_index", "must be >= 0");
  }

  const SectionReader cont(doc, "contours");
  cont.reject_unknown({"pump_range_nm", "detuning_range", "pump_points", "detuning_points",
                       "powers_w", "write_maps"});
  if (cont.present()) {
    cfg.contours.present = true;
    cfg.contours.pump_range = read_range(cont, "pump_range_nm");
    const auto d = cont.numbers("detuning_range");
    if (d.size() != 2 || !(d[1] > d[0])) cont.fail("detuning_range", "expected 'min, max' with min < max");
    cfg.contours.detuning_min = d[0];
    cfg.contours.detuning_max = d[1];
    cfg.contours.pump_points = positive_int(cont, "pump_points", cfg.contours.pump_points, 2);
    cfg.contours.detuning_points =
        positive_int(cont, "detuning_points", cfg.contours.detuning_points, 2);
    if (cont.has("powers_w")) {
      cfg.contours.powers_w = cont.numbers("powers_w");
      for (double p : cfg.contours.powers_w) {
        if (p < 0.0) cont.fail("powers_w", "powers must be >= 0");
      }
    }
    cfg.contours.write_maps = cont.boolean_or("write_maps", true);
  }

  const SectionReader spec(doc, "spectrum");
  spec.reject_unknown({"half_width", "points", "sweep_nm", "sweep_points"});
  if (spec.present()) {
    cfg.spectrum.present = true;
    cfg.spectrum.half_width = positive(spec, "half_width");
    cfg.spectrum.points = positive_int(spec, "points", cfg.spectrum.points, 3);
    if (spec.has("sweep_nm")) cfg.spectrum.sweep = read_range(spec, "sweep_nm");
    cfg.spectrum.sweep_points = positive_int(spec, "sweep_points", cfg.spectrum.sweep_points, 2);
  }

  const SectionReader jsa(doc, "jsa");
  jsa.reject_unknown({"signal_wavelength_nm", "half_width", "points", "nodes",
                      "check_convergence", "tolerance", "numeric"});
  if (jsa.present()) {
    cfg.jsa.present = true;
    if (jsa.has("signal_wavelength_nm")) cfg.jsa.signal_wavelength_nm = positive(jsa, "signal_wavelength_nm");
    cfg.jsa.half_width = positive(jsa, "half_width");
    cfg.jsa.points = positive_int(jsa, "points", cfg.jsa.points, 2);
    cfg.jsa.nodes = positive_int(jsa, "nodes", cfg.jsa.nodes, 1);
    cfg.jsa.check_convergence = jsa.boolean_or("check_convergence", cfg.jsa.check_convergence);
    cfg.jsa.tolerance = jsa.number_or("tolerance", cfg.jsa.tolerance);
    if (!(cfg.jsa.tolerance > 0.0)) jsa.fail("tolerance", "must be > 0");
    cfg.jsa.numeric = jsa.boolean_or("numeric", cfg.jsa.numeric);
  }

  const SectionReader pur(doc, "purity");
  pur.reject_unknown({"points", "half_width", "method"});
  if (pur.present()) {
    cfg.purity.present = true;
    cfg.purity.points = positive_int(pur, "points", cfg.purity.points, 2);
    cfg.purity.half_width = pur.number_or("half_width", 0.0);
    if (cfg.purity.half_width < 0.0) pur.fail("half_width", "must be >= 0");
    cfg.purity.method = pur.text_or("method", cfg.purity.method);
    if (cfg.purity.method != "analytic" && cfg.purity.method != "numeric") {
      pur.fail("method", "expected 'analytic' or 'numeric'");
    }
  }

  const SectionReader out(doc, "output");
  out.reject_unknown({"directory", "scenario", "stages"});
  cfg.output.directory = out.text_or("directory", cfg.output.directory);
  cfg.output.scenario = out.text_or("scenario", "");
  if (out.has("stages")) {
    static const std::vector<std::string> kStages = {"dispersion", "contours", "spectrum", "jsa",
                                                     "purity"};
    cfg.output.stages = out.words("stages");
    for (const auto& st : cfg.output.stages) {
      if (std::find(kStages.begin(), kStages.end(), st) == kStages.end()) {
        out.fail("stages", "unknown stage '" + st + "'");
      }
    }
  }
  return cfg;
}

std::vector<std::string> ScenarioConfig::describe() const {
  std::vector<std::string> lines;
  const auto add = [&](const std::string& key, const std::string& value) {
    lines.push_back(key + " = " + value);
  };
  add("fiber.core_radius_um", fmt(fiber.core_radius_um));
  add("fiber.core", core_name);
  add("fiber.cladding", cladding_name);
  if (index_contrast) add("fiber.index_contrast", fmt(*index_contrast));
  add("fiber.gamma_per_w_km", fmt(fiber.gamma_per_w_km));
  add("fiber.length_m", fmt(fiber.length_m));
  add("fiber.core_model", fiber.core.describe());
  add("fiber.cladding_model", fiber.cladding.describe());
  for (const auto& m : custom_materials) add("material." + m.name, m.description);
  add("dispersion.window_nm", join({dispersion.window.lo_nm, dispersion.window.hi_nm}));
  add("dispersion.degree", std::to_string(dispersion.degree));
  add("dispersion.samples", std::to_string(dispersion.samples));
  add("dispersion.table_points", std::to_string(dispersion.table_points));
  add("dispersion.fgvm_window_nm",
      join({dispersion.fgvm_window.lo_nm, dispersion.fgvm_window.hi_nm}));
  if (pump.present) {
    add("pump.wavelength_nm", pump.auto_gvm ? "auto-gvm" : fmt(pump.wavelength_nm));
    add("pump.power_w", pump.auto_critical ? "auto-critical" : fmt(pump.power_w));
    add("pump.fwhm_nm", fmt(pump.fwhm_nm));
    add("pump.gvm_index", std::to_string(pump.gvm_index));
  }
  if (contours.present) {
    add("contours.pump_range_nm", join({contours.pump_range.lo_nm, contours.pump_range.hi_nm}));
    add("contours.detuning_range", join({contours.detuning_min, contours.detuning_max}));
    add("contours.pump_points", std::to_string(contours.pump_points));
    add("contours.detuning_points", std::to_string(contours.detuning_points));
    add("contours.powers_w", contours.powers_w.empty() ? "pump" : join(contours.powers_w));
    add("contours.write_maps", contours.write_maps ? "true" : "false");
  }
  if (spectrum.present) {
    add("spectrum.half_width", fmt(spectrum.half_width));
    add("spectrum.points", std::to_string(spectrum.points));
    if (spectrum.sweep) {
      add("spectrum.sweep_nm", join({spectrum.sweep->lo_nm, spectrum.sweep->hi_nm}));
      add("spectrum.sweep_points", std::to_string(spectrum.sweep_points));
    }
  }
  if (jsa.present) {
    add("jsa.signal_wavelength_nm",
        jsa.signal_wavelength_nm ? fmt(*jsa.signal_wavelength_nm) : "auto");
    add("jsa.half_width", fmt(jsa.half_width));
    add("jsa.points", std::to_string(jsa.points));
    add("jsa.nodes", std::to_string(jsa.nodes));
    add("jsa.check_convergence", jsa.check_convergence ? "true" : "false");
    add("jsa.tolerance", fmt(jsa.tolerance));
    add("jsa.numeric", jsa.numeric ? "true" : "false");
  }
  if (purity.present) {
    add("purity.points", std::to_string(purity.points));
    add("purity.half_width", purity.half_width > 0.0 ? fmt(purity.half_width) : "jsa");
    add("purity.method", purity.method);
  }
  if (!output.scenario.empty()) add("output.scenario", output.scenario);
  if (!output.stages.empty()) {
    std::string s;
    for (std::size_t i = 0; i < output.stages.size(); ++i) s += (i ? ", " : "") + output.stages[i];
    add("output.stages", s);
  }
  return lines;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2b", "fig3", "fig4"}; }

std::string preset_path(const std::string& name) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ValidationError("unknown preset '" + name + "' (available: fig1, fig2b, fig3, fig4)");
  }
  return (std::filesystem::path(FWM_PRESET_DIR) / (name + ".ini")).string();
}

}  // namespace fwm::cli
