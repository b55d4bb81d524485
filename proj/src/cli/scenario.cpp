#include "fwm/cli/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "fwm/contour.hpp"
#include "fwm/errors.hpp"
#include "fwm/phasematching.hpp"
#include "fwm/schmidt.hpp"
#include "fwm/units.hpp"

namespace fwm::cli {

namespace {

FrequencyWindow window_of(const WavelengthRange& r) { return window_from_wavelengths(r.lo_nm, r.hi_nm); }

std::string numbered(const std::string& prefix, std::size_t index, const std::string& suffix) {
  return prefix + "_" + std::to_string(index + 1) + suffix;
}

void write_jsa_files(const JsaGrid& grid, const std::string& tag, const std::string& header,
                     std::vector<OutputFile>& files) {
  CsvWriter amp({"omega_s", "omega_i", "lambda_s_nm", "lambda_i_nm", "re", "im"});
  CsvWriter jsi({"omega_s", "omega_i", "lambda_s_nm", "lambda_i_nm", "jsi"});
  for (int i = 0; i < grid.signal_axis.count; ++i) {
    const double ws = grid.signal_axis.at(i);
    for (int j = 0; j < grid.idler_axis.count; ++j) {
      const double wi = grid.idler_axis.at(j);
      const auto f = grid.amplitude(i, j);
      const double ls = omega_to_wavelength(ws), li = omega_to_wavelength(wi);
      amp.row({ws, wi, ls, li, f.real(), f.imag()});
      jsi.row({ws, wi, ls, li, std::norm(f)});
    }
  }
  files.push_back({"jsa_" + tag + ".csv", header + amp.str()});
  files.push_back({"jsi_" + tag + ".csv", header + jsi.str()});
}

void add_peak(Summary& s, const std::string& tag, const JsaGrid& grid) {
  const auto [pi, pj] = peak_index(grid);
  s.add(tag + "_peak_signal_nm", omega_to_wavelength(grid.signal_axis.at(pi)));
  s.add(tag + "_peak_idler_nm", omega_to_wavelength(grid.idler_axis.at(pj)));
}

}  // namespace

Scenario::Scenario(ScenarioConfig config, int threads)
    : config_(std::move(config)), threads_(std::max(1, threads)) {
  ProfileOptions opts;
  opts.degree = config_.dispersion.degree;
  opts.samples = config_.dispersion.samples;
  profile_ = build_profile(config_.fiber, window_of(config_.dispersion.window), opts);
  fgvm_ = find_fgvm_points(*profile_, window_of(config_.dispersion.fgvm_window));
  resolved_ = config_.describe();

  if (!config_.pump.present) return;
  ResolvedPump p;
  if (config_.pump.auto_gvm) {
    std::vector<FgvmPoint> interior;
    std::copy_if(fgvm_.begin(), fgvm_.end(), std::back_inserter(interior),
                 [](const FgvmPoint& q) { return q.kind == FgvmKind::LoopInterior; });
    if (interior.empty()) {
      throw ValidationError("[pump] wavelength_nm = auto-gvm, but no loop-interior FGVM point "
                            "exists in [dispersion] fgvm_window_nm");
    }
    if (config_.pump.gvm_index >= static_cast<int>(interior.size())) {
      throw ValidationError("[pump] gvm_index = " + std::to_string(config_.pump.gvm_index) +
                            " but only " + std::to_string(interior.size()) +
                            " loop-interior FGVM point(s) exist");
    }
    p.fgvm = interior[static_cast<std::size_t>(config_.pump.gvm_index)];
    p.omega_p = p.fgvm->omega_p;
  } else {
    p.omega_p = wavelength_to_omega(config_.pump.wavelength_nm);
  }
  p.power_w = config_.pump.auto_critical
                  ? critical_power(*profile_, config_.fiber.gamma_per_w_km, *p.fgvm)
                  : config_.pump.power_w;
  if (config_.pump.fwhm_nm > 0.0) {
    p.sigma = sigma_from_fwhm_nm(config_.pump.fwhm_nm, omega_to_wavelength(p.omega_p));
  }
  resolved_.push_back("resolved.pump_wavelength_nm = " + format_number(omega_to_wavelength(p.omega_p)));
  resolved_.push_back("resolved.pump_omega = " + format_number(p.omega_p));
  resolved_.push_back("resolved.power_w = " + format_number(p.power_w));
  resolved_.push_back("resolved.sigma = " + format_number(p.sigma));
  if (p.fgvm) {
    resolved_.push_back("resolved.fgvm_signal_nm = " + format_number(omega_to_wavelength(p.fgvm->omega_s)));
    resolved_.push_back("resolved.fgvm_idler_nm = " + format_number(omega_to_wavelength(p.fgvm->omega_i)));
  }
  pump_ = p;
}

const ResolvedPump& Scenario::pump() const {
  if (!pump_) throw ValidationError("missing required section [pump]");
  return *pump_;
}

StageOutput Scenario::dispersion() const {
  StageOutput out;
  const std::string header = config_header(resolved_, "dispersion table");
  const auto usable = profile_->usable_window();
  const UniformAxis axis{usable.omega_min, usable.omega_max, config_.dispersion.table_points};
  CsvWriter table({"omega", "lambda_nm", "k", "k1", "k2", "k3"});
  for (int i = 0; i < axis.count; ++i) {
    const double w = axis.at(i);
    table.row({w, omega_to_wavelength(w), profile_->k(w), profile_->k1(w), profile_->k2(w),
               profile_->k3(w)});
  }
  out.files.push_back({"dispersion_table.csv", header + table.str()});

  auto& s = out.summary;
  s.add("fit_residual", profile_->fit_residual());
  const auto zdfs = find_zdfs(*profile_);
  // Report ZDWs in increasing wavelength.
  std::vector<double> zdws;
  for (double w : zdfs) zdws.push_back(omega_to_wavelength(w));
  std::sort(zdws.begin(), zdws.end());
  s.add("zdw_count", static_cast<int>(zdws.size()));
  for (std::size_t i = 0; i < zdws.size(); ++i) s.add(numbered("zdw", i, "_nm"), zdws[i]);
  s.add("fgvm_count", static_cast<int>(fgvm_.size()));
  for (std::size_t i = 0; i < fgvm_.size(); ++i) {
    const auto& q = fgvm_[i];
    const std::string p = numbered("fgvm", i, "");
    s.add(p + "_kind", to_string(q.kind));
    s.add(p + "_pump_nm", omega_to_wavelength(q.omega_p));
    s.add(p + "_signal_nm", omega_to_wavelength(q.omega_s));
    s.add(p + "_idler_nm", omega_to_wavelength(q.omega_i));
    s.add(p + "_delta", q.delta);
    if (q.kind == FgvmKind::LoopInterior) {
      s.add(p + "_delta_k_linear", delta_k_linear(*profile_, q.omega_p, q.delta));
      if (delta_k_linear(*profile_, q.omega_p, q.delta) > 0.0) {
        s.add(p + "_critical_power_w", critical_power(*profile_, config_.fiber.gamma_per_w_km, q));
      } else {
        s.add(p + "_critical_power_w", "none");
      }
    }
  }
  for (double wl : {config_.dispersion.window.lo_nm, config_.dispersion.window.hi_nm}) {
    const auto v = v_number(config_.fiber, wl);
    const std::string key = "v_number_at_" + format_number(wl) + "nm";
    s.add(key, v.value);
    s.add(key + "_single_mode", v.single_mode ? "true" : "false");
  }
  out.files.push_back({"dispersion_summary.txt", config_header(resolved_, "dispersion summary") + s.str()});
  return out;
}

StageOutput Scenario::contours() const {
  if (!config_.contours.present) throw ValidationError("missing required section [contours]");
  const auto& c = config_.contours;
  StageOutput out;
  std::vector<double> powers = c.powers_w;
  if (powers.empty()) powers.push_back(pump().power_w);

  const auto pw = window_of(c.pump_range);
  const UniformAxis pump_axis{pw.omega_min, pw.omega_max, c.pump_points};
  const UniformAxis det_axis{c.detuning_min, c.detuning_max, c.detuning_points};

  CsvWriter lines({"power_w", "loop_id", "closed", "omega_p", "delta", "lambda_p_nm"});
  auto& s = out.summary;
  s.add("power_count", static_cast<int>(powers.size()));
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const PmMap map = pm_map(*profile_, config_.fiber.gamma_per_w_km, powers[k], pump_axis,
                             det_axis, MapKind::Mismatch, 0.0, threads_);
    if (c.write_maps) {
      CsvWriter csv({"omega_p", "delta", "lambda_p_nm", "delta_k"});
      for (int j = 0; j < det_axis.count; ++j) {
        for (int i = 0; i < pump_axis.count; ++i) {
          csv.row({pump_axis.at(i), det_axis.at(j), omega_to_wavelength(pump_axis.at(i)), map.at(i, j)});
        }
      }
      out.files.push_back({numbered("pm_map", k, ".csv"),
                           config_header(resolved_, "phase mismatch map (rad/nm), P = " +
                                                        format_number(powers[k]) + " W") +
                               csv.str()});
    }
    const auto loops = trace_contours(map, 0.0);
    int closed = 0;
    for (std::size_t id = 0; id < loops.size(); ++id) {
      closed += loops[id].closed ? 1 : 0;
      for (const auto& v : loops[id].vertices) {
        lines.row({powers[k], static_cast<double>(id), loops[id].closed ? 1.0 : 0.0, v.x, v.y,
                   omega_to_wavelength(v.x)});
      }
    }
    const std::string p = numbered("power", k, "");
    s.add(p + "_w", powers[k]);
    s.add(p + "_contours", static_cast<int>(loops.size()));
    s.add(p + "_closed_loops", closed);
  }
  for (std::size_t i = 0; i < fgvm_.size(); ++i) {
    if (fgvm_[i].kind != FgvmKind::LoopInterior || !pw.contains(fgvm_[i].omega_p)) continue;
    if (!(delta_k_linear(*profile_, fgvm_[i].omega_p, fgvm_[i].delta) > 0.0)) continue;
    s.add(numbered("fgvm", i, "_critical_power_w"),
          critical_power(*profile_, config_.fiber.gamma_per_w_km, fgvm_[i]));
  }
  out.files.push_back({"contours.csv", config_header(resolved_, "dk = 0 contours") + lines.str()});
  out.files.push_back({"contours_summary.txt", config_header(resolved_, "contour summary") + s.str()});
  return out;
}

StageOutput Scenario::spectrum() const {
  if (!config_.spectrum.present) throw ValidationError("missing required section [spectrum]");
  const auto& sc = config_.spectrum;
  const auto& p = pump();
  StageOutput out;
  const double gamma = config_.fiber.gamma_per_w_km, length = config_.fiber.length_m;

  const auto axis = UniformAxis::centred(p.omega_p, sc.half_width, sc.points).values();
  const auto spec = singles_spectrum(*profile_, gamma, p.power_w, length, p.omega_p, axis);
  CsvWriter csv({"omega", "lambda_nm", "singles"});
  for (std::size_t i = 0; i < axis.size(); ++i) csv.row({axis[i], omega_to_wavelength(axis[i]), spec[i]});
  out.files.push_back({"spectrum.csv", config_header(resolved_, "singles spectrum") + csv.str()});

  auto& s = out.summary;
  s.add("pump_nm", omega_to_wavelength(p.omega_p));
  s.add("power_w", p.power_w);
  s.add("fwhm_nm", fwhm_wavelength(spec, axis));
  s.add("fwhm_omega", fwhm(spec, axis));

  if (sc.sweep) {
    CsvWriter sweep({"pump_nm", "fwhm_nm"});
    const UniformAxis pumps{sc.sweep->lo_nm, sc.sweep->hi_nm, sc.sweep_points};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pumps.count; ++i) {
      const double wp = wavelength_to_omega(pumps.at(i));
      const auto ax = UniformAxis::centred(wp, sc.half_width, sc.points).values();
      const auto sp = singles_spectrum(*profile_, gamma, p.power_w, length, wp, ax);
      const double width = fwhm_wavelength(sp, ax);
      worst = std::min(worst, width);
      sweep.row({pumps.at(i), width});
    }
    s.add("sweep_min_fwhm_nm", worst);
    out.files.push_back({"spectrum_sweep.csv", config_header(resolved_, "FWHM vs pump wavelength") + sweep.str()});
  }
  out.files.push_back({"spectrum_summary.txt", config_header(resolved_, "spectrum summary") + s.str()});
  return out;
}

std::pair<double, double> Scenario::jsa_centres() const {
  const auto& p = pump();
  if (config_.jsa.signal_wavelength_nm) {
    const double ws = wavelength_to_omega(*config_.jsa.signal_wavelength_nm);
    return {ws, 2.0 * p.omega_p - ws};
  }
  if (p.fgvm) return {p.fgvm->omega_s, p.fgvm->omega_i};
  throw ValidationError(
      "[jsa] signal_wavelength_nm is required unless [pump] wavelength_nm = auto-gvm");
}

PumpSpec Scenario::pump_spec() const {
  const auto& p = pump();
  if (!(p.sigma > 0.0)) throw ValidationError("[pump] fwhm_nm must be > 0 for JSA stages");
  return {p.omega_p, p.sigma, p.power_w};
}

TauSet Scenario::tau() const {
  const auto [ws, wi] = jsa_centres();
  const auto& p = pump();
  return tau_coefficients(*profile_, config_.fiber.length_m, config_.fiber.gamma_per_w_km,
                          p.power_w, p.omega_p, ws, wi);
}

StageOutput Scenario::jsa() const {
  if (!config_.jsa.present) throw ValidationError("missing required section [jsa]");
  const auto& jc = config_.jsa;
  StageOutput out;
  const auto [ws, wi] = jsa_centres();
  const PumpSpec ps = pump_spec();
  const TauSet t = tau();
  const auto sa = UniformAxis::centred(ws, jc.half_width, jc.points);
  const auto ia = UniformAxis::centred(wi, jc.half_width, jc.points);

  auto& s = out.summary;
  s.add("signal_nm", omega_to_wavelength(ws));
  s.add("idler_nm", omega_to_wavelength(wi));
  s.add("sigma", ps.sigma);
  s.add("tau_s1", t.tau_s1);
  s.add("tau_i1", t.tau_i1);
  s.add("tau_s2", t.tau_s2);
  s.add("tau_i2", t.tau_i2);
  s.add("tau_p2", t.tau_p2);
  s.add("l_delta_k0", t.l_delta_k0);
  s.add("c0", c0_parameter(t, ps));
  if (t.tau_s1 == 0.0 && t.tau_i1 == 0.0) {
    s.add("theta_pm_deg", "undefined");
  } else {
    s.add("theta_pm_deg", theta_pm(t.tau_s1, t.tau_i1));
  }

  const JsaGrid analytic = jsa_analytic(t, ps, sa, ia, threads_);
  write_jsa_files(analytic, "analytic", config_header(resolved_, "analytic JSA"), out.files);
  add_peak(s, "analytic", analytic);
  if (jc.numeric) {
    NumericJsaOptions opts{jc.nodes, jc.check_convergence, jc.tolerance, threads_};
    const JsaGrid numeric = jsa_numeric(*profile_, config_.fiber, ps, sa, ia, opts);
    write_jsa_files(numeric, "numeric", config_header(resolved_, "numeric JSA"), out.files);
    add_peak(s, "numeric", numeric);
    s.add("linf_distance", magnitude_linf_distance(analytic, numeric));
  }
  out.files.push_back({"jsa_summary.txt", config_header(resolved_, "JSA summary") + s.str()});
  return out;
}

StageOutput Scenario::purity() const {
  if (!config_.purity.present) throw ValidationError("missing required section [purity]");
  const auto& pc = config_.purity;
  double half_width = pc.half_width;
  if (half_width == 0.0) {
    if (!config_.jsa.present) {
      throw ValidationError("[purity] half_width is required when there is no [jsa] section");
    }
    half_width = config_.jsa.half_width;
  }
  const auto [ws, wi] = jsa_centres();
  const PumpSpec ps = pump_spec();
  const auto sa = UniformAxis::centred(ws, half_width, pc.points);
  const auto ia = UniformAxis::centred(wi, half_width, pc.points);
  JsaGrid grid;
  if (pc.method == "analytic") {
    grid = jsa_analytic(tau(), ps, sa, ia, threads_);
  } else {
    NumericJsaOptions opts{config_.jsa.nodes, config_.jsa.check_convergence, config_.jsa.tolerance,
                           threads_};
    grid = jsa_numeric(*profile_, config_.fiber, ps, sa, ia, opts);
  }
  const auto result = schmidt_decompose(grid);

  StageOutput out;
  auto& s = out.summary;
  s.add("method", pc.method);
  s.add("grid_points", pc.points);
  s.add("half_width", half_width);
  s.add("purity", result.purity);
  s.add("schmidt_number", result.schmidt_number);
  const std::size_t shown = std::min<std::size_t>(10, result.coefficients.size());
  for (std::size_t i = 0; i < shown; ++i) s.add(numbered("lambda", i, ""), result.coefficients[i]);
  out.files.push_back({"purity_report.txt", config_header(resolved_, "Schmidt report") + s.str()});
  return out;
}

std::vector<std::string> run(const std::string& subcommand, const ScenarioConfig& config,
                             const std::filesystem::path& out_dir, int threads) {
  if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end()) {
    throw ValidationError("unknown subcommand '" + subcommand + "'");
  }
  const Scenario scenario(config, threads);
  std::vector<OutputFile> files;
  const auto stage = [&](const std::string& name) -> StageOutput {
    if (name == "dispersion") return scenario.dispersion();
    if (name == "contours") return scenario.contours();
    if (name == "spectrum") return scenario.spectrum();
    if (name == "jsa") return scenario.jsa();
    return scenario.purity();
  };

  if (subcommand != "design-report") {
    auto result = stage(subcommand);
    files = std::move(result.files);
  } else {
    std::vector<std::string> stages = config.output.stages;
    if (stages.empty()) {
      stages.push_back("dispersion");
      if (config.contours.present) stages.push_back("contours");
      if (config.spectrum.present) stages.push_back("spectrum");
      if (config.jsa.present) stages.push_back("jsa");
      if (config.purity.present) stages.push_back("purity");
    }
    const std::string title =
        "design report" + (config.output.scenario.empty() ? "" : ": " + config.output.scenario);
    std::string report = config_header(scenario.resolved(), title);
    for (const auto& name : stages) {
      auto result = stage(name);
      report += "\n[" + name + "]\n" + result.summary.str();
      for (auto& f : result.files) files.push_back(std::move(f));
    }
    files.push_back({"design_report.txt", report});
  }

  std::vector<std::string> names;
  for (const auto& f : files) {
    write_atomic(out_dir, f.name, f.content);
    names.push_back(f.name);
  }
  return names;
}

}  // namespace fwm::cli
