#include "fwm/materials.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fwm/errors.hpp"

namespace fwm {

namespace {

double sellmeier_index(const SellmeierModel& model, double wavelength_nm) {
  if (!(wavelength_nm >= model.lambda_min_nm && wavelength_nm <= model.lambda_max_nm)) {
    std::ostringstream msg;
    msg << "wavelength " << wavelength_nm << " nm outside valid range ["
        << model.lambda_min_nm << ", " << model.lambda_max_nm << "] of material '"
        << model.name << "'";
    throw RangeError(msg.str());
  }
  const double l2 = (wavelength_nm * 1e-3) * (wavelength_nm * 1e-3);
  double n2 = 1.0;
  for (const auto& term : model.terms) {
    const double denom = l2 - term.resonance_um2;
    if (std::abs(denom) <= kSellmeierPoleGuard) {
      std::ostringstream msg;
      msg << "material '" << model.name << "': wavelength " << wavelength_nm
          << " nm sits on a Sellmeier pole (C=" << term.resonance_um2 << " um^2)";
      throw EvaluationError(msg.str());
    }
    n2 += term.strength * l2 / denom;
  }
  if (!(n2 > 0.0)) {
    throw EvaluationError("material '" + model.name + "': n^2 <= 0 at " +
                          std::to_string(wavelength_nm) + " nm");
  }
  return std::sqrt(n2);
}

}  // namespace

void SellmeierModel::validate() const {
  if (!(lambda_min_nm > 0.0 && lambda_max_nm > lambda_min_nm)) {
    throw ValidationError("material '" + name + "': invalid wavelength range");
  }
  for (const auto& term : terms) {
    if (!(term.resonance_um2 > 0.0)) {
      throw ValidationError("material '" + name + "': Sellmeier resonances must be > 0");
    }
    if (!std::isfinite(term.strength)) {
      throw ValidationError("material '" + name + "': non-finite Sellmeier strength");
    }
  }
}

Material Material::sellmeier(SellmeierModel model) {
  model.validate();
  return Material(std::move(model));
}

Material Material::constant(double index, std::string name) {
  if (!(index >= 1.0) || !std::isfinite(index)) {
    throw ValidationError("constant material '" + name + "' needs a finite index >= 1");
  }
  return Material(Constant{index, std::move(name)});
}

Material Material::scaled(Material base, double contrast) {
  if (!(contrast >= 0.0 && contrast < 1.0)) {
    throw ValidationError("index contrast must lie in [0, 1)");
  }
  return Material(Scaled{std::make_shared<const Material>(std::move(base)), contrast});
}

double Material::refractive_index(double wavelength_nm) const {
  struct Visitor {
    double wavelength_nm;
    double operator()(const SellmeierModel& m) const { return sellmeier_index(m, wavelength_nm); }
    double operator()(const Constant& c) const { return c.index; }
    double operator()(const Scaled& s) const {
      return s.base->refractive_index(wavelength_nm) / (1.0 - s.contrast);
    }
  };
  return std::visit(Visitor{wavelength_nm}, repr_);
}

std::pair<double, double> Material::valid_range_nm() const {
  struct Visitor {
    std::pair<double, double> operator()(const SellmeierModel& m) const {
      return {m.lambda_min_nm, m.lambda_max_nm};
    }
    std::pair<double, double> operator()(const Constant&) const {
      return {0.0, std::numeric_limits<double>::infinity()};
    }
    std::pair<double, double> operator()(const Scaled& s) const { return s.base->valid_range_nm(); }
  };
  return std::visit(Visitor{}, repr_);
}

bool Material::is_constant() const {
  if (std::holds_alternative<Constant>(repr_)) return true;
  if (const auto* s = std::get_if<Scaled>(&repr_)) return s->base->is_constant();
  return false;
}

std::string Material::describe() const {
  struct Visitor {
    std::string operator()(const SellmeierModel& m) const { return "sellmeier:" + m.name; }
    std::string operator()(const Constant& c) const {
      std::ostringstream out;
      out.precision(9);
      out << "constant:" << c.name << "(n=" << c.index << ")";
      return out.str();
    }
    std::string operator()(const Scaled& s) const {
      std::ostringstream out;
      out.precision(9);
      out << "scaled(" << s.base->describe() << ", contrast=" << s.contrast << ")";
      return out.str();
    }
  };
  return std::visit(Visitor{}, repr_);
}

SellmeierModel fused_silica_malitson() {
  // I. H. Malitson, J. Opt. Soc. Am. 55, 1205 (1965). Resonances given as
  // wavelengths in um; C_j is their square.
  constexpr double l1 = 0.0684043;
  constexpr double l2 = 0.1162414;
  constexpr double l3 = 9.896161;
  return SellmeierModel{"fused_silica",
                        {{0.6961663, l1 * l1}, {0.4079426, l2 * l2}, {0.8974794, l3 * l3}},
                        210.0,
                        3710.0};
}

SellmeierModel bismuth_borate_effective() {
  return SellmeierModel{"bismuth_borate", {{1.99723, 0.0213204}, {1.0, 100.0}}, 400.0, 1000.0};
}

std::optional<Material> builtin_material(const std::string& name) {
  if (name == "fused_silica") return Material::sellmeier(fused_silica_malitson());
  if (name == "bismuth_borate") return Material::sellmeier(bismuth_borate_effective());
  if (name == "air") return Material::constant(1.0, "air");
  return std::nullopt;
}

}  // namespace fwm
