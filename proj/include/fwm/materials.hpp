#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fwm {

struct SellmeierTerm {
  double strength;       // B_j, dimensionless
  double resonance_um2;  // C_j, um^2
};

/// n^2(lambda) = 1 + sum_j B_j lambda^2 / (lambda^2 - C_j), lambda in um.
struct SellmeierModel {
  std::string name;
  std::vector<SellmeierTerm> terms;
  double lambda_min_nm = 0.0;
  double lambda_max_nm = 0.0;

  /// Throws ValidationError on non-positive resonances or an empty range.
  void validate() const;
};

/// Refractive-index source for a fibre region.
///
/// Three forms are supported: a Sellmeier model, a frequency-independent
/// constant (air), and a base material scaled to a fixed index contrast,
/// n = n_base / (1 - contrast), so that (n - n_base)/n == contrast at every
/// wavelength.
class Material {
 public:
  /// Vacuum, n = 1.
  Material() : repr_(Constant{1.0, "vacuum"}) {}

  static Material sellmeier(SellmeierModel model);
  static Material constant(double index, std::string name = "constant");
  static Material scaled(Material base, double contrast);

  double refractive_index(double wavelength_nm) const;

  /// Wavelength range where evaluation is allowed; unbounded for constants.
  std::pair<double, double> valid_range_nm() const;

  /// True when the index does not depend on wavelength.
  bool is_constant() const;

  std::string describe() const;

 private:
  struct Constant {
    double index;
    std::string name;
  };
  struct Scaled {
    std::shared_ptr<const Material> base;
    double contrast;
  };

  explicit Material(std::variant<SellmeierModel, Constant, Scaled> repr)
      : repr_(std::move(repr)) {}

  std::variant<SellmeierModel, Constant, Scaled> repr_;
};

inline double refractive_index(const Material& material, double wavelength_nm) {
  return material.refractive_index(wavelength_nm);
}

/// |lambda^2 - C_j| below this (um^2) is treated as a pole.
inline constexpr double kSellmeierPoleGuard = 1e-6;

/// Malitson (1965) three-term model of fused silica at 20 C, 0.21-3.71 um.
SellmeierModel fused_silica_malitson();

/// Effective two-term model for a high-index bismuth borate glass.
///
/// Approximate: the UV term was calibrated so that an air-clad rod of radius
/// 0.205 um has zero-dispersion wavelengths at 616.2 and 641.7 nm; the IR term
/// is a generic oxide-glass lattice resonance. See README before relying on
/// absolute values.
SellmeierModel bismuth_borate_effective();

/// Looks up a bundled material: "fused_silica", "bismuth_borate", "air".
std::optional<Material> builtin_material(const std::string& name);

}  // namespace fwm
