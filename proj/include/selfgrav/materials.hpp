#pragma once

// Constitutive functions of spherically symmetric elastic matter in Euler
// variables. A material is described by the radial and tangential pressure as
// functions of
//
//   delta = rho / K                       (dimensionless density)
//   eta   = local mass / ((4 pi / 3) K r^3) (+ (S/r)^3 for shells)
//
// Five families are supported. All of them are stress free at (1, 1), reduce
// to Hooke's law for small deformations and satisfy p_rad(d, d) = p_tan(d, d).
// Every family except Seth is hyperelastic, i.e. derived from a stored energy
// w(delta, eta) through
//
//   p_rad = delta^2 dw/ddelta,  p_tan = p_rad + 3/2 delta eta dw/deta.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selfgrav {

enum class Family { Seth, SaintVenantKirchhoff, SignoriniQuasiLinear, Hadamard, LinearConstitutive };

/// Config-file name of a family ("seth", "svk", "signorini", "hadamard", "linear").
std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct LameCoefficients {
  double lambda = 0.0;
  double mu = 0.0;

  double poisson_ratio() const { return lambda / (2.0 * (lambda + mu)); }
};

/// Hadamard split alpha + beta = mu and the auxiliary function
/// h(s) = sum_k h_coeffs[k-1] (s - 1)^k, k >= 1.
struct HadamardParams {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> h_coeffs;
};

/// Immutable, validated constitutive model.
class MaterialSpec {
 public:
  /// Throws Error(InvalidMaterial) when the family admissibility fails.
  MaterialSpec(Family family, LameCoefficients lame, std::optional<HadamardParams> hadamard = std::nullopt);

  static MaterialSpec seth(double lambda, double mu) { return {Family::Seth, {lambda, mu}}; }
  static MaterialSpec svk(double lambda, double mu) { return {Family::SaintVenantKirchhoff, {lambda, mu}}; }
  static MaterialSpec signorini(double lambda, double mu) { return {Family::SignoriniQuasiLinear, {lambda, mu}}; }
  static MaterialSpec hadamard(double lambda, double mu) { return {Family::Hadamard, {lambda, mu}}; }
  static MaterialSpec linear(double lambda, double mu) { return {Family::LinearConstitutive, {lambda, mu}}; }

  Family family() const { return family_; }
  const LameCoefficients& lame() const { return lame_; }
  /// Resolved Hadamard parameters (defaults filled in); empty for other families.
  const std::optional<HadamardParams>& hadamard_params() const { return hadamard_; }

  /// Constant offset p0 of the family's pressure formulas (Seth, Signorini,
  /// linear). SVK and Hadamard have none; their bulk modulus is returned as the
  /// pressure scale.
  double p0() const;
  bool hyperelastic() const { return family_ != Family::Seth; }

  // Unchecked closed-form evaluations. Seth also accepts delta == 0.
  double radial(double delta, double eta) const;
  double tangential(double delta, double eta) const;
  double d_radial_d_delta(double delta, double eta) const;
  double d_radial_d_eta(double delta, double eta) const;
  double energy(double delta, double eta) const;

 private:
  double h(double s) const;
  double h1(double s) const;
  double h2(double s) const;

  Family family_;
  LameCoefficients lame_;
  std::optional<HadamardParams> hadamard_;
};

double p_rad_hat(const MaterialSpec& spec, double delta, double eta);
double p_tan_hat(const MaterialSpec& spec, double delta, double eta);
/// Stored energy per unit reference mass; throws NotHyperelastic for Seth.
double stored_energy(const MaterialSpec& spec, double delta, double eta);

struct ValidationReport {
  double fd_step = 0.0;
  // natural state
  double p_rad_at_unit = 0.0;
  double p_tan_at_unit = 0.0;
  // finite-difference Hooke matrix [[dpr/dd, dpr/de], [dpt/dd, dpt/de]] and its target
  std::array<double, 4> hooke_fd{};
  std::array<double, 4> hooke_expected{};
  double hooke_max_abs_deviation = 0.0;
  double hooke_max_rel_deviation = 0.0;
  // max |p_rad(d,d) - p_tan(d,d)| over the diagonal grid
  double diagonal_isotropy = 0.0;
  // hyperelastic consistency on the (delta, eta) grid, relative to pressure scale
  std::optional<double> energy_radial_deviation;
  std::optional<double> energy_tangential_deviation;
};

/// Diagonal grid used by validate_material.
inline constexpr std::array<double, 6> kIsotropyGrid{0.5, 0.8, 1.0, 1.25, 2.0, 4.0};

/// Numerical check of the compatibility conditions; fd_step in (0, 1e-3].
ValidationReport validate_material(const MaterialSpec& spec, double fd_step = 1e-5);

/// Seth density at zero radial pressure, valid for 0 < eta <= ((3l+2m)/(2l))^{3/2}.
double zero_pressure_delta_seth(const LameCoefficients& lame, double eta);

/// Upper eta bound for which the Seth zero-pressure density is real.
double seth_eta_bound(const LameCoefficients& lame);

}  // namespace selfgrav
