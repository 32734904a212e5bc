#pragma once

// Variational and Lagrangian cross-checks of computed equilibria.
//
// Energy (per 4 pi, G = 1) of a density profile with enclosed mass m:
//   E = int delta w(delta, eta) r^2 dr - (1/8 pi) [ int m^2/r^2 dr + M^2 / r_end ]
// Its derivative along rho -> rho + tau phi is int G phi s^2 ds with
//   G(s) = (w + p_rad/delta)/K + Lambda0(s) + V0(s),
//   Lambda0(s) = int_s^{r_end} 2 (p_tan - p_rad) / (K eta r) dr,
//   V0(s) = -int_s^{r_end} m / r^2 dr - M / r_end.

#include <utility>
#include <vector>

#include "selfgrav/profile.hpp"

namespace selfgrav {

/// amplitude * (1 - s^2)^4 with s = (r - center) / width on |s| < 1.
struct BumpFunction {
  double center = 0.0;
  double width = 0.0;
  double amplitude = 0.0;

  double operator()(double r) const;
  double lo() const { return center - width; }
  double hi() const { return center + width; }
  /// int phi s^2 ds over the support
  double mass_moment() const;
};

/// Weighted sum of bumps.
struct Perturbation {
  std::vector<std::pair<double, BumpFunction>> terms;

  Perturbation() = default;
  Perturbation(const BumpFunction& b) : terms{{1.0, b}} {}

  double operator()(double r) const;
  double mass_moment() const;
  double lo() const;
  double hi() const;
};

/// phi_a - (M_a / M_b) phi_b, which adds no mass.
Perturbation mass_neutral_pair(const BumpFunction& a, const BumpFunction& b);

struct EnergyResult {
  double energy = 0.0;
  double internal = 0.0;
  double gravity_interior = 0.0;
  double gravity_exterior = 0.0;
  /// |E_N - E_{N/2}|
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Composite Simpson on a uniform grid of the profile's dense output, doubled
/// from 512 intervals until the halving estimate is below rel_tol.
/// NotHyperelastic for Seth, QuadratureNotConverged past 2^15 intervals.
EnergyResult energy_functional(const MaterialSpec& spec, double K, const SolutionProfile& profile,
                               double rel_tol = 1e-6);

/// Energy of rho + tau phi on a fixed uniform Simpson grid (eta and m follow the added mass).
double perturbed_energy(const MaterialSpec& spec, double K, const SolutionProfile& profile, const Perturbation& phi,
                        double tau, int intervals = 512);

struct FirstVariation {
  double value = 0.0;
  /// |value| / (int |phi| s^2 ds * max |G|) over the bump support
  double scaled = 0.0;
  double max_abs_G = 0.0;
};

/// dE/dtau at tau = 0 from the integrand G, six-point Gauss on `subintervals` pieces per bump.
FirstVariation first_variation(const MaterialSpec& spec, double K, const SolutionProfile& profile,
                               const Perturbation& phi, int subintervals = 16);

/// Central difference of perturbed_energy in tau.
double first_variation_fd(const MaterialSpec& spec, double K, const SolutionProfile& profile, const Perturbation& phi,
                          double tau = 1e-5, int intervals = 512);

/// The integrand G at s (constant along an exact equilibrium).
double variation_integrand(const MaterialSpec& spec, double K, const SolutionProfile& profile, double s);

struct ReferenceRadiusRow {
  double r = 0.0;
  double R = 0.0;
};

struct ReferenceRadiusTable {
  std::vector<ReferenceRadiusRow> rows;
  /// sum over steps of |Delta R - int delta r^2 / R^2 dr|, relative to R(r_end) - R(r_begin)
  double max_residual = 0.0;
  double R_start = 0.0;
};

/// R(r) = r eta^{1/3}. MonotonicityViolation when R decreases by more than rounding.
ReferenceRadiusTable reconstruct_reference_radius(const SolutionProfile& profile, double K);

}  // namespace selfgrav
