#pragma once

// Equilibrium ODEs of a static self-gravitating elastic body (G = 1):
//
//   dp_rad/ddelta delta' = -(3/r) dp_rad/deta (delta - eta) - (2/r)(p_rad - p_tan) - K delta m / r^2
//   eta' = 3 (delta - eta) / r
//   m'   = 4 pi K r^2 delta
//
// plus the Seth specialisation, its dimensionless (x, y, z) form and the
// autonomous (u, y, z) system in xi = log-like radial time.

#include <optional>

#include "selfgrav/materials.hpp"
#include "selfgrav/profile.hpp"

namespace selfgrav {

/// (d delta/dr, d eta/dr, dm/dr). Throws EllipticityLoss or DomainError.
State3 rhs_general(const MaterialSpec& spec, double K, const EquilibriumState& s);

/// Same system written with the Seth coefficients theta1..theta3.
State3 rhs_seth(const LameCoefficients& lame, double K, const EquilibriumState& s);

struct SethThetas {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};
SethThetas seth_thetas(const LameCoefficients& lame, double K, double delta, double eta);

struct MaterialConstants {
  double a = 0.0;
  double b = 0.0;
};
/// a = 2(l+m)/(l+2m), b = 2m/(l+2m).
MaterialConstants material_constants_ab(const LameCoefficients& lame);

/// Inverse Seth length scale K sqrt(4 pi / (3 (l + 2m))).
double theta_len(const LameCoefficients& lame, double K);

struct SethDimensionlessState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double theta_len = 0.0;
};
SethDimensionlessState to_xyz(const LameCoefficients& lame, double K, const EquilibriumState& s);
EquilibriumState from_xyz(const LameCoefficients& lame, double K, double r, const SethDimensionlessState& v);

/// (dx/dr, dy/dr, dz/dr); DomainError for r <= 0 or y <= 0.
State3 rhs_xyz(double a, double b, double r, double x, double y, double z);
/// (du/dxi, dy/dxi, dz/dxi) with u = r x and d/dxi = r y d/dr.
State3 rhs_autonomous(double a, double b, double u, double y, double z);

/// Flat regular-center start (delta = eta = delta_c), local error O(r_eps^2).
EquilibriumState center_init(const MaterialSpec& spec, double K, double delta_c, double r_eps);

/// sqrt(3(l+2m)/(4 pi K^2)), which is 1/theta_len for Seth.
double natural_length(const MaterialSpec& spec, double K);

/// Inner-boundary data of a shell: eta = (S/r0)^3, m = M_interior, p_rad(delta, eta) = 0.
/// Throws NoZeroPressureRoot when no delta >= 0 zeroes the radial pressure.
EquilibriumState shell_init(const MaterialSpec& spec, double K, double S, double r0, double M_interior);

struct IntegrationControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// 0 selects 1e3 * natural_length
  double r_stop = 0.0;
  std::size_t max_steps = 200000;
  double initial_step = 0.0;
  bool detect_pressure_zero = true;
  /// ball start radius; 0 selects 1e-6 * natural_length
  double r_eps = 0.0;
};

/// Adaptive integration from init until the radial pressure drops to zero,
/// r_stop is reached or the state leaves the admissible domain. Never throws
/// on numerical trouble; the cause is recorded in the profile's termination.
SolutionProfile integrate(const MaterialSpec& spec, double K, const EquilibriumState& init,
                          const IntegrationControls& controls = {}, std::optional<double> S = std::nullopt);

}  // namespace selfgrav
