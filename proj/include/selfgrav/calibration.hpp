#pragma once

// Reference parameters from physical observables. With F(d) = p_rad(d, d):
//   central:  p_c = F(rho_c / K)
//   surface:  p_rad(rho(r1)/K, M / ((4 pi/3) K r1^3)) = 0
//   shell:    p_rad(rho(r0)/K, (S/r0)^3) = 0,
//             p_rad(rho(r1)/K, (S^3 + 3M/(4 pi K)) / r1^3) = 0

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "selfgrav/materials.hpp"

namespace selfgrav {

struct Observables {
  std::optional<double> rho_c;
  std::optional<double> p_c;
  std::optional<double> r0;
  std::optional<double> r1;
  std::optional<double> rho_r0;
  std::optional<double> rho_r1;
  std::optional<double> M;
};

struct CalibrationControls {
  /// search bracket as multiples of the density scale
  double bracket_lo = 1e-6;
  double bracket_hi = 1e6;
  int scan_points = 600;
  int max_iterations = 200;
  double damping_floor = 1.0 / 1048576.0;
};

/// K = rho_c / F^{-1}(p_c). Seth uses the explicit inverse unless force_root_finding.
/// OutOfRange when p_c is not attained, NotInvertible when F crosses p_c more than once.
double K_from_central(const MaterialSpec& spec, double rho_c, double p_c, bool force_root_finding = false,
                      const CalibrationControls& controls = {});

/// Root of the surface relation in K. NoRoot or MultipleRoots (with all brackets in the message).
double K_from_surface(const MaterialSpec& spec, double rho_r1, double r1, double M,
                      const CalibrationControls& controls = {});

/// All sign-change brackets of the surface relation on the search interval.
std::vector<std::pair<double, double>> surface_brackets(const MaterialSpec& spec, double rho_r1, double r1, double M,
                                                        const CalibrationControls& controls = {});

struct ShellCalibration {
  double K = 0.0;
  double S = 0.0;
  /// residuals of the inner and outer relations
  std::array<double, 2> residuals{};
  int iterations = 0;
};

/// Damped Newton with a finite-difference Jacobian. NoConvergence after max_iterations.
ShellCalibration KS_from_shell(const MaterialSpec& spec, double r0, double r1, double rho_r0, double rho_r1, double M,
                               const CalibrationControls& controls = {});

}  // namespace selfgrav
