#pragma once

#include <array>
#include <complex>
#include <vector>

#include "selfgrav/equilibrium.hpp"

namespace selfgrav {

/// Closed-form constants of the Seth equilibrium problem for one (lambda, mu, K).
struct SethAnalysis {
  LameCoefficients lame;
  double K = 0.0;
  double a = 0.0;
  double b = 0.0;
  double theta_len = 0.0;
  /// amplitude of the self-similar density c / (K r^{3/2})
  double c_const = 0.0;
  /// zero of the self-similar radial pressure
  double R_star = 0.0;
  double u_P = 0.0;
  double y_P = 0.5;

  static SethAnalysis make(const LameCoefficients& lame, double K);
  double p0() const { return 0.5 * (3.0 * lame.lambda + 2.0 * lame.mu); }
};

struct SelfSimilarValues {
  double delta = 0.0;
  double eta = 0.0;
  double m = 0.0;
  double p_rad = 0.0;
  double p_tan = 0.0;
};

/// Exact singular solution delta = c/(K r^{3/2}), eta = 2 delta, m = (8 pi c / 3) r^{3/2}.
SelfSimilarValues self_similar(const LameCoefficients& lame, double K, double r);
/// r-derivative of (delta, eta, m) along the self-similar solution.
State3 self_similar_derivative(const LameCoefficients& lame, double K, double r);

enum class Stability { Sink, Source, Saddle, NonHyperbolic };
std::string_view to_string(Stability s);

struct FixedPoint {
  double u = 0.0;
  double y = 0.0;
  Stability classification = Stability::NonHyperbolic;
  /// eigenvalues of the (u, y) Jacobian on z = 1
  std::array<std::complex<double>, 2> eigenvalues{};
  /// decoupled eigenvalue along z
  double z_eigenvalue = 0.0;
};

struct FixedPoints {
  FixedPoint P;
  FixedPoint Q;
};

/// DomainError unless a >= 1 and 0 < b <= 1.
FixedPoints fixed_points(double a, double b);

/// Jacobian of the (u, y) vector field at z = 1, row major.
std::array<double, 4> autonomous_jacobian(double a, double b, double u, double y);

/// div of the (u, y) vector field at z = 1: b - a + y - 2 b y - u^2 - y^2.
double divergence(double a, double b, double u, double y);

/// d/dxi [(u - u_P)^2 + (y - y_P)^2] along the z = 1 flow.
double trapping_disk_derivative(double a, double b, double u, double y);

struct AsymptoticsReport {
  double dy = 0.0;
  double du = 0.0;
  double dz = 0.0;
  double dp = 0.0;
};

/// Distance of a profile from the large-r attractor at r_probe. Throws ProfileTooShort.
AsymptoticsReport asymptotics_check(const SolutionProfile& profile, const SethAnalysis& analysis, double r_probe);

/// p_rad'(r) at a zero of the radial pressure, with delta from the zero-pressure relation.
double boundary_pressure_derivative(const LameCoefficients& lame, double K, double eta, double m, double r);

struct PhaseRow {
  double xi = 0.0;
  double u = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Orbit of the autonomous system from a seed, sampled at accepted steps.
std::vector<PhaseRow> phase_orbit(double a, double b, const State3& seed, double xi_end, double rel_tol = 1e-10,
                                  double abs_tol = 1e-12);

}  // namespace selfgrav
