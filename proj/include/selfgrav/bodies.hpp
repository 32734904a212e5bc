#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfgrav/equilibrium.hpp"

namespace selfgrav {

enum class BodyKind { Ball, Shell };

/// Radius and mass bounds of a Seth body. Balls:
///   sqrt(2l/(3l+2m)) Rr < r1 < Rr,  Rr = (3M/(4 pi K))^{1/3},  M < (4 pi/3) rho_c r1^3
/// Shells use Rr = (S^3 + 3M/(4 pi K))^{1/3}.
struct BoundsReport {
  double lower = 0.0;
  double r_end = 0.0;
  double upper = 0.0;
  /// (4 pi/3) rho_c r1^3 for balls, unused for shells
  std::optional<double> mass_bound;
  bool lower_ok = false;
  bool upper_ok = false;
  bool mass_ok = true;

  bool all_strict() const { return lower_ok && upper_ok && mass_ok; }
};

struct Body {
  BodyKind kind = BodyKind::Ball;
  MaterialSpec material;
  double K = 0.0;
  std::optional<double> S;
  double r_start = 0.0;
  double r_end = 0.0;
  SolutionProfile profile;
  double total_mass = 0.0;
  /// Seth bodies only
  std::optional<BoundsReport> bounds;
};

enum class CoreType { NonVacuumCore, VacuumCore };

/// Ordered bodies with disjoint supports. Immutable; add_shell returns a new value.
class MatterDistribution {
 public:
  explicit MatterDistribution(Body first);

  const std::vector<Body>& bodies() const { return bodies_; }
  CoreType core() const { return core_; }
  /// r_0 < r_1 < ... < r_{2n-1}; r_0 = 0 for a non-vacuum core
  std::vector<double> interface_radii() const;
  double outer_radius() const { return bodies_.back().r_end; }
  double total_mass() const { return bodies_.back().profile.back().m; }

  MatterDistribution with(Body next) const;

 private:
  MatterDistribution() = default;

  std::vector<Body> bodies_;
  CoreType core_ = CoreType::NonVacuumCore;
};

/// Ball with central density rho_c. NoEquilibrium when the central pressure is not positive.
Body build_ball(const MaterialSpec& spec, double K, double rho_c, const IntegrationControls& controls = {});

/// sqrt(2l/(3l+2m)) S, the smallest admissible inner radius of a Seth shell.
double shell_r_min(const LameCoefficients& lame, double S);

/// Seth shell with vacuum core, r_min <= r0 < S.
Body build_inner_shell(const LameCoefficients& lame, double K, double S, double r0,
                       const IntegrationControls& controls = {});

/// Seth shell around dist with inner radius r0 and reference inner radius S.
MatterDistribution add_shell(const MatterDistribution& dist, const LameCoefficients& lame, double K, double S,
                             double r0, const IntegrationControls& controls = {});

/// Reference radius factor * sqrt((3l+2m)/(2l)) * r_outer, factor > 1.
double recursive_shell_S(const LameCoefficients& lame, double r_outer, double factor = 1.05);

/// First zero of the boundary pressure derivative on [r_min, S), or S if none.
double r_max_scan(const LameCoefficients& lame, double K, double S, double M_interior, int grid_n = 1000);

struct VerificationReport {
  bool supports_ordered = false;
  bool ode_satisfied = false;
  double ode_residual = 0.0;
  bool pressures_positive = false;
  double min_interior_pressure = 0.0;
  bool interface_zeros = false;
  double max_interface_pressure = 0.0;
  std::optional<bool> center_condition;  // non-vacuum core: p_rad = p_tan > 0 at the centre
  std::optional<bool> vacuum_core;       // r_0 > 0 and p_rad(r_0) = 0
  bool exterior_vanishing = false;
  bool mass_additive = false;
  double mass_additivity_residual = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Matter fields at radius r: zero outside the closure of the supports.
DerivedFields fields_at(const MatterDistribution& dist, double r);

VerificationReport verify_distribution(const MatterDistribution& dist, double tol = 1e-8);

}  // namespace selfgrav
