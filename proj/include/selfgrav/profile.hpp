#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "selfgrav/materials.hpp"

namespace selfgrav {

/// One radial sample of an equilibrium: delta = rho/K, eta (ball or shell form), enclosed mass m.
struct EquilibriumState {
  double r = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double m = 0.0;
};

struct DerivedFields {
  double rho = 0.0;
  double p_rad = 0.0;
  double p_tan = 0.0;
};

DerivedFields derive_fields(const MaterialSpec& spec, double K, const EquilibriumState& s);

using State3 = std::array<double, 3>;

/// Continuous extension over one accepted step,
///   y(theta) = c0 + theta (c1 + (1-theta) (c2 + theta (c3 + (1-theta) c4))),
/// which is the Dormand-Prince interpolant; c4 = 0 gives cubic Hermite.
struct DenseSegment {
  double r0 = 0.0;
  double h = 0.0;
  std::array<State3, 5> c{};

  State3 eval(double r) const;
  State3 derivative(double r) const;
  static DenseSegment hermite(double r0, double r1, const State3& y0, const State3& y1, const State3& f0,
                              const State3& f1);
};

enum class Termination { PressureZero, RadiusCutoff, SingularityGuard, StepFailure };

std::string_view to_string(Termination t);

struct TerminationInfo {
  Termination cause = Termination::RadiusCutoff;
  /// exact crossing for PressureZero, last accepted radius otherwise
  double r = 0.0;
  std::string detail;
};

/// Ordered samples of one integration with its dense output and the material
/// and reference parameters that produced it. Immutable once built.
class SolutionProfile {
 public:
  SolutionProfile(MaterialSpec material, double K, std::optional<double> S, std::vector<EquilibriumState> samples,
                  std::vector<DenseSegment> dense, TerminationInfo termination);

  /// Profile from samples and their r-derivatives (cubic Hermite dense output).
  static SolutionProfile from_samples(MaterialSpec material, double K, std::optional<double> S,
                                      std::vector<EquilibriumState> samples, const std::vector<State3>& derivatives,
                                      TerminationInfo termination);

  const MaterialSpec& material() const { return material_; }
  double K() const { return K_; }
  const std::optional<double>& S() const { return S_; }
  const std::vector<EquilibriumState>& samples() const { return samples_; }
  const std::vector<DenseSegment>& dense() const { return dense_; }
  const TerminationInfo& termination() const { return termination_; }

  double r_begin() const { return samples_.front().r; }
  double r_end() const { return samples_.back().r; }
  const EquilibriumState& front() const { return samples_.front(); }
  const EquilibriumState& back() const { return samples_.back(); }

  /// Dense-output state; throws DomainError outside [r_begin, r_end].
  EquilibriumState state_at(double r) const;
  /// r-derivative of the dense output.
  State3 derivative_at(double r) const;
  DerivedFields fields_at(double r) const { return derive_fields(material_, K_, state_at(r)); }
  DerivedFields fields(const EquilibriumState& s) const { return derive_fields(material_, K_, s); }

  /// Copy restricted to [r_begin, r_cut]; termination becomes RadiusCutoff.
  SolutionProfile truncated(double r_cut) const;

 private:
  const DenseSegment& segment(double r) const;

  MaterialSpec material_;
  double K_;
  std::optional<double> S_;
  std::vector<EquilibriumState> samples_;
  std::vector<DenseSegment> dense_;
  TerminationInfo termination_;
};

}  // namespace selfgrav
