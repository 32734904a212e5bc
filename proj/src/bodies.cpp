#include "selfgrav/bodies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "selfgrav/errors.hpp"
#include "selfgrav/seth.hpp"

namespace selfgrav {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kInterfaceTol = 1e-10;

void require_pressure_zero(const SolutionProfile& p) {
  const auto& t = p.termination();
  switch (t.cause) {
    case Termination::PressureZero: return;
    case Termination::RadiusCutoff:
      throw Error(ErrorKind::NoBoundaryFound, "no pressure zero before r = " + std::to_string(t.r));
    case Termination::SingularityGuard:
      throw Error(ErrorKind::SingularityGuard, "integration left the admissible domain at r = " + std::to_string(t.r));
    case Termination::StepFailure:
      throw Error(ErrorKind::StepFailure, t.detail + " at r = " + std::to_string(t.r));
  }
}

double seth_ratio(const LameCoefficients& l) { return std::sqrt(2.0 * l.lambda / (3.0 * l.lambda + 2.0 * l.mu)); }

BoundsReport radius_bounds(const LameCoefficients& lame, double reference_radius, double r_end) {
  BoundsReport b;
  b.lower = seth_ratio(lame) * reference_radius;
  b.upper = reference_radius;
  b.r_end = r_end;
  b.lower_ok = b.lower < r_end;
  b.upper_ok = r_end < b.upper;
  return b;
}

}  // namespace

MatterDistribution::MatterDistribution(Body first) {
  core_ = first.kind == BodyKind::Ball ? CoreType::NonVacuumCore : CoreType::VacuumCore;
  bodies_.push_back(std::move(first));
}

std::vector<double> MatterDistribution::interface_radii() const {
  std::vector<double> r;
  for (const auto& b : bodies_) {
    r.push_back(b.kind == BodyKind::Ball ? 0.0 : b.r_start);
    r.push_back(b.r_end);
  }
  return r;
}

MatterDistribution MatterDistribution::with(Body next) const {
  MatterDistribution d;
  d.bodies_ = bodies_;
  d.core_ = core_;
  d.bodies_.push_back(std::move(next));
  return d;
}

Body build_ball(const MaterialSpec& spec, double K, double rho_c, const IntegrationControls& controls) {
  if (!(K > 0.0) || !(rho_c > 0.0)) throw Error(ErrorKind::DomainError, "K and rho_c must be positive");
  const double dc = rho_c / K;
  if (spec.family() == Family::Seth && !(rho_c > K)) {
    throw Error(ErrorKind::NoEquilibrium, "a Seth ball requires rho_c > K (central pressure must be positive)");
  }
  if (!(spec.radial(dc, dc) > 0.0)) throw Error(ErrorKind::NoEquilibrium, "central pressure must be positive");

  const double r_eps = controls.r_eps > 0.0 ? controls.r_eps : 1e-6 * natural_length(spec, K);
  auto profile = integrate(spec, K, center_init(spec, K, dc, r_eps), controls);
  require_pressure_zero(profile);
  const auto& end = profile.back();
  if (!(end.delta > 0.0)) throw Error(ErrorKind::NoEquilibrium, "density vanishes at the boundary");

  Body body{BodyKind::Ball, spec, K, std::nullopt, profile.r_begin(), end.r, profile, end.m, std::nullopt};
  if (spec.family() == Family::Seth && spec.lame().lambda > 0.0) {
    auto b = radius_bounds(spec.lame(), std::cbrt(3.0 * end.m / (4.0 * pi * K)), end.r);
    b.mass_bound = (4.0 * pi / 3.0) * rho_c * end.r * end.r * end.r;
    b.mass_ok = end.m < *b.mass_bound;
    if (!b.all_strict()) throw Error(ErrorKind::NoConvergence, "ball radius or mass bounds violated");
    body.bounds = b;
  }
  return body;
}

double shell_r_min(const LameCoefficients& lame, double S) {
  if (!(lame.lambda > 0.0)) throw Error(ErrorKind::InadmissibleInnerRadius, "Seth shells need lambda > 0");
  return seth_ratio(lame) * S;
}

namespace {

Body shell_body(const LameCoefficients& lame, double K, double S, double r0, double M_interior,
                const IntegrationControls& controls) {
  const auto spec = MaterialSpec::seth(lame.lambda, lame.mu);
  auto profile = integrate(spec, K, shell_init(spec, K, S, r0, M_interior), controls, S);
  require_pressure_zero(profile);
  const auto& end = profile.back();
  const double M = end.m - profile.front().m;
  Body body{BodyKind::Shell, spec, K, S, r0, end.r, profile, M, std::nullopt};
  body.bounds = radius_bounds(lame, std::cbrt(S * S * S + 3.0 * M / (4.0 * pi * K)), end.r);
  return body;
}

// Inner radius within the window, snapped to r_min when it agrees to rounding.
double admissible_r0(double r0, double r_min, double S) {
  if (std::abs(r0 - r_min) <= 1e-14 * r_min) return r_min;
  if (!(r0 >= r_min) || !(r0 < S)) {
    throw Error(ErrorKind::InadmissibleInnerRadius, "r0 = " + std::to_string(r0) + " outside [" +
                                                        std::to_string(r_min) + ", " + std::to_string(S) + ")");
  }
  return r0;
}

}  // namespace

Body build_inner_shell(const LameCoefficients& lame, double K, double S, double r0,
                       const IntegrationControls& controls) {
  if (!(K > 0.0) || !(S > 0.0)) throw Error(ErrorKind::DomainError, "K and S must be positive");
  r0 = admissible_r0(r0, shell_r_min(lame, S), S);
  auto body = shell_body(lame, K, S, r0, 0.0, controls);
  if (!body.bounds->all_strict()) throw Error(ErrorKind::NoConvergence, "shell radius bounds violated");
  return body;
}

MatterDistribution add_shell(const MatterDistribution& dist, const LameCoefficients& lame, double K, double S,
                             double r0, const IntegrationControls& controls) {
  if (!(K > 0.0) || !(S > 0.0)) throw Error(ErrorKind::DomainError, "K and S must be positive");
  const double r_min = shell_r_min(lame, S);
  if (!(r_min > dist.outer_radius())) {
    throw Error(ErrorKind::InadmissibleInnerRadius,
                "r_min = " + std::to_string(r_min) + " does not exceed the outer radius " +
                    std::to_string(dist.outer_radius()));
  }
  r0 = admissible_r0(r0, r_min, S);
  const double M_in = dist.total_mass();
  const double F = boundary_pressure_derivative(lame, K, std::min(std::pow(S / r0, 3), seth_eta_bound(lame)), M_in, r0);
  if (F < 0.0) {
    throw Error(ErrorKind::NegativeBoundaryDerivative, "p_rad'(r0) = " + std::to_string(F) + " < 0");
  }
  auto body = shell_body(lame, K, S, r0, M_in, controls);
  // only the lower radius bound is guaranteed around a non-empty interior
  if (!body.bounds->lower_ok) throw Error(ErrorKind::NoConvergence, "shell lower radius bound violated");
  return dist.with(std::move(body));
}

double recursive_shell_S(const LameCoefficients& lame, double r_outer, double factor) {
  if (!(factor > 1.0)) throw Error(ErrorKind::DomainError, "factor must exceed 1");
  return factor * r_outer / seth_ratio(lame);
}

double r_max_scan(const LameCoefficients& lame, double K, double S, double M_interior, int grid_n) {
  if (grid_n < 100) throw Error(ErrorKind::DomainError, "grid_n must be at least 100");
  const double r_min = shell_r_min(lame, S);
  const double bound = seth_eta_bound(lame);
  auto F = [&](double r) {
    return boundary_pressure_derivative(lame, K, std::min(std::pow(S / r, 3), bound), M_interior, r);
  };
  const double F_min = F(r_min);
  if (!(F_min > 0.0)) {
    throw Error(ErrorKind::NegativeBoundaryDerivative, "F(r_min) = " + std::to_string(F_min) + " is not positive");
  }
  const double dr = (S - r_min) / grid_n;
  double a = r_min, fa = F_min;
  for (int i = 1; i < grid_n; ++i) {
    const double b = r_min + i * dr;
    const double fb = F(b);
    if (fb <= 0.0) {
      if (fb == 0.0) return b;
      boost::uintmax_t it = 200;
      auto tol = [](double x, double y) { return std::abs(y - x) <= 1e-12 * std::abs(x); };
      auto br = boost::math::tools::toms748_solve(F, a, b, fa, fb, tol, it);
      return 0.5 * (br.first + br.second);
    }
    a = b;
    fa = fb;
  }
  return S;
}

DerivedFields fields_at(const MatterDistribution& dist, double r) {
  for (const auto& b : dist.bodies()) {
    if (r >= b.profile.r_begin() && r <= b.r_end) return b.profile.fields_at(r);
    if (b.kind == BodyKind::Ball && r >= 0.0 && r < b.profile.r_begin()) return b.profile.fields(b.profile.front());
  }
  return {};
}

VerificationReport verify_distribution(const MatterDistribution& dist, double tol) {
  VerificationReport rep;
  const auto& bodies = dist.bodies();

  rep.supports_ordered = true;
  for (std::size_t j = 0; j < bodies.size(); ++j) {
    if (!(bodies[j].r_end > bodies[j].r_start)) rep.supports_ordered = false;
    if (j > 0 && !(bodies[j].r_start > bodies[j - 1].r_end)) rep.supports_ordered = false;
    if (j > 0 && bodies[j].kind == BodyKind::Ball) rep.supports_ordered = false;
  }
  if (!rep.supports_ordered) rep.failures.emplace_back("supports not ordered and disjoint");

  // integral defect: y(r1) - y(r0) against the quadrature of f along the dense solution, per step
  static constexpr std::array<double, 5> gx{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
  static constexpr std::array<double, 5> gw{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                            0.4786286704993665, 0.2369268850561891};
  double worst = 0.0;
  for (const auto& b : bodies) {
    const auto& p = b.profile;
    State3 scale{};
    for (const auto& s : p.samples()) {
      if (!(s.delta > 0.0)) continue;
      try {
        const auto f = rhs_general(b.material, b.K, s);
        for (std::size_t i = 0; i < 3; ++i) scale[i] = std::max(scale[i], std::abs(f[i]));
      } catch (const Error&) {
      }
    }
    State3 defect{};
    bool broken = false;
    for (const auto& seg : p.dense()) {
      if (seg.c[0][0] == 0.0) continue;  // square-root layer at a zero-density edge
      const double a = seg.r0, e = std::min(seg.r0 + seg.h, p.r_end());
      if (!(e > a)) continue;
      const auto ya = p.state_at(a), ye = p.state_at(e);
      State3 integral{};
      try {
        for (std::size_t k = 0; k < gx.size(); ++k) {
          const double r = 0.5 * (a + e) + 0.5 * (e - a) * gx[k];
          const auto f = rhs_general(b.material, b.K, p.state_at(r));
          for (std::size_t i = 0; i < 3; ++i) integral[i] += 0.5 * (e - a) * gw[k] * f[i];
        }
      } catch (const Error&) {
        broken = true;
        break;
      }
      const State3 dy{ye.delta - ya.delta, ye.eta - ya.eta, ye.m - ya.m};
      for (std::size_t i = 0; i < 3; ++i) defect[i] += std::abs(dy[i] - integral[i]);
    }
    if (broken) {
      worst = std::numeric_limits<double>::infinity();
      continue;
    }
    const double len = p.r_end() - p.r_begin();
    for (std::size_t i = 0; i < 3; ++i) {
      if (scale[i] > 0.0) worst = std::max(worst, defect[i] / (scale[i] * len));
    }
  }
  rep.ode_residual = worst;
  rep.ode_satisfied = worst < tol;
  if (!rep.ode_satisfied) rep.failures.emplace_back("equilibrium equations violated");

  double min_p = std::numeric_limits<double>::infinity();
  for (const auto& b : bodies) {
    const auto& s = b.profile.samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const bool edge = i + 1 == s.size() || (i == 0 && b.kind == BodyKind::Shell);
      if (edge) continue;
      const auto f = b.profile.fields(s[i]);
      min_p = std::min({min_p, f.p_rad, f.p_tan});
    }
  }
  rep.min_interior_pressure = min_p;
  rep.pressures_positive = min_p > 0.0;
  if (!rep.pressures_positive) rep.failures.emplace_back("pressure not positive inside a support");

  double worst_iface = 0.0;
  for (const auto& b : bodies) {
    const double p0 = b.material.p0();
    worst_iface = std::max(worst_iface, std::abs(b.profile.fields(b.profile.back()).p_rad) / p0);
    if (b.kind == BodyKind::Shell) {
      worst_iface = std::max(worst_iface, std::abs(b.profile.fields(b.profile.front()).p_rad) / p0);
    }
    if (b.profile.termination().cause != Termination::PressureZero) {
      worst_iface = std::max(worst_iface, std::numeric_limits<double>::infinity());
    }
  }
  rep.max_interface_pressure = worst_iface;
  rep.interface_zeros = worst_iface < kInterfaceTol;
  if (!rep.interface_zeros) rep.failures.emplace_back("radial pressure does not vanish at an interface");

  const auto& first = bodies.front();
  if (dist.core() == CoreType::NonVacuumCore) {
    const auto f = first.profile.fields(first.profile.front());
    rep.center_condition = f.p_rad > 0.0 && std::abs(f.p_rad - f.p_tan) <= tol * first.material.p0();
    if (!*rep.center_condition) rep.failures.emplace_back("center condition violated");
  } else {
    rep.vacuum_core = first.r_start > 0.0 &&
                      std::abs(first.profile.fields(first.profile.front()).p_rad) < kInterfaceTol * first.material.p0();
    if (!*rep.vacuum_core) rep.failures.emplace_back("vacuum core boundary condition violated");
  }

  std::vector<double> probes{2.0 * dist.outer_radius()};
  if (dist.core() == CoreType::VacuumCore) probes.push_back(0.5 * first.r_start);
  for (std::size_t j = 1; j < bodies.size(); ++j) probes.push_back(0.5 * (bodies[j - 1].r_end + bodies[j].r_start));
  rep.exterior_vanishing = true;
  for (double r : probes) {
    const auto f = fields_at(dist, r);
    if (f.rho != 0.0 || f.p_rad != 0.0 || f.p_tan != 0.0) rep.exterior_vanishing = false;
  }
  if (!rep.exterior_vanishing) rep.failures.emplace_back("fields do not vanish outside the supports");

  double sum = 0.0;
  for (const auto& b : bodies) sum += b.total_mass;
  rep.mass_additivity_residual = std::abs(sum - dist.total_mass()) / dist.total_mass();
  rep.mass_additive = rep.mass_additivity_residual < 1e-12;
  if (!rep.mass_additive) rep.failures.emplace_back("total mass is not the sum of body masses");
  return rep;
}

}  // namespace selfgrav
