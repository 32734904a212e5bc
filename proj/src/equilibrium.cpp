#include "selfgrav/equilibrium.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "selfgrav/errors.hpp"
#include "selfgrav/integrator.hpp"

namespace selfgrav {

namespace {

constexpr double pi = std::numbers::pi;

// Non-throwing core shared by rhs_general and the integrator.
bool rhs_unchecked(const MaterialSpec& spec, double K, double r, double delta, double eta, double m, State3& out) {
  if (!(r > 0.0) || !(delta > 0.0) || !(eta > 0.0)) return false;
  const double dpd = spec.d_radial_d_delta(delta, eta);
  if (!(dpd > 0.0) || !std::isfinite(dpd)) return false;
  const double dpe = spec.d_radial_d_eta(delta, eta);
  const double pr = spec.radial(delta, eta);
  const double pt = spec.tangential(delta, eta);
  out[0] = (-(3.0 / r) * dpe * (delta - eta) - (2.0 / r) * (pr - pt) - K * delta * m / (r * r)) / dpd;
  out[1] = 3.0 * (delta - eta) / r;
  out[2] = 4.0 * pi * K * r * r * delta;
  return true;
}

}  // namespace

State3 rhs_general(const MaterialSpec& spec, double K, const EquilibriumState& s) {
  if (!(s.r > 0.0)) throw Error(ErrorKind::DomainError, "rhs needs r > 0");
  if (!(s.delta > 0.0) || !(s.eta > 0.0)) throw Error(ErrorKind::DomainError, "rhs needs delta, eta > 0");
  if (!(spec.d_radial_d_delta(s.delta, s.eta) > 0.0)) {
    throw Error(ErrorKind::EllipticityLoss, "dp_rad/ddelta <= 0");
  }
  State3 out{};
  rhs_unchecked(spec, K, s.r, s.delta, s.eta, s.m, out);
  return out;
}

SethThetas seth_thetas(const LameCoefficients& lame, double K, double delta, double eta) {
  const double l = lame.lambda, mu = lame.mu, l2m = l + 2.0 * mu;
  return {(2.0 / (3.0 * l2m)) * (l * eta / delta - l2m * delta / eta), mu * (delta * delta - eta * eta) / (l2m * delta),
          K * std::pow(eta, 4.0 / 3.0) / (l2m * delta)};
}

State3 rhs_seth(const LameCoefficients& lame, double K, const EquilibriumState& s) {
  if (!(s.r > 0.0)) throw Error(ErrorKind::DomainError, "rhs needs r > 0");
  if (!(s.delta > 0.0) || !(s.eta > 0.0)) throw Error(ErrorKind::DomainError, "rhs needs delta, eta > 0");
  const auto th = seth_thetas(lame, K, s.delta, s.eta);
  const double r = s.r;
  return {-(3.0 / r) * th.theta1 * (s.delta - s.eta) - (2.0 / r) * th.theta2 - th.theta3 * s.delta * s.m / (r * r),
          3.0 * (s.delta - s.eta) / r, 4.0 * pi * K * r * r * s.delta};
}

MaterialConstants material_constants_ab(const LameCoefficients& lame) {
  const double l2m = lame.lambda + 2.0 * lame.mu;
  return {2.0 * (lame.lambda + lame.mu) / l2m, 2.0 * lame.mu / l2m};
}

double theta_len(const LameCoefficients& lame, double K) {
  return K * std::sqrt(4.0 * pi / (3.0 * (lame.lambda + 2.0 * lame.mu)));
}

SethDimensionlessState to_xyz(const LameCoefficients& lame, double K, const EquilibriumState& s) {
  if (!(s.r > 0.0) || !(s.eta > 0.0)) throw Error(ErrorKind::DomainError, "to_xyz needs r, eta > 0");
  const double th = theta_len(lame, K);
  return {th * std::pow(s.eta, 2.0 / 3.0), s.delta / s.eta, 3.0 * s.m / (4.0 * pi * K * s.r * s.r * s.r * s.eta), th};
}

EquilibriumState from_xyz(const LameCoefficients& lame, double K, double r, const SethDimensionlessState& v) {
  if (!(r > 0.0) || !(v.x > 0.0)) throw Error(ErrorKind::DomainError, "from_xyz needs r, x > 0");
  const double th = theta_len(lame, K);
  const double eta = std::pow(v.x / th, 1.5);
  return {r, v.y * eta, eta, v.z * 4.0 * pi * K * r * r * r * eta / 3.0};
}

State3 rhs_xyz(double a, double b, double r, double x, double y, double z) {
  if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "rhs_xyz needs r > 0");
  if (!(y > 0.0)) throw Error(ErrorKind::DomainError, "rhs_xyz needs y > 0");
  return {-(2.0 * x / r) * (1.0 - y), (a + b * y + y * y) * (1.0 - y) / (r * y) - r * x * x * z,
          (3.0 * y / r) * (1.0 - z)};
}

State3 rhs_autonomous(double a, double b, double u, double y, double z) {
  return {-u * (1.0 - 2.0 * y) * y, (a + b * y + y * y) * (1.0 - y) - u * u * y * z, 3.0 * y * y * (1.0 - z)};
}

EquilibriumState center_init(const MaterialSpec&, double K, double delta_c, double r_eps) {
  if (!(delta_c > 0.0) || !(r_eps > 0.0)) throw Error(ErrorKind::DomainError, "center_init needs delta_c, r_eps > 0");
  return {r_eps, delta_c, delta_c, (4.0 * pi / 3.0) * K * delta_c * r_eps * r_eps * r_eps};
}

double natural_length(const MaterialSpec& spec, double K) {
  const auto& l = spec.lame();
  return std::sqrt(3.0 * (l.lambda + 2.0 * l.mu) / (4.0 * pi * K * K));
}

EquilibriumState shell_init(const MaterialSpec& spec, double K, double S, double r0, double M_interior) {
  if (!(r0 > 0.0) || !(S > 0.0) || !(K > 0.0)) throw Error(ErrorKind::DomainError, "shell_init needs r0, S, K > 0");
  if (M_interior < 0.0) throw Error(ErrorKind::DomainError, "negative interior mass");
  const double eta = std::pow(S / r0, 3);
  if (spec.family() == Family::Seth) {
    const auto& lame = spec.lame();
    if (!(lame.lambda > 0.0)) throw Error(ErrorKind::NoZeroPressureRoot, "Seth shell needs lambda > 0");
    if (eta > seth_eta_bound(lame) * (1.0 + 1e-13)) {
      throw Error(ErrorKind::NoZeroPressureRoot, "eta(r0) exceeds the zero-pressure bound, r0 < r_min");
    }
    return {r0, zero_pressure_delta_seth(lame, std::min(eta, seth_eta_bound(lame))), eta, M_interior};
  }
  // first sign change of p_rad(., eta) from below on a log grid
  auto p = [&](double d) { return spec.radial(d, eta); };
  double lo = 1e-12 * std::max(1.0, eta);
  double plo = p(lo);
  if (plo == 0.0) return {r0, lo, eta, M_interior};
  for (int i = 0; i < 400; ++i) {
    const double hi = lo * 1.1;
    const double phi = p(hi);
    if (std::isfinite(plo) && std::isfinite(phi) && plo < 0.0 && phi >= 0.0) {
      boost::uintmax_t it = 200;
      auto tol = [](double x, double y) { return std::abs(y - x) <= 1e-15 * std::abs(x); };
      auto br = boost::math::tools::toms748_solve(p, lo, hi, plo, phi, tol, it);
      const double d = std::abs(p(br.first)) < std::abs(p(br.second)) ? br.first : br.second;
      return {r0, d, eta, M_interior};
    }
    lo = hi;
    plo = phi;
  }
  throw Error(ErrorKind::NoZeroPressureRoot, "p_rad(., eta(r0)) has no positive root");
}

SolutionProfile integrate(const MaterialSpec& spec, double K, const EquilibriumState& init,
                          const IntegrationControls& controls, std::optional<double> S) {
  if (!(controls.rel_tol > 0.0) || !(controls.abs_tol > 0.0)) {
    throw Error(ErrorKind::DomainError, "tolerances must be positive");
  }
  std::vector<EquilibriumState> samples;
  std::vector<DenseSegment> dense;
  EquilibriumState start = init;
  double first_step = controls.initial_step;

  // Seth shell at r_min: delta vanishes like sqrt(r - r0), step over the
  // square-root layer analytically.
  if (spec.family() == Family::Seth && init.delta == 0.0) {
    const auto& l = spec.lame();
    const double x = 1e-12 * init.r;
    const double slope = 2.0 * (l.lambda + l.mu) * init.eta * init.eta / (init.r * (l.lambda + 2.0 * l.mu));
    start.r = init.r + x;
    start.delta = std::sqrt(2.0 * slope * x);
    start.eta = init.eta - 3.0 * init.eta * x / init.r;
    start.m = init.m + (8.0 * pi / 3.0) * K * init.r * init.r * std::sqrt(2.0 * slope) * std::pow(x, 1.5);
    samples.push_back(init);
    DenseSegment lin;
    lin.r0 = init.r;
    lin.h = x;
    lin.c[0] = {init.delta, init.eta, init.m};
    lin.c[1] = {start.delta - init.delta, start.eta - init.eta, start.m - init.m};
    dense.push_back(lin);
    if (first_step <= 0.0) first_step = x;
  }

  Dopri5Controls dc;
  dc.rel_tol = controls.rel_tol;
  dc.abs_tol = controls.abs_tol;
  dc.r_stop = controls.r_stop > 0.0 ? controls.r_stop : 1e3 * natural_length(spec, K);
  dc.max_steps = controls.max_steps;
  dc.initial_step = first_step;

  const Rhs3 rhs = [&](double r, const State3& y, State3& f) { return rhs_unchecked(spec, K, r, y[0], y[1], y[2], f); };
  std::optional<Event3> event;
  if (controls.detect_pressure_zero) {
    event = Event3{[&](double, const State3& y) { return spec.radial(y[0], y[1]); }, controls.abs_tol * spec.p0()};
  }

  auto res = dopri5(rhs, start.r, {start.delta, start.eta, start.m}, dc, event);
  for (std::size_t i = 0; i < res.r.size(); ++i) {
    samples.push_back({res.r[i], res.y[i][0], res.y[i][1], res.y[i][2]});
  }
  for (auto& seg : res.dense) dense.push_back(seg);
  return SolutionProfile(spec, K, S, std::move(samples), std::move(dense), std::move(res.termination));
}

}  // namespace selfgrav
