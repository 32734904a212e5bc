#include "selfgrav/seth.hpp"

#include <cmath>
#include <numbers>

#include "selfgrav/errors.hpp"
#include "selfgrav/integrator.hpp"

namespace selfgrav {

namespace {
constexpr double pi = std::numbers::pi;
}

SethAnalysis SethAnalysis::make(const LameCoefficients& lame, double K) {
  if (!(K > 0.0)) throw Error(ErrorKind::DomainError, "K must be positive");
  MaterialSpec check = MaterialSpec::seth(lame.lambda, lame.mu);
  (void)check;
  SethAnalysis s;
  s.lame = lame;
  s.K = K;
  const auto ab = material_constants_ab(lame);
  s.a = ab.a;
  s.b = ab.b;
  s.theta_len = selfgrav::theta_len(lame, K);
  const double l = lame.lambda, mu = lame.mu;
  s.c_const = std::pow(3.0 / pi, 0.75) * std::pow(9.0 * l + 14.0 * mu, 0.75) / (16.0 * std::sqrt(K));
  s.R_star = std::pow(2.0 * s.c_const / K, 2.0 / 3.0) * (9.0 * l + 2.0 * mu) / (12.0 * l + 8.0 * mu);
  s.u_P = 0.5 * std::sqrt(1.0 + 4.0 * s.a + 2.0 * s.b);
  return s;
}

SelfSimilarValues self_similar(const LameCoefficients& lame, double K, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "self_similar needs r > 0");
  const auto s = SethAnalysis::make(lame, K);
  const double c = s.c_const;
  const double scale = std::pow(2.0 * c / K, 2.0 / 3.0) / r;
  SelfSimilarValues v;
  v.delta = c / (K * std::pow(r, 1.5));
  v.eta = 2.0 * v.delta;
  v.m = (8.0 * pi * c / 3.0) * std::pow(r, 1.5);
  v.p_rad = -s.p0() + (9.0 * lame.lambda + 2.0 * lame.mu) / 8.0 * scale;
  v.p_tan = -s.p0() + (9.0 * lame.lambda + 8.0 * lame.mu) / 8.0 * scale;
  return v;
}

State3 self_similar_derivative(const LameCoefficients& lame, double K, double r) {
  const auto v = self_similar(lame, K, r);
  return {-1.5 * v.delta / r, -1.5 * v.eta / r, 1.5 * v.m / r};
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Sink: return "sink";
    case Stability::Source: return "source";
    case Stability::Saddle: return "saddle";
    case Stability::NonHyperbolic: return "non-hyperbolic";
  }
  return "unknown";
}

std::array<double, 4> autonomous_jacobian(double a, double b, double u, double y) {
  return {-(1.0 - 2.0 * y) * y, -u * (1.0 - 4.0 * y), -2.0 * u * y,
          (b + 2.0 * y) * (1.0 - y) - (a + b * y + y * y) - u * u};
}

namespace {

FixedPoint classify(double a, double b, double u, double y) {
  const auto J = autonomous_jacobian(a, b, u, y);
  const double tr = J[0] + J[3];
  const double det = J[0] * J[3] - J[1] * J[2];
  const std::complex<double> disc = std::sqrt(std::complex<double>(0.25 * tr * tr - det, 0.0));
  FixedPoint fp;
  fp.u = u;
  fp.y = y;
  fp.eigenvalues = {0.5 * tr + disc, 0.5 * tr - disc};
  fp.z_eigenvalue = -3.0 * y * y;
  const double r1 = fp.eigenvalues[0].real(), r2 = fp.eigenvalues[1].real();
  if (r1 == 0.0 || r2 == 0.0) {
    fp.classification = Stability::NonHyperbolic;
  } else if (r1 < 0.0 && r2 < 0.0) {
    fp.classification = Stability::Sink;
  } else if (r1 > 0.0 && r2 > 0.0) {
    fp.classification = Stability::Source;
  } else {
    fp.classification = Stability::Saddle;
  }
  return fp;
}

}  // namespace

FixedPoints fixed_points(double a, double b) {
  if (!(a >= 1.0) || !(b > 0.0) || !(b <= 1.0)) {
    throw Error(ErrorKind::DomainError, "fixed_points needs a >= 1 and 0 < b <= 1");
  }
  return {classify(a, b, 0.5 * std::sqrt(1.0 + 4.0 * a + 2.0 * b), 0.5), classify(a, b, 0.0, 1.0)};
}

double divergence(double a, double b, double u, double y) { return b - a + y - 2.0 * b * y - u * u - y * y; }

double trapping_disk_derivative(double a, double b, double u, double y) {
  const double uP = 0.5 * std::sqrt(1.0 + 4.0 * a + 2.0 * b);
  const auto f = rhs_autonomous(a, b, u, y, 1.0);
  return 2.0 * (u - uP) * f[0] + 2.0 * (y - 0.5) * f[1];
}

AsymptoticsReport asymptotics_check(const SolutionProfile& profile, const SethAnalysis& an, double r_probe) {
  if (r_probe > profile.r_end() || r_probe < profile.r_begin()) {
    throw Error(ErrorKind::ProfileTooShort, "profile ends at r = " + std::to_string(profile.r_end()));
  }
  const auto s = profile.state_at(r_probe);
  const auto v = to_xyz(an.lame, an.K, s);
  AsymptoticsReport rep;
  rep.dy = std::abs(v.y - 0.5);
  rep.du = std::abs(r_probe * v.x - an.u_P);
  rep.dz = std::abs(v.z - 1.0);
  const double p0 = an.p0();
  rep.dp = std::abs(profile.material().radial(s.delta, s.eta) + p0) / p0;
  return rep;
}

double boundary_pressure_derivative(const LameCoefficients& lame, double K, double eta, double m, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "r must be positive");
  const double delta = zero_pressure_delta_seth(lame, eta);
  const double l = lame.lambda, mu = lame.mu;
  return (2.0 * mu / r) * ((3.0 * l + 2.0 * mu) / (l + 2.0 * mu)) * (std::pow(eta, 2.0 / 3.0) - 1.0) -
         (K / (r * r)) * m * delta;
}

std::vector<PhaseRow> phase_orbit(double a, double b, const State3& seed, double xi_end, double rel_tol,
                                  double abs_tol) {
  if (!(xi_end > 0.0)) throw Error(ErrorKind::DomainError, "xi_end must be positive");
  const Rhs3 rhs = [&](double, const State3& v, State3& f) {
    f = rhs_autonomous(a, b, v[0], v[1], v[2]);
    return true;
  };
  Dopri5Controls dc;
  dc.rel_tol = rel_tol;
  dc.abs_tol = abs_tol;
  dc.r_stop = xi_end;
  dc.initial_step = 1e-3;
  auto res = dopri5(rhs, 0.0, seed, dc);
  if (res.termination.cause != Termination::RadiusCutoff) {
    throw Error(ErrorKind::StepFailure, "phase orbit stopped at xi = " + std::to_string(res.termination.r));
  }
  std::vector<PhaseRow> rows;
  for (std::size_t i = 0; i < res.r.size(); ++i) rows.push_back({res.r[i], res.y[i][0], res.y[i][1], res.y[i][2]});
  return rows;
}

}  // namespace selfgrav
