#include <doctest.h>

#include <cmath>
#include <numbers>

#include "selfgrav/bodies.hpp"
#include "selfgrav/errors.hpp"
#include "selfgrav/seth.hpp"
#include "support.hpp"

using namespace selfgrav;
using testing::rel;

namespace {

constexpr double pi = std::numbers::pi;

SolutionProfile self_similar_profile(const LameCoefficients& l, double K, double r0, double r1, int n) {
  std::vector<EquilibriumState> s;
  std::vector<State3> d;
  for (int i = 0; i <= n; ++i) {
    const double r = r0 * std::pow(r1 / r0, double(i) / n);
    const auto v = self_similar(l, K, r);
    s.push_back({r, v.delta, v.eta, v.m});
    d.push_back(self_similar_derivative(l, K, r));
  }
  return SolutionProfile::from_samples(MaterialSpec::seth(l.lambda, l.mu), K, std::nullopt, std::move(s), d,
                                       {Termination::RadiusCutoff, r1, ""});
}

}  // namespace

TEST_CASE("self-similar solution") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  for (int i = 0; i < 20; ++i) {
    const auto l = testing::random_lame(rng, Family::Seth);
    const double K = u(rng), r = u(rng);
    const auto v = self_similar(l, K, r);
    CHECK(v.eta / v.delta == doctest::Approx(2.0).epsilon(1e-15));
    const auto spec = MaterialSpec::seth(l.lambda, l.mu);
    const double scale = std::max(spec.p0(), std::abs(v.p_rad));
    CHECK(std::abs(v.p_rad - spec.radial(v.delta, v.eta)) < 1e-13 * scale);
    CHECK(std::abs(v.p_tan - spec.tangential(v.delta, v.eta)) < 1e-13 * scale);
    const auto an = SethAnalysis::make(l, K);
    const double diff = 0.75 * l.mu * std::pow(2 * an.c_const / K, 2.0 / 3.0) / r;
    CHECK(v.p_tan > v.p_rad);
    CHECK(rel(v.p_tan - v.p_rad, diff) < 1e-10);
    if (an.R_star > 0.0) CHECK(std::abs(self_similar(l, K, an.R_star).p_rad) < 1e-12 * spec.p0());
  }
  const auto an = SethAnalysis::make({1, 1}, 1.0);
  CHECK(an.R_star == doctest::Approx(0.6444).epsilon(1e-3));
  CHECK_THROWS_AS(self_similar({1, 1}, 1.0, 0.0), Error);
}

TEST_CASE("self-similar residual on log-spaced radii") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int k = 0; k < 10; ++k) {
    const auto l = testing::random_lame(rng, Family::Seth);
    const double K = u(rng);
    const double th = theta_len(l, K);
    for (int i = 0; i < 50; ++i) {
      const double r = 0.1 * std::pow(100.0, i / 49.0) / th;
      const auto v = self_similar(l, K, r);
      const auto f = rhs_seth(l, K, {r, v.delta, v.eta, v.m});
      const auto g = self_similar_derivative(l, K, r);
      for (int c = 0; c < 3; ++c) CHECK(rel(f[c], g[c]) < 1e-10);
    }
  }
}

TEST_CASE("fixed points") {
  const auto ab = material_constants_ab({1, 1});
  const auto fp = fixed_points(ab.a, ab.b);
  CHECK(fp.P.u == doctest::Approx(0.5 * std::sqrt(23.0 / 3.0)).epsilon(1e-15));
  CHECK(fp.P.u == doctest::Approx(1.384437).epsilon(1e-6));
  CHECK(fp.P.y == 0.5);
  CHECK(fp.Q.u == 0.0);
  CHECK(fp.Q.y == 1.0);
  CHECK(fp.P.classification == Stability::Sink);
  CHECK(fp.Q.classification == Stability::Saddle);
  CHECK(fp.P.z_eigenvalue == -0.75);
  CHECK(fp.Q.z_eigenvalue == -3.0);
  CHECK(fp.Q.eigenvalues[0].real() == doctest::Approx(1.0));
  CHECK(fp.Q.eigenvalues[1].real() == doctest::Approx(-(ab.a + ab.b + 1)));
  CHECK_THROWS_AS(fixed_points(0.9, 0.5), Error);
  CHECK_THROWS_AS(fixed_points(1.2, 0.0), Error);
  CHECK_THROWS_AS(fixed_points(1.2, 1.5), Error);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto l = testing::random_seth_positive(rng);
    const double K = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    const auto c = material_constants_ab(l);
    const auto f = fixed_points(c.a, c.b);
    for (double v : rhs_autonomous(c.a, c.b, f.P.u, f.P.y, 1.0)) CHECK(std::abs(v) < 1e-14);
    for (double v : rhs_autonomous(c.a, c.b, f.Q.u, f.Q.y, 1.0)) CHECK(std::abs(v) < 1e-14);
    CHECK(f.P.classification == Stability::Sink);
    CHECK(f.Q.classification == Stability::Saddle);
    const auto an = SethAnalysis::make(l, K);
    CHECK(rel(an.u_P, std::pow(2 * an.c_const / K, 2.0 / 3.0) * an.theta_len) < 1e-12);
    CHECK(an.a >= 1.0);
    CHECK(an.b <= 1.0);
  }
}

TEST_CASE("autonomous Jacobian matches finite differences") {
  const auto c = material_constants_ab({2.0, 0.7});
  const double u = 0.8, y = 0.3, h = 1e-7;
  const auto J = autonomous_jacobian(c.a, c.b, u, y);
  const auto fu = rhs_autonomous(c.a, c.b, u + h, y, 1.0), fm = rhs_autonomous(c.a, c.b, u - h, y, 1.0);
  const auto gu = rhs_autonomous(c.a, c.b, u, y + h, 1.0), gm = rhs_autonomous(c.a, c.b, u, y - h, 1.0);
  CHECK(J[0] == doctest::Approx((fu[0] - fm[0]) / (2 * h)).epsilon(1e-7));
  CHECK(J[1] == doctest::Approx((gu[0] - gm[0]) / (2 * h)).epsilon(1e-7));
  CHECK(J[2] == doctest::Approx((fu[1] - fm[1]) / (2 * h)).epsilon(1e-7));
  CHECK(J[3] == doctest::Approx((gu[1] - gm[1]) / (2 * h)).epsilon(1e-7));
  const double div = J[0] + J[3];
  CHECK(divergence(c.a, c.b, u, y) == doctest::Approx(div).epsilon(1e-14));
}

TEST_CASE("divergence is negative in the admissible quadrant") {
  for (const LameCoefficients l : {LameCoefficients{1, 1}, LameCoefficients{3, 1}}) {
    const auto c = material_constants_ab(l);
    const double uP = 0.5 * std::sqrt(1 + 4 * c.a + 2 * c.b);
    for (int i = 1; i <= 100; ++i) {
      for (int j = 1; j < 100; ++j) CHECK(divergence(c.a, c.b, 3 * uP * i / 100.0, j / 100.0) < 0.0);
    }
  }
}

TEST_CASE("trapping-disk derivative closed form") {
  const auto c = material_constants_ab({1, 1});
  const double uP = 0.5 * std::sqrt(1 + 4 * c.a + 2 * c.b);
  for (double t = 0.05; t < 6.28; t += 0.1) {
    const double u = uP + std::sqrt(0.5) * std::cos(t), y = 0.5 + std::sqrt(0.5) * std::sin(t);
    const double dy = y - 0.5;
    const double closed = 2 * y * (u - uP) * (u - uP) * dy - dy * dy * (4 * c.a + y * (2 * y + 2 * c.b - 1));
    CHECK(trapping_disk_derivative(c.a, c.b, u, y) == doctest::Approx(closed).epsilon(1e-12));
  }
  // negative below the horizontal diameter
  CHECK(trapping_disk_derivative(c.a, c.b, uP, 0.5 - std::sqrt(0.5) + 0.01) < 0.0);
}

TEST_CASE("asymptotics of a Seth ball") {
  const LameCoefficients l{1, 1};
  const auto spec = MaterialSpec::seth(1, 1);
  const auto an = SethAnalysis::make(l, 1.0);
  IntegrationControls c;
  c.detect_pressure_zero = false;
  const auto p = integrate(spec, 1.0, center_init(spec, 1.0, 2.0, 1e-6 / an.theta_len), c);
  REQUIRE(p.termination().cause == Termination::RadiusCutoff);
  const auto rep = asymptotics_check(p, an, 1e3 / an.theta_len);
  CHECK(rep.dy < 1e-3);
  CHECK(rep.dz < 1e-6);
  CHECK(rep.dp < 0.01);
  CHECK(rep.du < 1e-2);
  try {
    asymptotics_check(p, an, 2e3 / an.theta_len);
    FAIL("expected ProfileTooShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProfileTooShort);
  }
}

TEST_CASE("asymptotics of the self-similar profile") {
  const LameCoefficients l{1.5, 0.5};
  const auto an = SethAnalysis::make(l, 2.0);
  const auto p = self_similar_profile(l, 2.0, 0.05, 50.0, 4000);
  for (double r : {0.1, 1.0, 10.0}) {
    const auto rep = asymptotics_check(p, an, r);
    CHECK(rep.dy < 1e-8);
    CHECK(rep.du < 1e-8);
    CHECK(rep.dz < 1e-8);
    const double dp = (9 * l.lambda + 2 * l.mu) * std::pow(2 * an.c_const / 2.0, 2.0 / 3.0) / (8 * an.p0() * r);
    CHECK(rel(rep.dp, dp) < 1e-8);
  }
}

TEST_CASE("shell profiles approach z = 1") {
  const LameCoefficients l{1, 1};
  const auto spec = MaterialSpec::seth(1, 1);
  const auto an = SethAnalysis::make(l, 1.0);
  IntegrationControls c;
  c.detect_pressure_zero = false;
  const auto p = integrate(spec, 1.0, shell_init(spec, 1.0, 1.0, 0.8, 0.0), c, 1.0);
  REQUIRE(p.termination().cause == Termination::RadiusCutoff);
  double prev = std::numeric_limits<double>::infinity();
  for (double r : {2.0, 5.0, 20.0, 100.0, 500.0}) {
    const auto rep = asymptotics_check(p, an, r / an.theta_len);
    CHECK(rep.dz < prev);
    prev = rep.dz;
  }
  CHECK(to_xyz(l, 1.0, p.front()).z < 1.0);
}

TEST_CASE("boundary pressure derivative") {
  const LameCoefficients l{1, 1};
  for (double eta : {0.3, 0.7, 1.0}) {
    for (double m : {0.0, 0.5, 3.0}) {
      if (eta == 1.0 && m == 0.0) continue;
      CHECK(boundary_pressure_derivative(l, 1.0, eta, m, 0.8) < 0.0);
    }
  }
  for (double m : {0.0, 1.0, 100.0}) CHECK(boundary_pressure_derivative(l, 1.0, seth_eta_bound(l), m, 0.7) > 0.0);
  CHECK(boundary_pressure_derivative(l, 1.0, 1.0, 0.0, 0.9) == 0.0);
  CHECK_THROWS_AS(boundary_pressure_derivative(l, 1.0, 5.0, 0.0, 0.9), Error);

  // agrees with p_rad' from the equations at a pressure zero
  const auto spec = MaterialSpec::seth(1, 1);
  const double eta = 1.8, m = 0.6, r = 0.9;
  const double d = zero_pressure_delta_seth(l, eta);
  const auto f = rhs_seth(l, 1.0, {r, d, eta, m});
  const double dp = spec.d_radial_d_delta(d, eta) * f[0] + spec.d_radial_d_eta(d, eta) * f[1];
  CHECK(boundary_pressure_derivative(l, 1.0, eta, m, r) == doctest::Approx(dp).epsilon(1e-12));
}

TEST_CASE("phase orbits converge to the sink") {
  const auto c = material_constants_ab({1, 1});
  const auto fp = fixed_points(c.a, c.b);
  for (const State3 seed : {State3{1e-3, 0.999, 1.0}, State3{0.5, 0.2, 1.0}, State3{2.5, 0.8, 0.4}}) {
    const auto rows = phase_orbit(c.a, c.b, seed, 40.0);
    CHECK(rows.front().xi == 0.0);
    CHECK(std::abs(rows.back().u - fp.P.u) < 1e-6);
    CHECK(std::abs(rows.back().y - 0.5) < 1e-6);
    CHECK(std::abs(rows.back().z - 1.0) < 1e-6);
  }
}

TEST_CASE("stability labels") {
  CHECK(to_string(Stability::Sink) == "sink");
  CHECK(to_string(Stability::Saddle) == "saddle");
  CHECK(pi > 3.0);
}
