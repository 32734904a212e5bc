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

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("Seth balls satisfy the radius and mass bounds") {
  const auto spec = MaterialSpec::seth(1, 1);
  for (double rc : {1.1, 1.5, 2.0, 4.0, 8.0}) {
    const auto b = build_ball(spec, 1.0, rc);
    REQUIRE(b.bounds);
    CHECK(b.bounds->all_strict());
    const double Rr = std::cbrt(3 * b.total_mass / (4 * pi));
    CHECK(std::sqrt(0.4) * Rr < b.r_end);
    CHECK(b.r_end < Rr);
    CHECK(b.total_mass < 4 * pi / 3 * rc * std::pow(b.r_end, 3));
    CHECK(b.profile.fields(b.profile.back()).rho > 0.0);
    CHECK(b.kind == BodyKind::Ball);
  }
  const auto two = build_ball(spec, 1.0, 2.0);
  CHECK(two.r_end == doctest::Approx(0.62319).epsilon(1e-5));
  CHECK(two.total_mass == doctest::Approx(1.43922).epsilon(1e-5));
  CHECK(two.total_mass < 8 * pi / 3 * std::pow(two.r_end, 3));
}

TEST_CASE("ball existence threshold") {
  const auto spec = MaterialSpec::seth(1, 1);
  CHECK(kind_of([&] { build_ball(spec, 1.0, 1.0); }) == ErrorKind::NoEquilibrium);
  CHECK(kind_of([&] { build_ball(spec, 1.0, 0.9); }) == ErrorKind::NoEquilibrium);
  CHECK(exit_code(ErrorKind::NoEquilibrium) == 3);
  const auto b = build_ball(spec, 1.0, 1.0001);
  CHECK(b.profile.termination().cause == Termination::PressureZero);
  CHECK(b.bounds->all_strict());
}

TEST_CASE("balls of other families") {
  const auto lin = build_ball(MaterialSpec::linear(1, 1), 1.0, 2.0);
  CHECK(lin.r_end == doctest::Approx(0.6486).epsilon(1e-3));
  CHECK_FALSE(lin.bounds.has_value());
  CHECK(verify_distribution(MatterDistribution(lin)).passed());
  // the default Hadamard h has a non-positive diagonal pressure at delta = 2
  CHECK(kind_of([] { build_ball(MaterialSpec::hadamard(1, 1), 1.0, 2.0); }) == ErrorKind::NoEquilibrium);
  IntegrationControls c;
  c.r_stop = 0.1;
  CHECK(kind_of([&] { build_ball(MaterialSpec::seth(1, 1), 1.0, 2.0, c); }) == ErrorKind::NoBoundaryFound);
}

TEST_CASE("inner shells") {
  const LameCoefficients l{1, 1};
  const double rmin = std::sqrt(0.4);
  CHECK(shell_r_min(l, 1.0) == doctest::Approx(rmin).epsilon(1e-15));

  const auto s = build_inner_shell(l, 1.0, 1.0, 0.8);
  const double Rr = std::cbrt(1 + 3 * s.total_mass / (4 * pi));
  CHECK(std::sqrt(0.4) * Rr < s.r_end);
  CHECK(s.r_end < Rr);
  CHECK(s.profile.fields(s.profile.front()).rho > 0.0);

  const auto m = build_inner_shell(l, 1.0, 1.0, rmin);
  CHECK(std::abs(m.profile.front().delta) < 1e-10);
  CHECK(m.bounds->all_strict());
  for (double r0 : {rmin, 0.7, 0.9, 0.99}) {
    const auto b = build_inner_shell(l, 1.0, 1.0, r0);
    CHECK(b.bounds->all_strict());
    if (r0 > rmin) CHECK(b.profile.front().delta > 0.0);
    CHECK(verify_distribution(MatterDistribution(b)).passed());
  }
  CHECK(kind_of([&] { build_inner_shell(l, 1.0, 1.0, 1.0); }) == ErrorKind::InadmissibleInnerRadius);
  CHECK(kind_of([&] { build_inner_shell(l, 1.0, 1.0, 0.5); }) == ErrorKind::InadmissibleInnerRadius);
}

TEST_CASE("shells around a ball") {
  const LameCoefficients l{1, 1};
  const auto ball = build_ball(MaterialSpec::seth(1, 1), 1.0, 2.0);
  const MatterDistribution one(ball);
  const double S = recursive_shell_S(l, ball.r_end);
  CHECK(std::sqrt(0.4) * S > ball.r_end);
  const auto two = add_shell(one, l, 1.0, S, shell_r_min(l, S));
  REQUIRE(two.bodies().size() == 2);
  const auto& sh = two.bodies()[1];
  CHECK(sh.r_start > ball.r_end);
  CHECK(sh.bounds->lower_ok);
  CHECK(std::sqrt(0.4) * std::cbrt(S * S * S + 3 * sh.total_mass / (4 * pi)) < sh.r_end);
  const auto rep = verify_distribution(two);
  CHECK(rep.passed());
  CHECK(rel(two.total_mass(), ball.total_mass + sh.total_mass) < 1e-12);
  CHECK(two.interface_radii().size() == 4);
  CHECK(two.core() == CoreType::NonVacuumCore);

  // r_min not beyond the current outer radius
  CHECK(kind_of([&] { add_shell(one, l, 1.0, ball.r_end, ball.r_end); }) == ErrorKind::InadmissibleInnerRadius);

  // past r_max the boundary pressure derivative is negative
  const double rmax = r_max_scan(l, 1.0, S, ball.total_mass);
  CHECK(rmax < S);
  CHECK(rmax > shell_r_min(l, S));
  const double r0 = 0.5 * (rmax + S);
  CHECK(kind_of([&] { add_shell(one, l, 1.0, S, r0); }) == ErrorKind::NegativeBoundaryDerivative);
}

TEST_CASE("zero interior mass reproduces an inner shell") {
  const LameCoefficients l{1, 1};
  const auto spec = MaterialSpec::seth(1, 1);
  const auto a = build_inner_shell(l, 1.0, 1.0, 0.8);
  const auto p = integrate(spec, 1.0, shell_init(spec, 1.0, 1.0, 0.8, 0.0), {}, 1.0);
  CHECK(p.r_end() == a.r_end);
  CHECK(p.back().m == a.profile.back().m);
}

TEST_CASE("r_max scan") {
  const LameCoefficients l{1, 1};
  CHECK(r_max_scan(l, 1.0, 1.0, 0.0) == 1.0);
  const double r = r_max_scan(l, 1.0, 1.0, 5.0);
  CHECK(r < 1.0);
  const double eta = std::pow(1.0 / r, 3);
  CHECK(std::abs(boundary_pressure_derivative(l, 1.0, eta, 5.0, r)) < 1e-10 * 2.5);
  CHECK(boundary_pressure_derivative(l, 1.0, seth_eta_bound(l), 5.0, shell_r_min(l, 1.0)) > 0.0);
  CHECK_THROWS_AS(r_max_scan(l, 1.0, 1.0, 0.0, 50), Error);
}

TEST_CASE("recursive assembly") {
  const LameCoefficients l{1, 1};
  MatterDistribution d(build_ball(MaterialSpec::seth(1, 1), 1.0, 2.0));
  for (int j = 0; j < 3; ++j) {
    const double S = recursive_shell_S(l, d.outer_radius());
    d = add_shell(d, l, 1.0, S, shell_r_min(l, S));
  }
  CHECK(d.bodies().size() == 4);
  const auto rep = verify_distribution(d);
  CHECK(rep.passed());
  CHECK(rep.mass_additivity_residual < 1e-12);
  const auto radii = d.interface_radii();
  for (std::size_t i = 1; i < radii.size(); ++i) CHECK(radii[i] > radii[i - 1]);

  // distinct parameters per body, vacuum core
  const LameCoefficients l2{2.0, 0.5};
  MatterDistribution v(build_inner_shell(l, 2.0, 1.0, 0.75));
  const double S = recursive_shell_S(l2, v.outer_radius(), 1.2);
  v = add_shell(v, l2, 0.7, S, shell_r_min(l2, S));
  const auto vr = verify_distribution(v);
  CHECK(vr.passed());
  CHECK_FALSE(vr.center_condition.has_value());
  REQUIRE(vr.vacuum_core.has_value());
  CHECK(*vr.vacuum_core);
  CHECK(v.core() == CoreType::VacuumCore);
}

TEST_CASE("verifier counterexamples") {
  const auto ball = build_ball(MaterialSpec::seth(1, 1), 1.0, 2.0);
  const auto ok = verify_distribution(MatterDistribution(ball));
  CHECK(ok.passed());
  REQUIRE(ok.center_condition.has_value());
  CHECK(*ok.center_condition);
  CHECK(ok.ode_residual < 1e-8);

  Body cut = ball;
  cut.profile = ball.profile.truncated(0.8 * ball.r_end);
  cut.r_end = cut.profile.r_end();
  cut.total_mass = cut.profile.back().m;
  const auto bad = verify_distribution(MatterDistribution(cut));
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.interface_zeros);
  CHECK(bad.ode_satisfied);

  const auto f = fields_at(MatterDistribution(ball), 2 * ball.r_end);
  CHECK(f.rho == 0.0);
  CHECK(f.p_rad == 0.0);
  CHECK(f.p_tan == 0.0);
}
