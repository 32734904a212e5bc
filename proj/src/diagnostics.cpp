#include "selfgrav/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "selfgrav/errors.hpp"

namespace selfgrav {

namespace {

constexpr double pi = std::numbers::pi;

constexpr std::array<double, 6> gl6_x{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                      0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr std::array<double, 6> gl6_w{0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                      0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
constexpr std::array<double, 3> gl3_x{-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr std::array<double, 3> gl3_w{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

template <std::size_t N, class F>
double gauss(const std::array<double, N>& x, const std::array<double, N>& w, double a, double b, F f) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += w[i] * f(c + h * x[i]);
  return h * s;
}

// composite Gauss-Legendre, exact for the bump moments on each piece
template <class F>
double composite_gl6(double a, double b, int n, F f) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += gauss(gl6_x, gl6_w, a + i * h, a + (i + 1) * h, f);
  return s;
}

template <class F>
double simpson(double a, double b, int n, F f) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

void require_hyperelastic(const MaterialSpec& spec) {
  if (!spec.hyperelastic()) throw Error(ErrorKind::NotHyperelastic, "the Seth model has no stored energy");
}

// int_{r_begin}^r phi s^2 ds, exact for polynomial bumps
double cumulative_moment(const Perturbation& phi, double r) {
  double s = 0.0;
  for (const auto& [w, b] : phi.terms) {
    if (r <= b.lo()) continue;
    const double hi = std::min(r, b.hi());
    s += w * gauss(gl6_x, gl6_w, b.lo(), hi, [&](double x) { return b(x) * x * x; });
  }
  return s;
}

double internal_density(const MaterialSpec& spec, double delta, double eta) {
  return delta > 0.0 ? delta * spec.energy(delta, eta) : 0.0;
}

// Suffix integrals of 2(p_tan - p_rad)/(K eta r) and m/r^2 on a uniform grid.
class Tails {
 public:
  Tails(const MaterialSpec& spec, double K, const SolutionProfile& p, int n) : spec_(spec), K_(K), p_(p) {
    a_ = p.r_begin();
    b_ = p.r_end();
    h_ = (b_ - a_) / n;
    lam_.assign(n + 1, 0.0);
    grav_.assign(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
      const double lo = a_ + i * h_, hi = i + 1 == n ? b_ : a_ + (i + 1) * h_;
      lam_[i] = lam_[i + 1] + gauss(gl3_x, gl3_w, lo, hi, [&](double r) { return lambda_integrand(r); });
      grav_[i] = grav_[i + 1] + gauss(gl3_x, gl3_w, lo, hi, [&](double r) { return grav_integrand(r); });
    }
  }

  std::pair<double, double> at(double s) const {
    const int n = static_cast<int>(lam_.size()) - 1;
    int i = std::clamp(static_cast<int>((s - a_) / h_), 0, n - 1);
    const double hi = i + 1 == n ? b_ : a_ + (i + 1) * h_;
    const double l = lam_[i + 1] + gauss(gl3_x, gl3_w, s, hi, [&](double r) { return lambda_integrand(r); });
    const double g = grav_[i + 1] + gauss(gl3_x, gl3_w, s, hi, [&](double r) { return grav_integrand(r); });
    return {l, g};
  }

 private:
  double lambda_integrand(double r) const {
    const auto s = p_.state_at(r);
    return 2.0 * (spec_.tangential(s.delta, s.eta) - spec_.radial(s.delta, s.eta)) / (K_ * s.eta * r);
  }
  double grav_integrand(double r) const {
    const auto s = p_.state_at(r);
    return s.m / (r * r);
  }

  const MaterialSpec& spec_;
  double K_;
  const SolutionProfile& p_;
  double a_ = 0.0, b_ = 0.0, h_ = 0.0;
  std::vector<double> lam_, grav_;
};

double G_at(const MaterialSpec& spec, double K, const SolutionProfile& p, const Tails& tails, double s) {
  const auto st = p.state_at(s);
  const auto [lam, grav] = tails.at(s);
  const double M = p.back().m;
  return (spec.energy(st.delta, st.eta) + spec.radial(st.delta, st.eta) / st.delta) / K + lam - grav - M / p.r_end();
}

}  // namespace

double BumpFunction::operator()(double r) const {
  const double s = (r - center) / width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return amplitude * q * q * q * q;
}

double BumpFunction::mass_moment() const {
  return gauss(gl6_x, gl6_w, lo(), hi(), [&](double r) { return (*this)(r) * r * r; });
}

double Perturbation::operator()(double r) const {
  double s = 0.0;
  for (const auto& [w, b] : terms) s += w * b(r);
  return s;
}

double Perturbation::mass_moment() const {
  double s = 0.0;
  for (const auto& [w, b] : terms) s += w * b.mass_moment();
  return s;
}

double Perturbation::lo() const {
  double x = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) x = std::min(x, t.second.lo());
  return x;
}

double Perturbation::hi() const {
  double x = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) x = std::max(x, t.second.hi());
  return x;
}

Perturbation mass_neutral_pair(const BumpFunction& a, const BumpFunction& b) {
  const double mb = b.mass_moment();
  if (mb == 0.0) throw Error(ErrorKind::DomainError, "second bump carries no mass");
  Perturbation p;
  p.terms = {{1.0, a}, {-a.mass_moment() / mb, b}};
  return p;
}

double perturbed_energy(const MaterialSpec& spec, double K, const SolutionProfile& profile, const Perturbation& phi,
                        double tau, int intervals) {
  require_hyperelastic(spec);
  const double a = profile.r_begin(), b = profile.r_end();
  auto state = [&](double r) {
    auto s = profile.state_at(r);
    if (tau != 0.0 && !phi.terms.empty()) {
      const double Phi = cumulative_moment(phi, r);
      s.delta += tau * phi(r) / K;
      s.m += 4.0 * pi * tau * Phi;
      s.eta += 3.0 * tau * Phi / (K * r * r * r);
    }
    return s;
  };
  const double internal = simpson(a, b, intervals, [&](double r) {
    const auto s = state(r);
    return internal_density(spec, s.delta, s.eta) * r * r;
  });
  const double grav = simpson(a, b, intervals, [&](double r) {
    const auto s = state(r);
    return s.m * s.m / (r * r);
  });
  const double M = state(b).m;
  return internal - (grav + M * M / b) / (8.0 * pi);
}

EnergyResult energy_functional(const MaterialSpec& spec, [[maybe_unused]] double K, const SolutionProfile& profile, double rel_tol) {
  require_hyperelastic(spec);
  const double a = profile.r_begin(), b = profile.r_end();
  auto eval = [&](int n, EnergyResult& r) {
    r.intervals = n;
    r.internal = simpson(a, b, n, [&](double x) {
      const auto s = profile.state_at(x);
      return internal_density(spec, s.delta, s.eta) * x * x;
    });
    r.gravity_interior = -simpson(a, b, n, [&](double x) {
                           const auto s = profile.state_at(x);
                           return s.m * s.m / (x * x);
                         }) /
                         (8.0 * pi);
    const double M = profile.back().m;
    r.gravity_exterior = -M * M / (8.0 * pi * b);
    r.energy = r.internal + r.gravity_interior + r.gravity_exterior;
  };
  EnergyResult coarse, fine;
  eval(256, coarse);
  for (int n = 512; n <= (1 << 15); n *= 2) {
    eval(n, fine);
    fine.error_estimate = std::abs(fine.energy - coarse.energy);
    const double scale = std::max({std::abs(fine.internal), std::abs(fine.gravity_interior),
                                   std::abs(fine.gravity_exterior)});
    if (fine.error_estimate <= rel_tol * scale || scale == 0.0) return fine;
    coarse = fine;
  }
  throw Error(ErrorKind::QuadratureNotConverged,
              "energy halving estimate " + std::to_string(fine.error_estimate) + " above tolerance");
}

double variation_integrand(const MaterialSpec& spec, double K, const SolutionProfile& profile, double s) {
  require_hyperelastic(spec);
  const Tails tails(spec, K, profile, 4096);
  return G_at(spec, K, profile, tails, s);
}

FirstVariation first_variation(const MaterialSpec& spec, double K, const SolutionProfile& profile,
                               const Perturbation& phi, int subintervals) {
  require_hyperelastic(spec);
  FirstVariation fv;
  const double a = profile.r_begin(), b = profile.r_end();
  bool inside = false;
  for (const auto& t : phi.terms) inside = inside || (t.second.hi() > a && t.second.lo() < b);
  if (!inside) return fv;

  const Tails tails(spec, K, profile, 4096);
  double norm = 0.0;
  for (const auto& [w, bump] : phi.terms) {
    const double lo = std::max(bump.lo(), a), hi = std::min(bump.hi(), b);
    if (!(hi > lo)) continue;
    fv.value += w * composite_gl6(lo, hi, subintervals, [&](double s) {
      const double G = G_at(spec, K, profile, tails, s);
      fv.max_abs_G = std::max(fv.max_abs_G, std::abs(G));
      return G * bump(s) * s * s;
    });
    norm += std::abs(w) * composite_gl6(lo, hi, subintervals, [&](double s) { return std::abs(bump(s)) * s * s; });
  }
  const double denom = norm * fv.max_abs_G;
  fv.scaled = denom > 0.0 ? std::abs(fv.value) / denom : 0.0;
  return fv;
}

double first_variation_fd(const MaterialSpec& spec, double K, const SolutionProfile& profile, const Perturbation& phi,
                          double tau, int intervals) {
  const double ep = perturbed_energy(spec, K, profile, phi, tau, intervals);
  const double em = perturbed_energy(spec, K, profile, phi, -tau, intervals);
  return (ep - em) / (2.0 * tau);
}

ReferenceRadiusTable reconstruct_reference_radius(const SolutionProfile& profile, double K) {
  (void)K;
  ReferenceRadiusTable t;
  for (const auto& s : profile.samples()) {
    const double R = s.r * std::cbrt(s.eta);
    // across the square-root layer at a zero-density edge R may rise by less than one ulp
    if (!t.rows.empty() && !(R >= t.rows.back().R * (1.0 - 8.0 * std::numeric_limits<double>::epsilon()))) {
      throw Error(ErrorKind::MonotonicityViolation, "R(r) not increasing at r = " + std::to_string(s.r));
    }
    t.rows.push_back({s.r, R});
  }
  t.R_start = t.rows.front().R;

  // integral defect of R' = delta r^2 / R^2, step by step along the dense output
  double defect = 0.0;
  for (const auto& seg : profile.dense()) {
    if (seg.c[0][0] == 0.0) continue;  // square-root layer at a zero-density edge
    const double a = seg.r0, e = std::min(seg.r0 + seg.h, profile.r_end());
    if (!(e > a)) continue;
    const double Ra = a * std::cbrt(profile.state_at(a).eta), Re = e * std::cbrt(profile.state_at(e).eta);
    const double rise = gauss(gl6_x, gl6_w, a, e, [&](double r) {
      const auto st = profile.state_at(r);
      const double R = r * std::cbrt(st.eta);
      return st.delta * r * r / (R * R);
    });
    defect += std::abs(Re - Ra - rise);
  }
  const double span = t.rows.back().R - t.rows.front().R;
  if (span > 0.0) t.max_residual = defect / span;
  return t;
}

}  // namespace selfgrav
