#include "selfgrav/calibration.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "selfgrav/errors.hpp"

namespace selfgrav {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
std::vector<std::pair<double, double>> scan(F f, double lo, double hi, int n) {
  std::vector<std::pair<double, double>> out;
  const double step = std::log(hi / lo) / n;
  double a = lo, fa = f(a);
  for (int i = 1; i <= n; ++i) {
    const double b = lo * std::exp(step * i);
    const double fb = f(b);
    if (std::isfinite(fa) && std::isfinite(fb) && ((fa < 0.0 && fb >= 0.0) || (fa > 0.0 && fb <= 0.0))) {
      out.emplace_back(a, b);
    }
    a = b;
    fa = fb;
  }
  return out;
}

template <class F>
double refine(F f, double a, double b) {
  const double fa = f(a), fb = f(b);
  if (fb == 0.0) return b;
  boost::uintmax_t it = 300;
  auto tol = [](double x, double y) { return std::abs(y - x) <= 4e-16 * std::abs(x); };
  auto br = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, it);
  return std::abs(f(br.first)) <= std::abs(f(br.second)) ? br.first : br.second;
}

std::string describe(const std::vector<std::pair<double, double>>& br) {
  std::ostringstream os;
  os.precision(6);
  for (const auto& [a, b] : br) os << " [" << a << ", " << b << "]";
  return os.str();
}

void require_positive(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "observables must be positive");
  }
}

}  // namespace

double K_from_central(const MaterialSpec& spec, double rho_c, double p_c, bool force_root_finding,
                      const CalibrationControls& controls) {
  require_positive({rho_c});
  if (spec.family() == Family::Seth && !force_root_finding) {
    const double ratio = p_c / spec.p0() + 1.0;
    if (!(ratio > 0.0)) throw Error(ErrorKind::OutOfRange, "p_c <= -p0 is not attained by a Seth material");
    return rho_c * std::pow(ratio, -1.5);
  }
  if (p_c == 0.0) return rho_c;
  auto f = [&](double d) { return spec.radial(d, d) - p_c; };
  const auto br = scan(f, controls.bracket_lo, controls.bracket_hi, controls.scan_points);
  if (br.empty()) throw Error(ErrorKind::OutOfRange, "central pressure not attained on the search bracket");
  if (br.size() > 1) throw Error(ErrorKind::NotInvertible, "F(delta) = p_c has several solutions:" + describe(br));
  return rho_c / refine(f, br[0].first, br[0].second);
}

std::vector<std::pair<double, double>> surface_brackets(const MaterialSpec& spec, double rho_r1, double r1, double M,
                                                        const CalibrationControls& controls) {
  require_positive({rho_r1, r1, M});
  const double c = M / ((4.0 * pi / 3.0) * r1 * r1 * r1);
  auto f = [&](double K) { return spec.radial(rho_r1 / K, c / K); };
  return scan(f, controls.bracket_lo * rho_r1, controls.bracket_hi * rho_r1, controls.scan_points);
}

double K_from_surface(const MaterialSpec& spec, double rho_r1, double r1, double M,
                      const CalibrationControls& controls) {
  const auto br = surface_brackets(spec, rho_r1, r1, M, controls);
  if (br.empty()) throw Error(ErrorKind::NoRoot, "surface relation has no root on the search bracket");
  if (br.size() > 1) throw Error(ErrorKind::MultipleRoots, "surface relation brackets:" + describe(br));
  const double c = M / ((4.0 * pi / 3.0) * r1 * r1 * r1);
  auto f = [&](double K) { return spec.radial(rho_r1 / K, c / K); };
  return refine(f, br[0].first, br[0].second);
}

ShellCalibration KS_from_shell(const MaterialSpec& spec, double r0, double r1, double rho_r0, double rho_r1, double M,
                               const CalibrationControls& controls) {
  require_positive({r0, r1, rho_r1, M});
  if (rho_r0 < 0.0) throw Error(ErrorKind::DomainError, "rho(r0) must be non-negative");
  if (!(r0 < r1)) throw Error(ErrorKind::DomainError, "r0 < r1 required");
  const double p0 = spec.p0();

  auto residual = [&](double K, double S) -> std::array<double, 2> {
    const double eta0 = std::pow(S / r0, 3);
    const double eta1 = (S * S * S + 3.0 * M / (4.0 * pi * K)) / (r1 * r1 * r1);
    return {spec.radial(rho_r0 / K, eta0) / p0, spec.radial(rho_r1 / K, eta1) / p0};
  };
  auto norm = [](const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); };

  double K = rho_r1, S = r0 * (1.0 + 1e-3);
  auto res = residual(K, S);
  for (int it = 0; it < controls.max_iterations; ++it) {
    if (std::abs(res[0]) < 1e-12 && std::abs(res[1]) < 1e-12) return {K, S, {res[0] * p0, res[1] * p0}, it};
    const double hK = 1e-7 * K, hS = 1e-7 * S;
    const auto rKp = residual(K + hK, S), rKm = residual(K - hK, S);
    const auto rSp = residual(K, S + hS), rSm = residual(K, S - hS);
    const double j00 = (rKp[0] - rKm[0]) / (2 * hK), j10 = (rKp[1] - rKm[1]) / (2 * hK);
    const double j01 = (rSp[0] - rSm[0]) / (2 * hS), j11 = (rSp[1] - rSm[1]) / (2 * hS);
    const double det = j00 * j11 - j01 * j10;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
    const double dK = -(j11 * res[0] - j01 * res[1]) / det;
    const double dS = -(-j10 * res[0] + j00 * res[1]) / det;
    double t = 1.0;
    bool moved = false;
    while (t >= controls.damping_floor) {
      const double Kn = K + t * dK, Sn = S + t * dS;
      if (Kn > 0.0 && Sn > 0.0) {
        const auto rn = residual(Kn, Sn);
        if (std::isfinite(norm(rn)) && norm(rn) < norm(res)) {
          K = Kn;
          S = Sn;
          res = rn;
          moved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!moved) {
      if (std::abs(res[0]) < 1e-12 && std::abs(res[1]) < 1e-12) break;
      if (norm(res) < 1e-13) break;  // already at rounding level
      std::ostringstream os;
      os << "damping floor reached with residuals " << res[0] * p0 << ", " << res[1] * p0;
      throw Error(ErrorKind::NoConvergence, os.str());
    }
  }
  if (std::abs(res[0]) < 1e-12 && std::abs(res[1]) < 1e-12) {
    return {K, S, {res[0] * p0, res[1] * p0}, controls.max_iterations};
  }
  std::ostringstream os;
  os << "no convergence, final residuals " << res[0] * p0 << ", " << res[1] * p0;
  throw Error(ErrorKind::NoConvergence, os.str());
}

}  // namespace selfgrav
