#include "selfgrav/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "selfgrav/errors.hpp"

namespace selfgrav {

namespace {

void require_positive(double delta, double eta) {
  if (!(delta > 0.0) || !(eta > 0.0)) {
    throw Error(ErrorKind::DomainError, "constitutive arguments must be positive (delta=" + std::to_string(delta) +
                                            ", eta=" + std::to_string(eta) + ")");
  }
}

double rel_dev(double value, double reference, double scale) {
  return std::abs(value - reference) / std::max(std::abs(reference), scale);
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Seth:
      return "seth";
    case Family::SaintVenantKirchhoff:
      return "svk";
    case Family::SignoriniQuasiLinear:
      return "signorini";
    case Family::Hadamard:
      return "hadamard";
    case Family::LinearConstitutive:
      return "linear";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::Seth, Family::SaintVenantKirchhoff, Family::SignoriniQuasiLinear, Family::Hadamard,
                   Family::LinearConstitutive}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorKind::InvalidMaterial, "unknown material family '" + std::string(name) + "'");
}

MaterialSpec::MaterialSpec(Family family, LameCoefficients lame, std::optional<HadamardParams> hadamard)
    : family_(family), lame_(lame) {
  const double l = lame.lambda;
  const double m = lame.mu;
  if (!std::isfinite(l) || !std::isfinite(m) || !(m > 0.0)) {
    throw Error(ErrorKind::InvalidMaterial, "Lame coefficient mu must be positive and finite");
  }
  if (family == Family::SignoriniQuasiLinear) {
    if (!(9.0 * l + 5.0 * m > 0.0)) throw Error(ErrorKind::InvalidMaterial, "Signorini requires 9*lambda + 5*mu > 0");
  } else if (!(3.0 * l + 2.0 * m > 0.0)) {
    throw Error(ErrorKind::InvalidMaterial, "requires 3*lambda + 2*mu > 0");
  }

  if (family != Family::Hadamard) {
    if (hadamard) throw Error(ErrorKind::InvalidMaterial, "Hadamard parameters given for a non-Hadamard family");
    return;
  }

  HadamardParams hp = hadamard ? *hadamard : HadamardParams{m / 2.0, m / 2.0, {}};
  if (std::abs(hp.alpha + hp.beta - m) > 1e-12 * m) {
    throw Error(ErrorKind::InvalidMaterial, "Hadamard requires alpha + beta = mu");
  }
  const double h1_target = -(hp.alpha + 2.0 * hp.beta);
  const double h2_target = (l + 2.0 * m) / 2.0;
  if (hp.h_coeffs.empty()) {
    hp.h_coeffs = {h1_target, h2_target / 2.0};
  } else {
    const double c1 = hp.h_coeffs[0];
    const double c2 = hp.h_coeffs.size() > 1 ? hp.h_coeffs[1] : 0.0;
    const double scale = std::max({std::abs(h1_target), std::abs(h2_target), m});
    if (std::abs(c1 - h1_target) > 1e-12 * scale || std::abs(2.0 * c2 - h2_target) > 1e-12 * scale) {
      throw Error(ErrorKind::InvalidMaterial, "Hadamard h must satisfy h'(1) = -(alpha+2 beta), h''(1) = (lambda+2 mu)/2");
    }
  }
  hadamard_ = std::move(hp);
}

double MaterialSpec::p0() const {
  const double l = lame_.lambda;
  const double m = lame_.mu;
  switch (family_) {
    case Family::Seth:
      return (3.0 * l + 2.0 * m) / 2.0;
    case Family::SignoriniQuasiLinear:
      return (9.0 * l + 5.0 * m) / 8.0;
    case Family::LinearConstitutive:
      return (3.0 * l + 2.0 * m) / 3.0;
    case Family::SaintVenantKirchhoff:
    case Family::Hadamard:
      // no additive constant in these closed forms; the Hooke bulk scale is used instead
      return (3.0 * l + 2.0 * m) / 3.0;
  }
  return 0.0;
}

// h and derivatives, Horner in (s - 1)
double MaterialSpec::h(double s) const {
  const auto& c = hadamard_->h_coeffs;
  const double t = s - 1.0;
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc + *it) * t;
  return acc;
}

double MaterialSpec::h1(double s) const {
  const auto& c = hadamard_->h_coeffs;
  const double t = s - 1.0;
  double acc = 0.0;
  for (std::size_t k = c.size(); k >= 1; --k) acc = acc * t + static_cast<double>(k) * c[k - 1];
  return acc;
}

double MaterialSpec::h2(double s) const {
  const auto& c = hadamard_->h_coeffs;
  const double t = s - 1.0;
  double acc = 0.0;
  for (std::size_t k = c.size(); k >= 2; --k) acc = acc * t + static_cast<double>(k * (k - 1)) * c[k - 1];
  return acc;
}

double MaterialSpec::radial(double d, double e) const {
  const double l = lame_.lambda;
  const double m = lame_.mu;
  switch (family_) {
    case Family::Seth:
      return l * std::cbrt(e * e) + 0.5 * (l + 2.0 * m) * d * d / std::cbrt(e * e * e * e) - p0();
    case Family::SaintVenantKirchhoff: {
      const double e23 = std::cbrt(e * e);
      const double a = e23 * e23 / d;            // eta^{4/3} / delta
      const double b = a * a / d;                // eta^{8/3} / delta^3
      const double c = e23 / d;                  // eta^{2/3} / delta
      return m * (a - b) + 0.5 * l * (3.0 * a - b - 2.0 * c);
    }
    case Family::SignoriniQuasiLinear: {
      const double q = d / e;
      const double q2 = q * q;
      const double e23 = std::cbrt(e * e);
      return (l + m) / 8.0 * e23 * e23 * (3.0 * q2 * q2 + 4.0 * q2 - 4.0) + (3.0 * l + m) / 4.0 * e23 * (2.0 - q2) - p0();
    }
    case Family::Hadamard: {
      const auto& hp = *hadamard_;
      const double e23 = std::cbrt(e * e);
      return -(hp.alpha * e23 * e23 + 2.0 * hp.beta * e23 + h1(1.0 / (d * d))) / d;
    }
    case Family::LinearConstitutive:
      return (l + 2.0 * m) * d - 4.0 * m / 3.0 * e - p0();
  }
  return 0.0;
}

double MaterialSpec::tangential(double d, double e) const {
  const double l = lame_.lambda;
  const double m = lame_.mu;
  switch (family_) {
    case Family::Seth:
      return (l + m) * std::cbrt(e * e) + 0.5 * l * d * d / std::cbrt(e * e * e * e) - p0();
    case Family::SaintVenantKirchhoff: {
      const double em23 = 1.0 / std::cbrt(e * e);
      return m * d * em23 * (1.0 - em23) + 0.5 * l * d * em23 * (3.0 - 2.0 * em23 - std::cbrt(e * e * e * e) / (d * d));
    }
    case Family::SignoriniQuasiLinear: {
      const double q = d / e;
      const double q2 = q * q;
      const double e23 = std::cbrt(e * e);
      return (l + m) / 8.0 * e23 * e23 * (4.0 - q2 * q2) + (3.0 * l + m) / 4.0 * d * d / (e23 * e23) - p0();
    }
    case Family::Hadamard: {
      const auto& hp = *hadamard_;
      const double q2 = (d / e) * (d / e);
      const double e23 = std::cbrt(e * e);
      return -(hp.alpha * e23 * e23 * q2 + hp.beta * e23 * (1.0 + q2) + h1(1.0 / (d * d))) / d;
    }
    case Family::LinearConstitutive:
      return l * d + 2.0 * m / 3.0 * e - p0();
  }
  return 0.0;
}

double MaterialSpec::d_radial_d_delta(double d, double e) const {
  const double l = lame_.lambda;
  const double m = lame_.mu;
  switch (family_) {
    case Family::Seth:
      return (l + 2.0 * m) * d / std::cbrt(e * e * e * e);
    case Family::SaintVenantKirchhoff: {
      const double e23 = std::cbrt(e * e);
      const double a = e23 * e23 / d;
      const double b = a * a / d;
      const double c = e23 / d;
      return (m * (-a + 3.0 * b) + 0.5 * l * (-3.0 * a + 3.0 * b + 2.0 * c)) / d;
    }
    case Family::SignoriniQuasiLinear: {
      const double e23 = std::cbrt(e * e);
      const double e43 = e23 * e23;
      return (l + m) / 8.0 * (12.0 * d * d * d / (e43 * e43) + 8.0 * d / e23) - (3.0 * l + m) / 2.0 * d / e43;
    }
    case Family::Hadamard: {
      const auto& hp = *hadamard_;
      const double e23 = std::cbrt(e * e);
      const double s = 1.0 / (d * d);
      return (hp.alpha * e23 * e23 + 2.0 * hp.beta * e23 + h1(s)) * s + 2.0 * h2(s) * s * s;
    }
    case Family::LinearConstitutive:
      return l + 2.0 * m;
  }
  return 0.0;
}

double MaterialSpec::d_radial_d_eta(double d, double e) const {
  const double l = lame_.lambda;
  const double m = lame_.mu;
  switch (family_) {
    case Family::Seth: {
      const double e13 = std::cbrt(e);
      return 2.0 / 3.0 * l / e13 - 2.0 / 3.0 * (l + 2.0 * m) * d * d / (e * e * e13);
    }
    case Family::SaintVenantKirchhoff: {
      const double e23 = std::cbrt(e * e);
      const double a = e23 * e23 / d;
      const double b = a * a / d;
      const double c = e23 / d;
      return (m * (4.0 / 3.0 * a - 8.0 / 3.0 * b) + 0.5 * l * (4.0 * a - 8.0 / 3.0 * b - 4.0 / 3.0 * c)) / e;
    }
    case Family::SignoriniQuasiLinear: {
      const double e13 = std::cbrt(e);
      const double d2 = d * d;
      return (l + m) / 8.0 * (-8.0 * d2 * d2 / (e * e * e * e13 * e13) - 8.0 / 3.0 * d2 / (e * e13 * e13) - 16.0 / 3.0 * e13) +
             (3.0 * l + m) / 4.0 * (4.0 / 3.0 / e13 + 4.0 / 3.0 * d2 / (e * e * e13));
    }
    case Family::Hadamard: {
      const auto& hp = *hadamard_;
      const double e13 = std::cbrt(e);
      return -(4.0 / 3.0 * hp.alpha * e13 + 4.0 / 3.0 * hp.beta / e13) / d;
    }
    case Family::LinearConstitutive:
      return -4.0 * m / 3.0;
  }
  return 0.0;
}

double MaterialSpec::energy(double d, double e) const {
  const double l = lame_.lambda;
  const double m = lame_.mu;
  switch (family_) {
    case Family::Seth:
      throw Error(ErrorKind::NotHyperelastic, "the Seth model has no stored energy");
    case Family::SaintVenantKirchhoff: {
      const double e23 = std::cbrt(e * e);
      const double i1 = e23 * e23 / (d * d) + 2.0 / e23 - 3.0;
      const double i2 = 2.0 * e23 / (d * d) + 1.0 / (e23 * e23) - 3.0;
      return 0.125 * i1 * i1 * (l + 2.0 * m) + m * i1 - 0.5 * m * i2;
    }
    case Family::SignoriniQuasiLinear: {
      const double e23 = std::cbrt(e * e);
      const double t = d * d / (e23 * e23) + 2.0 * e23;
      return (0.125 * (t - 3.0) * (t - 3.0) * (l + m) + 0.5 * m * (t - 1.0)) / d - m;
    }
    case Family::Hadamard: {
      const auto& hp = *hadamard_;
      const double e23 = std::cbrt(e * e);
      const double i1 = e23 * e23 / (d * d) + 2.0 / e23 - 3.0;
      const double i2 = 2.0 * e23 / (d * d) + 1.0 / (e23 * e23) - 3.0;
      return 0.5 * (hp.alpha * i1 + hp.beta * i2 + h(1.0 / (d * d)) - h(1.0));
    }
    case Family::LinearConstitutive:
      return (l + 2.0 * m) * std::log(d) - 4.0 * m / 3.0 * std::log(e) + 4.0 * m / 3.0 * e / d +
             (3.0 * l + 2.0 * m) / (3.0 * d) - l - 2.0 * m;
  }
  return 0.0;
}

double p_rad_hat(const MaterialSpec& spec, double delta, double eta) {
  require_positive(delta, eta);
  return spec.radial(delta, eta);
}

double p_tan_hat(const MaterialSpec& spec, double delta, double eta) {
  require_positive(delta, eta);
  return spec.tangential(delta, eta);
}

double stored_energy(const MaterialSpec& spec, double delta, double eta) {
  if (!spec.hyperelastic()) throw Error(ErrorKind::NotHyperelastic, "the Seth model has no stored energy");
  require_positive(delta, eta);
  return spec.energy(delta, eta);
}

ValidationReport validate_material(const MaterialSpec& spec, double fd_step) {
  if (!(fd_step > 0.0) || fd_step > 1e-3) throw Error(ErrorKind::DomainError, "fd_step must lie in (0, 1e-3]");
  const double l = spec.lame().lambda;
  const double m = spec.lame().mu;
  const double h = fd_step;

  ValidationReport rep;
  rep.fd_step = h;
  rep.p_rad_at_unit = std::abs(spec.radial(1.0, 1.0));
  rep.p_tan_at_unit = std::abs(spec.tangential(1.0, 1.0));

  rep.hooke_fd = {
      (spec.radial(1.0 + h, 1.0) - spec.radial(1.0 - h, 1.0)) / (2.0 * h),
      (spec.radial(1.0, 1.0 + h) - spec.radial(1.0, 1.0 - h)) / (2.0 * h),
      (spec.tangential(1.0 + h, 1.0) - spec.tangential(1.0 - h, 1.0)) / (2.0 * h),
      (spec.tangential(1.0, 1.0 + h) - spec.tangential(1.0, 1.0 - h)) / (2.0 * h),
  };
  rep.hooke_expected = {l + 2.0 * m, -4.0 * m / 3.0, l, 2.0 * m / 3.0};
  double matrix_scale = 0.0;
  for (double v : rep.hooke_expected) matrix_scale = std::max(matrix_scale, std::abs(v));
  for (std::size_t i = 0; i < 4; ++i) {
    const double dev = std::abs(rep.hooke_fd[i] - rep.hooke_expected[i]);
    rep.hooke_max_abs_deviation = std::max(rep.hooke_max_abs_deviation, dev);
    rep.hooke_max_rel_deviation = std::max(rep.hooke_max_rel_deviation, dev / matrix_scale);
  }

  for (double d : kIsotropyGrid) {
    rep.diagonal_isotropy = std::max(rep.diagonal_isotropy, std::abs(spec.radial(d, d) - spec.tangential(d, d)));
  }

  if (spec.hyperelastic()) {
    const double scale = spec.p0();
    double dev_r = 0.0;
    double dev_t = 0.0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const double d = 0.5 + 0.375 * i;
        const double e = 0.5 + 0.375 * j;
        const double wd = (spec.energy(d * (1.0 + h), e) - spec.energy(d * (1.0 - h), e)) / (2.0 * h * d);
        const double we = (spec.energy(d, e * (1.0 + h)) - spec.energy(d, e * (1.0 - h))) / (2.0 * h * e);
        const double pr = d * d * wd;
        const double pt = pr + 1.5 * d * e * we;
        dev_r = std::max(dev_r, rel_dev(pr, spec.radial(d, e), scale));
        dev_t = std::max(dev_t, rel_dev(pt, spec.tangential(d, e), scale));
      }
    }
    rep.energy_radial_deviation = dev_r;
    rep.energy_tangential_deviation = dev_t;
  }
  return rep;
}

double seth_eta_bound(const LameCoefficients& lame) {
  const double ratio = (3.0 * lame.lambda + 2.0 * lame.mu) / (2.0 * lame.lambda);
  return ratio * std::sqrt(ratio);
}

double zero_pressure_delta_seth(const LameCoefficients& lame, double eta) {
  const double l = lame.lambda;
  const double m = lame.mu;
  if (!(l > 0.0)) throw Error(ErrorKind::DomainError, "zero-pressure density requires lambda > 0");
  if (!(eta > 0.0)) throw Error(ErrorKind::DomainError, "eta must be positive");
  const double ratio = (3.0 * l + 2.0 * m) / (2.0 * l);
  const double e23 = std::cbrt(eta * eta);
  double radicand = ratio - e23;
  // a few ulps below zero is the bound itself
  if (std::abs(radicand) <= 16.0 * std::numeric_limits<double>::epsilon() * ratio) radicand = 0.0;
  if (radicand < 0.0) {
    throw Error(ErrorKind::DomainError, "eta exceeds the zero-pressure bound ((3l+2m)/(2l))^{3/2}");
  }
  return e23 * std::sqrt(2.0 * l / (l + 2.0 * m)) * std::sqrt(radicand);
}

}  // namespace selfgrav
