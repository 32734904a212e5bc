#include "selfgrav/io.hpp"

#include <cstdio>
#include <ostream>

#include "selfgrav/errors.hpp"

namespace selfgrav {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_row(std::ostream& os, const SolutionProfile& p, const EquilibriumState& s) {
  const auto f = p.fields(s);
  os << format_double(s.r) << ',' << format_double(s.delta) << ',' << format_double(s.eta) << ','
     << format_double(s.m) << ',' << format_double(f.rho) << ',' << format_double(f.p_rad) << ','
     << format_double(f.p_tan) << '\n';
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ConfigError, std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) throw Error(ErrorKind::ConfigError, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

template <class T>
void optional_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::ConfigError, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

void write_profile_csv(std::ostream& os, const SolutionProfile& profile) {
  os << "r,delta,eta,m,rho,p_rad,p_tan\n";
  for (const auto& s : profile.samples()) write_row(os, profile, s);
}

void write_distribution_csv(std::ostream& os, const MatterDistribution& dist) {
  os << "body,r,delta,eta,m,rho,p_rad,p_tan\n";
  for (std::size_t j = 0; j < dist.bodies().size(); ++j) {
    const auto& p = dist.bodies()[j].profile;
    for (const auto& s : p.samples()) {
      os << j << ',';
      write_row(os, p, s);
    }
  }
}

void write_phase_csv(std::ostream& os, const std::vector<PhaseRow>& rows) {
  os << "xi,u,y,z\n";
  for (const auto& r : rows) {
    os << format_double(r.xi) << ',' << format_double(r.u) << ',' << format_double(r.y) << ',' << format_double(r.z)
       << '\n';
  }
}

MaterialSpec material_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "material block must be an object");
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw Error(ErrorKind::ConfigError, "material block needs a string 'family'");
  }
  Family fam;
  try {
    fam = parse_family(j.at("family").get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
  const LameCoefficients lame{number(j, "lambda"), number(j, "mu")};
  std::optional<HadamardParams> hp;
  if (j.contains("alpha") || j.contains("beta") || j.contains("h_coeffs")) {
    if (fam != Family::Hadamard && (j.contains("h_coeffs"))) {
      throw Error(ErrorKind::ConfigError, "h_coeffs only applies to the hadamard family");
    }
    HadamardParams p{lame.mu / 2, lame.mu / 2, {}};
    optional_field(j, "alpha", p.alpha);
    optional_field(j, "beta", p.beta);
    optional_field(j, "h_coeffs", p.h_coeffs);
    if (!j.contains("beta")) p.beta = lame.mu - p.alpha;
    if (!j.contains("alpha")) p.alpha = lame.mu - p.beta;
    if (fam == Family::Hadamard) hp = p;
  }
  return MaterialSpec(fam, lame, hp);
}

IntegrationControls controls_from_json(const json& j) {
  IntegrationControls c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "controls must be an object");
  optional_field(j, "rel_tol", c.rel_tol);
  optional_field(j, "abs_tol", c.abs_tol);
  optional_field(j, "r_stop", c.r_stop);
  optional_field(j, "max_steps", c.max_steps);
  optional_field(j, "initial_step", c.initial_step);
  optional_field(j, "detect_pressure_zero", c.detect_pressure_zero);
  optional_field(j, "r_eps", c.r_eps);
  if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0)) throw Error(ErrorKind::ConfigError, "tolerances must be positive");
  return c;
}

Observables observables_from_json(const json& j) {
  Observables o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "observables must be an object");
  auto get = [&](const char* k, std::optional<double>& v) {
    if (j.contains(k)) v = number(j, k);
  };
  get("rho_c", o.rho_c);
  get("p_c", o.p_c);
  get("r0", o.r0);
  get("r1", o.r1);
  get("rho_r0", o.rho_r0);
  get("rho_r1", o.rho_r1);
  get("M", o.M);
  return o;
}

json to_json(const MaterialSpec& spec) {
  json j{{"family", family_name(spec.family())}, {"lambda", spec.lame().lambda}, {"mu", spec.lame().mu}};
  if (const auto& hp = spec.hadamard_params()) {
    j["alpha"] = hp->alpha;
    j["beta"] = hp->beta;
    j["h_coeffs"] = hp->h_coeffs;
  }
  return j;
}

json to_json(const ValidationReport& r) {
  json j{{"fd_step", r.fd_step},
         {"p_rad_at_unit", r.p_rad_at_unit},
         {"p_tan_at_unit", r.p_tan_at_unit},
         {"hooke_fd", r.hooke_fd},
         {"hooke_expected", r.hooke_expected},
         {"hooke_max_abs_deviation", r.hooke_max_abs_deviation},
         {"hooke_max_rel_deviation", r.hooke_max_rel_deviation},
         {"diagonal_isotropy", r.diagonal_isotropy}};
  if (r.energy_radial_deviation) j["energy_radial_deviation"] = *r.energy_radial_deviation;
  if (r.energy_tangential_deviation) j["energy_tangential_deviation"] = *r.energy_tangential_deviation;
  return j;
}

json to_json(const BoundsReport& b) {
  json j{{"lower", b.lower}, {"r_end", b.r_end}, {"upper", b.upper}, {"lower_ok", b.lower_ok},
         {"upper_ok", b.upper_ok}};
  if (b.mass_bound) {
    j["mass_bound"] = *b.mass_bound;
    j["mass_ok"] = b.mass_ok;
  }
  return j;
}

json to_json(const Body& b, std::size_t index) {
  json j = to_json(b.material);
  j["index"] = index;
  j["kind"] = b.kind == BodyKind::Ball ? "ball" : "shell";
  j["K"] = b.K;
  j["S"] = b.S ? json(*b.S) : json(nullptr);
  j["r_start"] = b.kind == BodyKind::Ball ? 0.0 : b.r_start;
  j["r_end"] = b.r_end;
  j["M"] = b.total_mass;
  j["rho_start"] = b.profile.fields(b.profile.front()).rho;
  j["rho_end"] = b.profile.fields(b.profile.back()).rho;
  j["samples"] = b.profile.samples().size();
  if (b.bounds) j["bounds"] = to_json(*b.bounds);
  return j;
}

json to_json(const MatterDistribution& d) {
  json bodies = json::array();
  for (std::size_t i = 0; i < d.bodies().size(); ++i) bodies.push_back(to_json(d.bodies()[i], i));
  return {{"core", d.core() == CoreType::NonVacuumCore ? "non-vacuum" : "vacuum"},
          {"bodies", bodies},
          {"M", d.total_mass()},
          {"interface_radii", d.interface_radii()}};
}

json to_json(const VerificationReport& r) {
  json j{{"passed", r.passed()},
         {"supports_ordered", r.supports_ordered},
         {"ode_satisfied", r.ode_satisfied},
         {"ode_residual", r.ode_residual},
         {"pressures_positive", r.pressures_positive},
         {"min_interior_pressure", r.min_interior_pressure},
         {"interface_zeros", r.interface_zeros},
         {"max_interface_pressure", r.max_interface_pressure},
         {"exterior_vanishing", r.exterior_vanishing},
         {"mass_additive", r.mass_additive},
         {"mass_additivity_residual", r.mass_additivity_residual},
         {"failures", r.failures}};
  if (r.center_condition) j["center_condition"] = *r.center_condition;
  if (r.vacuum_core) j["vacuum_core"] = *r.vacuum_core;
  return j;
}

json to_json(const FixedPoint& p) {
  json ev = json::array();
  for (const auto& e : p.eigenvalues) ev.push_back({e.real(), e.imag()});
  return {{"u", p.u},
          {"y", p.y},
          {"classification", to_string(p.classification)},
          {"eigenvalues", ev},
          {"z_eigenvalue", p.z_eigenvalue}};
}

}  // namespace selfgrav
