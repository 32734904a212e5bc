#include "selfgrav/cli.hpp"

#include <cmath>
#include <numbers>
#include <fstream>
#include <ostream>

#include "selfgrav/errors.hpp"

namespace selfgrav {

namespace fs = std::filesystem;

namespace {

struct Context {
  const json& config;
  fs::path out;
  std::ostream& log;
  IntegrationControls controls;
  json summary;
};

const json& materials(const json& config) {
  if (!config.contains("materials")) throw Error(ErrorKind::ConfigError, "missing 'materials'");
  const json& m = config.at("materials");
  if (m.is_object()) return m;
  if (!m.is_array() || m.empty()) throw Error(ErrorKind::ConfigError, "'materials' must be a non-empty array");
  return m;
}

const json& first_material(const json& config) {
  const json& m = materials(config);
  return m.is_array() ? m.at(0) : m;
}

double field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::ConfigError, std::string("material block needs numeric '") + key + "'");
  }
  return j.at(key).get<double>();
}

double control(const json& config, const char* key, double fallback) {
  if (!config.contains("controls") || !config.at("controls").contains(key)) return fallback;
  const auto& v = config.at("controls").at(key);
  if (!v.is_number()) throw Error(ErrorKind::ConfigError, std::string("control '") + key + "' must be a number");
  return v.get<double>();
}

std::string output_name(const json& config, const char* key, const char* fallback) {
  if (config.contains("output") && config.at("output").is_object() && config.at("output").contains(key)) {
    return config.at("output").at(key).get<std::string>();
  }
  return fallback;
}

std::ofstream open(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + p.string());
  return f;
}

LameCoefficients seth_lame(const json& j) {
  const auto spec = material_from_json(j);
  if (spec.family() != Family::Seth) throw Error(ErrorKind::ConfigError, "this command needs a seth material");
  return spec.lame();
}

double inner_radius(const json& j, const LameCoefficients& lame, double S) {
  if (!j.contains("r0") || (j.at("r0").is_string() && j.at("r0").get<std::string>() == "min")) {
    return shell_r_min(lame, S);
  }
  return field(j, "r0");
}

MatterDistribution assemble(Context& c) {
  const json& m = materials(c.config);
  const json list = m.is_array() ? m : json::array({m});
  const json& head = list.at(0);
  std::optional<MatterDistribution> dist;
  if (head.contains("rho_c")) {
    dist.emplace(build_ball(material_from_json(head), field(head, "K"), field(head, "rho_c"), c.controls));
  } else {
    const auto lame = seth_lame(head);
    const double S = field(head, "S");
    dist.emplace(build_inner_shell(lame, field(head, "K"), S, inner_radius(head, lame, S), c.controls));
  }
  for (std::size_t i = 1; i < list.size(); ++i) {
    const json& b = list.at(i);
    const auto lame = seth_lame(b);
    double S = 0.0;
    if (b.contains("S")) {
      S = field(b, "S");
    } else {
      const double factor = b.contains("S_factor") ? field(b, "S_factor") : 1.05;
      S = recursive_shell_S(lame, dist->outer_radius(), factor);
    }
    dist = add_shell(*dist, lame, field(b, "K"), S, inner_radius(b, lame, S), c.controls);
  }
  return *dist;
}

void cmd_ball(Context& c) {
  const json& j = first_material(c.config);
  const auto spec = material_from_json(j);
  const double K = field(j, "K");
  const auto body = build_ball(spec, K, field(j, "rho_c"), c.controls);
  auto f = open(c.out / output_name(c.config, "profile", "profile.csv"));
  write_profile_csv(f, body.profile);
  c.summary["body"] = to_json(body, 0);
  c.summary["r1"] = body.r_end;
  c.summary["M"] = body.total_mass;
  c.log << "ball: r1 = " << format_double(body.r_end) << ", M = " << format_double(body.total_mass) << '\n';
}

void cmd_shell(Context& c) {
  const json& j = first_material(c.config);
  const auto lame = seth_lame(j);
  const double S = field(j, "S");
  const auto body = build_inner_shell(lame, field(j, "K"), S, inner_radius(j, lame, S), c.controls);
  auto f = open(c.out / output_name(c.config, "profile", "profile.csv"));
  write_profile_csv(f, body.profile);
  c.summary["body"] = to_json(body, 0);
  c.summary["r0"] = body.r_start;
  c.summary["r1"] = body.r_end;
  c.summary["M"] = body.total_mass;
  c.log << "shell: r0 = " << format_double(body.r_start) << ", r1 = " << format_double(body.r_end)
        << ", M = " << format_double(body.total_mass) << '\n';
}

// multibody and verify
bool cmd_distribution(Context& c) {
  const auto dist = assemble(c);
  auto f = open(c.out / output_name(c.config, "profile", "profile.csv"));
  write_distribution_csv(f, dist);
  const auto rep = verify_distribution(dist, control(c.config, "verify_tol", 1e-8));
  c.summary["distribution"] = to_json(dist);
  c.summary["verification"] = to_json(rep);
  c.log << "distribution: " << dist.bodies().size() << " bodies, M = " << format_double(dist.total_mass())
        << ", verification " << (rep.passed() ? "passed" : "failed") << '\n';
  return rep.passed();
}

void cmd_validate(Context& c) {
  const json& m = materials(c.config);
  const json list = m.is_array() ? m : json::array({m});
  const double h = control(c.config, "fd_step", 1e-5);
  json reports = json::array();
  c.log << "family      |p(1,1)|     hooke_rel    isotropy     energy_dev\n";
  for (const auto& j : list) {
    const auto spec = material_from_json(j);
    const auto r = validate_material(spec, h);
    json e = to_json(r);
    e["material"] = to_json(spec);
    reports.push_back(e);
    char line[160];
    const double ed = std::max(r.energy_radial_deviation.value_or(0.0), r.energy_tangential_deviation.value_or(0.0));
    std::snprintf(line, sizeof line, "%-11s %-12.3e %-12.3e %-12.3e %s\n", std::string(family_name(spec.family())).c_str(),
                  std::max(std::abs(r.p_rad_at_unit), std::abs(r.p_tan_at_unit)), r.hooke_max_rel_deviation,
                  r.diagonal_isotropy, spec.hyperelastic() ? std::to_string(ed).c_str() : "n/a");
    c.log << line;
  }
  c.summary["validation"] = reports;
}

void cmd_selfsimilar(Context& c) {
  const json& j = first_material(c.config);
  const auto lame = seth_lame(j);
  const double K = field(j, "K");
  const auto an = SethAnalysis::make(lame, K);
  std::vector<double> radii;
  if (c.config.contains("controls") && c.config.at("controls").contains("radii")) {
    radii = c.config.at("controls").at("radii").get<std::vector<double>>();
  } else {
    for (int i = 0; i < 50; ++i) radii.push_back(0.1 * std::pow(100.0, i / 49.0) / an.theta_len);
  }
  auto f = open(c.out / output_name(c.config, "profile", "selfsimilar.csv"));
  f << "r,delta,eta,m,p_rad,p_tan\n";
  for (double r : radii) {
    const auto v = self_similar(lame, K, r);
    f << format_double(r) << ',' << format_double(v.delta) << ',' << format_double(v.eta) << ','
      << format_double(v.m) << ',' << format_double(v.p_rad) << ',' << format_double(v.p_tan) << '\n';
  }
  c.summary["analysis"] = {{"a", an.a},         {"b", an.b},           {"theta_len", an.theta_len},
                           {"c", an.c_const},   {"R_star", an.R_star}, {"u_P", an.u_P},
                           {"y_P", an.y_P},     {"p0", an.p0()}};
  c.log << "self-similar: c = " << format_double(an.c_const) << ", R = " << format_double(an.R_star) << '\n';
}

void cmd_phase(Context& c) {
  const auto lame = seth_lame(first_material(c.config));
  const auto ab = material_constants_ab(lame);
  const auto fp = fixed_points(ab.a, ab.b);
  std::vector<State3> seeds;
  if (c.config.contains("controls") && c.config.at("controls").contains("seeds")) {
    for (const auto& s : c.config.at("controls").at("seeds")) seeds.push_back(s.get<State3>());
  } else {
    seeds = {{1e-3, 1.0 - 1e-3, 1.0}, {0.5, 0.2, 1.0}, {2.5, 0.8, 1.0}, {0.2, 0.9, 0.5}};
  }
  const double xi_end = control(c.config, "xi_end", 20.0);
  json orbits = json::array();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto rows = phase_orbit(ab.a, ab.b, seeds[i], xi_end);
    const auto name = "phase_" + std::to_string(i) + ".csv";
    auto f = open(c.out / name);
    write_phase_csv(f, rows);
    orbits.push_back({{"seed", seeds[i]}, {"file", name}, {"final", {rows.back().u, rows.back().y, rows.back().z}}});
  }
  c.summary["a"] = ab.a;
  c.summary["b"] = ab.b;
  c.summary["P"] = to_json(fp.P);
  c.summary["Q"] = to_json(fp.Q);
  c.summary["orbits"] = orbits;
  c.log << "phase: P = (" << format_double(fp.P.u) << ", 0.5) " << to_string(fp.P.classification) << ", Q "
        << to_string(fp.Q.classification) << '\n';
}

void cmd_calibrate(Context& c) {
  const auto spec = material_from_json(first_material(c.config));
  const auto obs = observables_from_json(c.config.value("observables", json()));
  json out = json::object();
  if (obs.rho_c && obs.p_c) {
    const double K = K_from_central(spec, *obs.rho_c, *obs.p_c);
    const double d = *obs.rho_c / K;
    out["central"] = {{"K", K}, {"residual", spec.radial(d, d) - *obs.p_c}};
  }
  if (obs.r0 && obs.r1 && obs.rho_r0 && obs.rho_r1 && obs.M) {
    const auto r = KS_from_shell(spec, *obs.r0, *obs.r1, *obs.rho_r0, *obs.rho_r1, *obs.M);
    out["shell"] = {{"K", r.K}, {"S", r.S}, {"residuals", r.residuals}, {"iterations", r.iterations}};
  } else if (obs.r1 && obs.rho_r1 && obs.M) {
    const double K = K_from_surface(spec, *obs.rho_r1, *obs.r1, *obs.M);
    const double eta = *obs.M / ((4.0 * std::numbers::pi / 3.0) * K * std::pow(*obs.r1, 3));
    out["surface"] = {{"K", K}, {"residual", spec.radial(*obs.rho_r1 / K, eta)}};
  }
  if (out.empty()) throw Error(ErrorKind::ConfigError, "observables do not determine any calibration");
  c.summary["calibration"] = out;
  c.log << "calibration: " << out.dump() << '\n';
}

}  // namespace

RunOutcome run(const json& config, const fs::path& out_dir, std::ostream& log) {
  RunOutcome res;
  res.summary = json::object();
  try {
    if (!config.is_object() || !config.contains("command") || !config.at("command").is_string()) {
      throw Error(ErrorKind::ConfigError, "config needs a string 'command'");
    }
    const auto cmd = config.at("command").get<std::string>();
    res.summary["command"] = cmd;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::ConfigError, "cannot create " + out_dir.string());
    Context c{config, out_dir, log, controls_from_json(config.value("controls", json())), json::object()};
    bool ok = true;
    if (cmd == "ball") {
      cmd_ball(c);
    } else if (cmd == "shell") {
      cmd_shell(c);
    } else if (cmd == "multibody" || cmd == "verify") {
      ok = cmd_distribution(c);
    } else if (cmd == "validate-material") {
      cmd_validate(c);
    } else if (cmd == "selfsimilar") {
      cmd_selfsimilar(c);
    } else if (cmd == "phase") {
      cmd_phase(c);
    } else if (cmd == "calibrate") {
      cmd_calibrate(c);
    } else {
      throw Error(ErrorKind::ConfigError, "unknown command '" + cmd + "'");
    }
    res.summary.update(c.summary);
    res.summary["status"] = ok ? "ok" : "verification-failed";
    res.exit_code = ok ? 0 : 4;
  } catch (const Error& e) {
    res.exit_code = exit_code(e.kind());
    res.summary["status"] = "error";
    res.summary["error_kind"] = to_string(e.kind());
    res.summary["message"] = e.what();
    log << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    res.exit_code = 1;
    res.summary["status"] = "error";
    res.summary["error_kind"] = "ConfigError";
    res.summary["message"] = e.what();
    log << "error: " << e.what() << '\n';
  }
  std::ofstream f(out_dir / output_name(config.is_object() ? config : json::object(), "summary", "summary.json"));
  if (f) f << res.summary.dump(2) << '\n';
  return res;
}

}  // namespace selfgrav
