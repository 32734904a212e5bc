#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "selfgrav/bodies.hpp"
#include "selfgrav/calibration.hpp"
#include "selfgrav/materials.hpp"
#include "selfgrav/seth.hpp"

namespace selfgrav {

using nlohmann::json;

/// %.17g
std::string format_double(double x);

/// Header r,delta,eta,m,rho,p_rad,p_tan; one row per sample.
void write_profile_csv(std::ostream& os, const SolutionProfile& profile);
/// Profiles of all bodies with a leading body column.
void write_distribution_csv(std::ostream& os, const MatterDistribution& dist);
/// Header xi,u,y,z.
void write_phase_csv(std::ostream& os, const std::vector<PhaseRow>& rows);

// Config parsing. All failures raise Error(ConfigError) except material
// admissibility, which raises InvalidMaterial.
MaterialSpec material_from_json(const json& j);
IntegrationControls controls_from_json(const json& j);
Observables observables_from_json(const json& j);

json to_json(const MaterialSpec& spec);
json to_json(const ValidationReport& r);
json to_json(const BoundsReport& b);
json to_json(const Body& b, std::size_t index);
json to_json(const MatterDistribution& d);
json to_json(const VerificationReport& r);
json to_json(const FixedPoint& p);

}  // namespace selfgrav
