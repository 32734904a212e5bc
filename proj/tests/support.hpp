#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "selfgrav/materials.hpp"

namespace testing {

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline const std::vector<selfgrav::Family>& all_families() {
  static const std::vector<selfgrav::Family> f{selfgrav::Family::Seth, selfgrav::Family::SaintVenantKirchhoff,
                                               selfgrav::Family::SignoriniQuasiLinear, selfgrav::Family::Hadamard,
                                               selfgrav::Family::LinearConstitutive};
  return f;
}

/// Admissible (lambda, mu) for the family: mu in [0.1, 5], lambda above the family's lower limit.
inline selfgrav::LameCoefficients random_lame(std::mt19937_64& rng, selfgrav::Family f) {
  std::uniform_real_distribution<double> mu_d(0.1, 5.0);
  const double mu = mu_d(rng);
  const double lo = f == selfgrav::Family::SignoriniQuasiLinear ? -5.0 * mu / 9.0 : -2.0 * mu / 3.0;
  std::uniform_real_distribution<double> l_d(0.95 * lo, 5.0);
  return {l_d(rng), mu};
}

/// Seth parameters with lambda > 0 (needed by shells and the zero-pressure relation).
inline selfgrav::LameCoefficients random_seth_positive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.1, 5.0);
  return {d(rng), d(rng)};
}

}  // namespace testing
