#pragma once

// Dormand-Prince 5(4) with its 4th-order continuous extension and sign-change
// event location on the interpolant.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "selfgrav/profile.hpp"

namespace selfgrav {

struct Dopri5Controls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double r_stop = 0.0;
  std::size_t max_steps = 200000;
  /// 0 selects 1e-3 * r_start
  double initial_step = 0.0;
};

/// Returns false when the state is outside the domain of the right-hand side.
using Rhs3 = std::function<bool(double r, const State3& y, State3& dydr)>;

/// Event g(r, y): integration stops at the first crossing from g > 0 to g <= 0.
struct Event3 {
  std::function<double(double r, const State3& y)> g;
  /// accept the refined root when |g| < tolerance (relative bracket < 1e-12 otherwise)
  double tolerance = 0.0;
};

struct Dopri5Result {
  std::vector<double> r;
  std::vector<State3> y;
  std::vector<DenseSegment> dense;
  TerminationInfo termination;
  std::size_t rejected = 0;
};

Dopri5Result dopri5(const Rhs3& rhs, double r0, const State3& y0, const Dopri5Controls& controls,
                    const std::optional<Event3>& event = std::nullopt);

}  // namespace selfgrav
