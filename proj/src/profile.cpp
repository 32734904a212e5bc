#include "selfgrav/profile.hpp"

#include <algorithm>
#include <cmath>

#include "selfgrav/errors.hpp"

namespace selfgrav {

DerivedFields derive_fields(const MaterialSpec& spec, double K, const EquilibriumState& s) {
  return {K * s.delta, spec.radial(s.delta, s.eta), spec.tangential(s.delta, s.eta)};
}

State3 DenseSegment::eval(double r) const {
  const double t = (r - r0) / h;
  const double t1 = 1.0 - t;
  State3 y{};
  for (std::size_t i = 0; i < 3; ++i) {
    y[i] = c[0][i] + t * (c[1][i] + t1 * (c[2][i] + t * (c[3][i] + t1 * c[4][i])));
  }
  return y;
}

State3 DenseSegment::derivative(double r) const {
  const double t = (r - r0) / h;
  const double t1 = 1.0 - t;
  State3 d{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double q = c[2][i] + t * (c[3][i] + t1 * c[4][i]);
    const double dq = c[3][i] + (1.0 - 2.0 * t) * c[4][i];
    const double p = c[1][i] + t1 * q;
    const double dp = -q + t1 * dq;
    d[i] = (p + t * dp) / h;
  }
  return d;
}

DenseSegment DenseSegment::hermite(double r0, double r1, const State3& y0, const State3& y1, const State3& f0,
                                   const State3& f1) {
  DenseSegment seg;
  seg.r0 = r0;
  seg.h = r1 - r0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double dy = y1[i] - y0[i];
    seg.c[0][i] = y0[i];
    seg.c[1][i] = dy;
    seg.c[2][i] = seg.h * f0[i] - dy;
    seg.c[3][i] = dy - seg.h * f1[i] - seg.c[2][i];
    seg.c[4][i] = 0.0;
  }
  return seg;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::PressureZero: return "PressureZero";
    case Termination::RadiusCutoff: return "RadiusCutoff";
    case Termination::SingularityGuard: return "SingularityGuard";
    case Termination::StepFailure: return "StepFailure";
  }
  return "Unknown";
}

SolutionProfile::SolutionProfile(MaterialSpec material, double K, std::optional<double> S,
                                 std::vector<EquilibriumState> samples, std::vector<DenseSegment> dense,
                                 TerminationInfo termination)
    : material_(std::move(material)),
      K_(K),
      S_(S),
      samples_(std::move(samples)),
      dense_(std::move(dense)),
      termination_(std::move(termination)) {
  if (samples_.empty()) throw Error(ErrorKind::DomainError, "profile needs at least one sample");
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].r > samples_[i - 1].r)) throw Error(ErrorKind::DomainError, "profile radii must increase");
  }
}

SolutionProfile SolutionProfile::from_samples(MaterialSpec material, double K, std::optional<double> S,
                                              std::vector<EquilibriumState> samples,
                                              const std::vector<State3>& derivatives, TerminationInfo termination) {
  if (derivatives.size() != samples.size()) throw Error(ErrorKind::DomainError, "one derivative per sample required");
  std::vector<DenseSegment> dense;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    dense.push_back(DenseSegment::hermite(a.r, b.r, {a.delta, a.eta, a.m}, {b.delta, b.eta, b.m}, derivatives[i],
                                          derivatives[i + 1]));
  }
  return SolutionProfile(std::move(material), K, S, std::move(samples), std::move(dense), std::move(termination));
}

const DenseSegment& SolutionProfile::segment(double r) const {
  if (r < r_begin() || r > r_end()) {
    throw Error(ErrorKind::DomainError, "radius " + std::to_string(r) + " outside the profile");
  }
  if (dense_.empty()) throw Error(ErrorKind::DomainError, "profile has no dense output");
  auto it = std::upper_bound(dense_.begin(), dense_.end(), r,
                             [](double x, const DenseSegment& s) { return x < s.r0; });
  return it == dense_.begin() ? *it : *(it - 1);
}

EquilibriumState SolutionProfile::state_at(double r) const {
  if (r == r_end()) return back();
  if (samples_.size() == 1 && r == r_begin()) return front();
  const State3 y = segment(r).eval(r);
  return {r, y[0], y[1], y[2]};
}

State3 SolutionProfile::derivative_at(double r) const { return segment(r).derivative(r); }

SolutionProfile SolutionProfile::truncated(double r_cut) const {
  if (!(r_cut > r_begin()) || r_cut > r_end()) throw Error(ErrorKind::DomainError, "truncation radius outside profile");
  std::vector<EquilibriumState> s;
  for (const auto& x : samples_) {
    if (x.r < r_cut) s.push_back(x);
  }
  s.push_back(state_at(r_cut));
  std::vector<DenseSegment> d;
  for (const auto& seg : dense_) {
    if (seg.r0 < r_cut) d.push_back(seg);
  }
  return SolutionProfile(material_, K_, S_, std::move(s), std::move(d),
                         {Termination::RadiusCutoff, r_cut, "truncated"});
}

}  // namespace selfgrav
