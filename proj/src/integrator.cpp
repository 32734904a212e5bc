#include "selfgrav/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

namespace selfgrav {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool finite3(const State3& y) { return std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]); }

State3 combo(const State3& y, double h, std::initializer_list<std::pair<double, const State3*>> terms) {
  State3 out = y;
  for (const auto& [w, k] : terms) {
    for (std::size_t i = 0; i < 3; ++i) out[i] += h * w * (*k)[i];
  }
  return out;
}

struct Step {
  State3 y1{};
  State3 k7{};
  DenseSegment seg;
  double err = 0.0;
};

}  // namespace

Dopri5Result dopri5(const Rhs3& rhs, double r0, const State3& y0, const Dopri5Controls& ctl,
                    const std::optional<Event3>& event) {
  Dopri5Result res;
  res.r.push_back(r0);
  res.y.push_back(y0);
  res.termination = {Termination::StepFailure, r0, ""};

  State3 k1{};
  if (!finite3(y0) || !rhs(r0, y0, k1) || !finite3(k1)) {
    res.termination = {Termination::SingularityGuard, r0, "right-hand side undefined at the start"};
    return res;
  }
  const double span = ctl.r_stop - r0;
  if (!(span > 0.0)) {
    res.termination = {Termination::RadiusCutoff, r0, "start at or beyond r_stop"};
    return res;
  }

  // one Dormand-Prince step of size h from (r, y) with k1 = f(r, y); nullopt when the right-hand side fails
  auto take_step = [&](double r, const State3& y, const State3& k1, double h) -> std::optional<Step> {
    State3 k2{}, k3{}, k4{}, k5{}, k6{};
    Step st;
    bool ok = rhs(r + c2 * h, combo(y, h, {{a21, &k1}}), k2) && finite3(k2);
    ok = ok && rhs(r + c3 * h, combo(y, h, {{a31, &k1}, {a32, &k2}}), k3) && finite3(k3);
    ok = ok && rhs(r + c4 * h, combo(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4) && finite3(k4);
    ok = ok && rhs(r + c5 * h, combo(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5) && finite3(k5);
    ok = ok &&
         rhs(r + h, combo(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6) && finite3(k6);
    if (!ok) return std::nullopt;
    st.y1 = combo(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    if (!finite3(st.y1) || !rhs(r + h, st.y1, st.k7) || !finite3(st.k7)) return std::nullopt;
    const State3& k7 = st.k7;

    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(st.y1[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / 3.0);
    st.err = std::isfinite(err) ? err : 1e10;

    st.seg.r0 = r;
    st.seg.h = h;
    for (std::size_t i = 0; i < 3; ++i) {
      const double dy = st.y1[i] - y[i];
      st.seg.c[0][i] = y[i];
      st.seg.c[1][i] = dy;
      st.seg.c[2][i] = h * k1[i] - dy;
      st.seg.c[3][i] = dy - h * k7[i] - st.seg.c[2][i];
      st.seg.c[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    return st;
  };

  double r = r0;
  State3 y = y0;
  double g_prev = event ? event->g(r, y) : 0.0;
  double h = ctl.initial_step > 0.0 ? ctl.initial_step : 1e-3 * std::max(std::abs(r0), span * 1e-6);
  h = std::min(h, span);
  bool last_guard = false;
  bool last_rejected = false;
  std::size_t steps = 0;

  while (true) {
    if (steps++ >= ctl.max_steps) {
      res.termination = {Termination::StepFailure, r, "maximum number of steps exceeded"};
      return res;
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(r), 1e-300);
    if (h < h_min) {
      res.termination = {last_guard ? Termination::SingularityGuard : Termination::StepFailure, r,
                         last_guard ? "state left the admissible domain" : "step size underflow"};
      return res;
    }
    bool at_stop = false;
    if (r + h >= ctl.r_stop) {
      h = ctl.r_stop - r;
      at_stop = true;
    }

    const auto st = take_step(r, y, k1, h);
    if (!st) {
      last_guard = true;
      last_rejected = true;
      ++res.rejected;
      h *= 0.25;
      continue;
    }
    const State3& y1 = st->y1;
    const State3& k7 = st->k7;

    const double err = st->err;

    if (err > 1.0) {
      last_guard = false;
      last_rejected = true;
      ++res.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    const DenseSegment& seg = st->seg;
    const double r1 = at_stop ? ctl.r_stop : r + h;

    if (event) {
      const double g1 = event->g(r1, y1);
      if (g_prev > 0.0 && !(g1 > 0.0)) {
        // refine with genuine steps from r so the terminal state carries the step accuracy
        auto gf = [&](double x) {
          if (x >= r1) return g1;
          if (x <= r) return g_prev;
          const auto sx = take_step(r, y, k1, x - r);
          return sx ? event->g(x, sx->y1) : event->g(x, seg.eval(x));
        };
        double root = r1;
        if (g1 != 0.0) {
          boost::uintmax_t iters = 200;
          auto tol = [&](double lo, double hi) {
            const double mid = 0.5 * (lo + hi);
            return std::abs(hi - lo) <= 1e-12 * std::abs(mid) || std::abs(gf(mid)) < event->tolerance;
          };
          auto br = boost::math::tools::toms748_solve(gf, r, r1, g_prev, g1, tol, iters);
          const double lo = br.first, hi = br.second, mid = 0.5 * (lo + hi);
          // hi is the first point with g <= 0; the stopping test may also have accepted mid
          root = hi;
          double best = std::abs(gf(hi));
          for (double x : {mid, lo}) {
            const double gx = std::abs(gf(x));
            if (gx < event->tolerance && gx < best) {
              root = x;
              best = gx;
            }
          }
        }
        if (root > r) {
          const auto sr = root < r1 ? take_step(r, y, k1, root - r) : st;
          res.dense.push_back(sr ? sr->seg : seg);
          res.r.push_back(root);
          res.y.push_back(sr ? sr->y1 : seg.eval(root));
        }
        res.termination = {Termination::PressureZero, root, ""};
        return res;
      }
      g_prev = g1;
    }

    res.dense.push_back(seg);
    res.r.push_back(r1);
    res.y.push_back(y1);
    r = r1;
    y = y1;
    k1 = k7;

    if (at_stop) {
      res.termination = {Termination::RadiusCutoff, r, ""};
      return res;
    }

    double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    if (last_rejected) fac = std::min(fac, 1.0);
    last_rejected = false;
    last_guard = false;
    h *= fac;
  }
}

}  // namespace selfgrav
