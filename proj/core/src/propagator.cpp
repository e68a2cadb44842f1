/*
   Copyright 2026 The kgcert Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "kgcert/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "kgcert/errors.hpp"
#include "kgcert/quadrature.hpp"

namespace kgcert {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

using State = std::array<cplx, 4>; // e11, e12, e21, e22

State to_state(const Mat2C& m) { return {m.a11, m.a12, m.a21, m.a22}; }
Mat2C to_matrix(const State& y) { return {y[0], y[1], y[2], y[3]}; }

class Integrator {
public:
  Integrator(const ModelSpec& spec, double xi, double tol)
      : spec_(spec), xi_(xi), tol_(0.1 * tol), constant_mass_(spec.has_constant_mass()),
        w0_(japanese_bracket(xi, spec.m0())) {}

  // Advances y from t0 to t1 across breakpoints.
  void advance(State& y, double t0, double t1) {
    if (t0 == t1) return;
    const auto& breaks = spec_.breakpoints();
    const double T = spec_.period();
    const bool forward = t1 > t0;
    auto knots = split_at_breakpoints(breaks, T, std::min(t0, t1), std::max(t0, t1));
    if (!forward) std::reverse(knots.begin(), knots.end());
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      segment(y, knots[k], knots[k + 1]);
    }
  }

  double max_error = 0.0;
  long steps = 0;
  long evaluations = 0;

private:
  // f(t, y) = i A(t) y, with A evaluated on the open segment (lo, hi).
  void rhs(double t, const State& y, State& out) {
    double te = t;
    if (hi_ - lo_ > 8.0 * nudge_) te = std::clamp(t, lo_ + nudge_, hi_ - nudge_);
    const double b = spec_.dissipation()(te);
    const double w = constant_mass_ ? w0_ : std::sqrt(xi_ * xi_ + spec_.mass_squared(te));
    const cplx iw{0.0, w};
    out[0] = iw * y[2];
    out[1] = iw * y[3];
    out[2] = iw * y[0] - 2.0 * b * y[2];
    out[3] = iw * y[1] - 2.0 * b * y[3];
    ++evaluations;
  }

  void segment(State& y, double t0, double t1) {
    lo_ = std::min(t0, t1);
    hi_ = std::max(t0, t1);
    nudge_ = 1e-13 * std::max(1.0, std::max(std::abs(lo_), std::abs(hi_)));
    const double dir = t1 > t0 ? 1.0 : -1.0;
    if (h_ <= 0.0) {
      const double scale = 1.0 + japanese_bracket(xi_, spec_.m0()) +
                           2.0 * std::abs(spec_.dissipation()(t0));
      h_ = 0.05 * std::pow(tol_, 0.2) / scale;
    }
    double t = t0;
    State k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
    rhs(t, y, k1);
    bool last_rejected = false;
    while (dir * (t1 - t) > 0.0) {
      double h = std::min(h_, dir * (t1 - t));
      const double floor = 1e-14 * std::max(1.0, std::abs(t));
      if (h < floor) {
        if (dir * (t1 - t) <= floor) break; // remainder below resolution
        throw IntegrationError("step size underflow at t = " + std::to_string(t), t);
      }
      if (h < dir * (t1 - t) && dir * (t1 - t) < 1.05 * h) h = dir * (t1 - t);
      const bool truncated = h < h_;
      const double hs = dir * h;
      for (int j = 0; j < 4; ++j) tmp[j] = y[j] + hs * (a21 * k1[j]);
      rhs(t + c2 * hs, tmp, k2);
      for (int j = 0; j < 4; ++j) tmp[j] = y[j] + hs * (a31 * k1[j] + a32 * k2[j]);
      rhs(t + c3 * hs, tmp, k3);
      for (int j = 0; j < 4; ++j)
        tmp[j] = y[j] + hs * (a41 * k1[j] + a42 * k2[j] + a43 * k3[j]);
      rhs(t + c4 * hs, tmp, k4);
      for (int j = 0; j < 4; ++j)
        tmp[j] = y[j] + hs * (a51 * k1[j] + a52 * k2[j] + a53 * k3[j] + a54 * k4[j]);
      rhs(t + c5 * hs, tmp, k5);
      for (int j = 0; j < 4; ++j)
        tmp[j] = y[j] + hs * (a61 * k1[j] + a62 * k2[j] + a63 * k3[j] + a64 * k4[j] +
                              a65 * k5[j]);
      const double t_next = (h == dir * (t1 - t)) ? t1 : t + hs;
      rhs(t_next, tmp, k6);
      for (int j = 0; j < 4; ++j)
        ynew[j] = y[j] + hs * (a71 * k1[j] + a73 * k3[j] + a74 * k4[j] + a75 * k5[j] +
                               a76 * k6[j]);
      rhs(t_next, ynew, k7);

      double err = 0.0;
      double abs_err = 0.0;
      for (int j = 0; j < 4; ++j) {
        const cplx ej = hs * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] +
                              e6 * k6[j] + e7 * k7[j]);
        const double scale = tol_ * (1.0 + std::max(std::abs(y[j]), std::abs(ynew[j])));
        err = std::max(err, std::abs(ej) / scale);
        abs_err = std::max(abs_err, std::abs(ej));
      }
      if (!std::isfinite(err)) {
        throw IntegrationError("non-finite state at t = " + std::to_string(t), t);
      }
      if (err <= 1.0) {
        y = ynew;
        k1 = k7;
        t = t_next;
        ++steps;
        max_error = std::max(max_error, abs_err);
        double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        factor = std::clamp(factor, 0.2, last_rejected ? 1.0 : 5.0);
        // A step shortened to land on t1 does not shrink the carried size.
        h_ = truncated ? std::max(h_, h * factor) : h * factor;
        last_rejected = false;
      } else {
        h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
        last_rejected = true;
      }
      if (steps > 200'000'000) {
        throw IntegrationError("step budget exhausted at t = " + std::to_string(t), t);
      }
    }
  }

  const ModelSpec& spec_;
  double xi_;
  double tol_;
  bool constant_mass_;
  double w0_;
  double h_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0, nudge_ = 0.0;
};

void check_tolerance(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-4)) {
    throw PreconditionError("propagation tolerance must lie in [1e-14, 1e-4]");
  }
}

} // namespace

Mat2C system_matrix(const ModelSpec& spec, double t, double xi) {
  const double w = symbol(spec, t, xi);
  const double b = spec.dissipation()(t);
  return {0.0, w, w, cplx{0.0, 2.0 * b}};
}

PropagationResult propagate(const ModelSpec& spec, double s, double t, double xi,
                            double tol) {
  check_tolerance(tol);
  if (!std::isfinite(s) || !std::isfinite(t) || !std::isfinite(xi)) {
    throw PreconditionError("propagate needs finite s, t, xi");
  }
  PropagationResult result;
  State y = to_state(Mat2C::identity());
  Integrator integrator(spec, xi, tol);
  integrator.advance(y, s, t);
  result.matrix = to_matrix(y);
  result.local_error_estimate = integrator.max_error;
  result.steps_taken = integrator.steps;
  result.rhs_evaluations = integrator.evaluations;
  return result;
}

std::vector<Mat2C> propagate_to(const ModelSpec& spec, double s,
                                std::span<const double> times, double xi, double tol) {
  check_tolerance(tol);
  std::vector<Mat2C> out;
  out.reserve(times.size());
  State y = to_state(Mat2C::identity());
  Integrator integrator(spec, xi, tol);
  double current = s;
  double last_distance = 0.0;
  double direction = 0.0;
  for (double target : times) {
    const double d = target - s;
    if (d != 0.0) {
      const double dir = d > 0.0 ? 1.0 : -1.0;
      if (direction != 0.0 && dir != direction) {
        throw PreconditionError("propagate_to: times must lie on one side of s");
      }
      direction = dir;
    }
    if (std::abs(d) < last_distance) {
      throw PreconditionError("propagate_to: times must move away from s");
    }
    last_distance = std::abs(d);
    integrator.advance(y, current, target);
    current = target;
    out.push_back(to_matrix(y));
  }
  return out;
}

} // namespace kgcert
