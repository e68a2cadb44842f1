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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kgcert {

/// Interpolation order for sampled coefficients.
enum class Interpolation { Step = 0, Linear = 1 };

/// Number of uniform points per period used for assumption checks.
inline constexpr std::size_t kValidationGridPoints = 4096;

/// Min/max/variation of a coefficient on the validation grid.
struct CoefficientSummary {
  double min = 0.0;
  double max = 0.0;
  double sup_abs = 0.0;
  double total_variation = 0.0;
};

/// A T-periodic scalar coefficient.
///
/// Either a closed form registered by name (constant, sin_offset, triangle,
/// square) or uniform samples over [0, T) with step or linear interpolation.
/// Evaluation reduces t modulo T before anything else, so eval(t + T) and
/// eval(t) agree whenever t + T is exactly representable.
///
/// Instances are immutable; the mean is computed at construction.
class PeriodicCoefficient {
public:
  /// c(t) = value.
  static PeriodicCoefficient constant(double period, double value);
  /// c(t) = offset + amplitude * sin(2*pi*t/T + phase).
  static PeriodicCoefficient sin_offset(double period, double offset,
                                        double amplitude, double phase = 0.0);
  /// Symmetric triangle wave: min at t = 0, max at t = T/2.
  static PeriodicCoefficient triangle(double period, double min, double max);
  /// high on [0, duty*T), low on [duty*T, T).
  static PeriodicCoefficient square(double period, double low, double high,
                                    double duty = 0.5);
  /// samples[j] is the value at t = j*T/n.
  static PeriodicCoefficient sampled(double period, std::vector<double> samples,
                                     Interpolation order);
  /// Two-column (t, value) CSV holding uniform samples over one period.
  /// An optional non-numeric header row is skipped. Throws
  /// InvalidCoefficientError on malformed input.
  static PeriodicCoefficient from_csv(std::istream& in, double period,
                                      Interpolation order);

  double operator()(double t) const;

  double period() const noexcept { return period_; }
  double mean() const noexcept { return mean_; }

  /// Exact integral of the coefficient over [a, b] (b < a allowed).
  double integral(double a, double b) const;

  /// Points in [0, T) where the coefficient jumps or has a kink, sorted.
  const std::vector<double>& breakpoints() const noexcept {
    return breakpoints_;
  }

  /// The coefficient t -> c(t + t0).
  PeriodicCoefficient shifted(double t0) const;

  CoefficientSummary summary(std::size_t grid = kValidationGridPoints) const;
  double total_variation() const;

  /// Registered name: constant, sin_offset, triangle, square, sampled.
  std::string_view name() const;
  /// Human-readable declaration, e.g. "sin_offset(1, 0.5, 0)".
  std::string describe() const;

private:
  struct Constant {
    double value;
  };
  struct SinOffset {
    double offset, amplitude, phase;
  };
  struct Triangle {
    double min, max;
  };
  struct Square {
    double low, high, duty;
  };
  struct Sampled {
    std::vector<double> values;
    std::vector<double> primitive; // primitive[j] = integral over [0, t_j]
    Interpolation order;
  };
  using Representation =
      std::variant<Constant, SinOffset, Triangle, Square, Sampled>;

  PeriodicCoefficient(double period, Representation rep, double shift = 0.0);

  double base_eval(double r) const;        // r in [0, T)
  double base_primitive(double r) const;   // integral over [0, r], r in [0, T]
  double unbounded_primitive(double u) const;
  void finalize();

  double period_;
  Representation rep_;
  double shift_ = 0.0;
  double period_integral_ = 0.0;
  double mean_ = 0.0;
  std::vector<double> breakpoints_;
};

/// Mean value (1/T) * integral over one period.
double mean_value(const PeriodicCoefficient& c);

/// exp(integral_0^t c); satisfies lambda(t + T) = exp(mean*T) * lambda(t).
double lambda_primitive(const PeriodicCoefficient& c, double t);

} // namespace kgcert
