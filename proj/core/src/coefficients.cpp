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

#include "kgcert/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>

#include "kgcert/errors.hpp"

namespace kgcert {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidCoefficientError(std::string("non-finite ") + what);
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.c_str();
  while (*begin == ' ' || *begin == '\t') ++begin;
  if (*begin == '\0') return false;
  char* end = nullptr;
  out = std::strtod(begin, &end);
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

} // namespace

PeriodicCoefficient::PeriodicCoefficient(double period, Representation rep,
                                         double shift)
    : period_(period), rep_(std::move(rep)), shift_(shift) {
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw InvalidCoefficientError("period must be positive and finite");
  }
  require_finite(shift_, "shift");
  finalize();
}

PeriodicCoefficient PeriodicCoefficient::constant(double period, double value) {
  require_finite(value, "constant value");
  return PeriodicCoefficient(period, Constant{value});
}

PeriodicCoefficient PeriodicCoefficient::sin_offset(double period,
                                                    double offset,
                                                    double amplitude,
                                                    double phase) {
  require_finite(offset, "sin_offset offset");
  require_finite(amplitude, "sin_offset amplitude");
  require_finite(phase, "sin_offset phase");
  return PeriodicCoefficient(period, SinOffset{offset, amplitude, phase});
}

PeriodicCoefficient PeriodicCoefficient::triangle(double period, double min,
                                                  double max) {
  require_finite(min, "triangle min");
  require_finite(max, "triangle max");
  return PeriodicCoefficient(period, Triangle{min, max});
}

PeriodicCoefficient PeriodicCoefficient::square(double period, double low,
                                                double high, double duty) {
  require_finite(low, "square low");
  require_finite(high, "square high");
  if (!(duty > 0.0 && duty < 1.0)) {
    throw InvalidCoefficientError("square duty must lie in (0, 1)");
  }
  return PeriodicCoefficient(period, Square{low, high, duty});
}

PeriodicCoefficient PeriodicCoefficient::sampled(double period,
                                                 std::vector<double> samples,
                                                 Interpolation order) {
  if (samples.empty()) {
    throw InvalidCoefficientError("sampled coefficient needs samples");
  }
  for (double v : samples) require_finite(v, "sample value");
  return PeriodicCoefficient(period, Sampled{std::move(samples), {}, order});
}

PeriodicCoefficient PeriodicCoefficient::from_csv(std::istream& in,
                                                  double period,
                                                  Interpolation order) {
  std::vector<double> times;
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InvalidCoefficientError("csv line " + std::to_string(line_no) +
                                    ": expected two comma-separated columns");
    }
    double t = 0.0;
    double v = 0.0;
    const bool ok = parse_double(line.substr(0, comma), t) &&
                    parse_double(line.substr(comma + 1), v);
    if (!ok) {
      if (times.empty() && line_no == 1) continue; // header
      throw InvalidCoefficientError("csv line " + std::to_string(line_no) +
                                    ": not numeric");
    }
    if (!std::isfinite(t) || !std::isfinite(v)) {
      throw InvalidCoefficientError("csv line " + std::to_string(line_no) +
                                    ": non-finite entry");
    }
    times.push_back(t);
    values.push_back(v);
  }
  if (values.size() < 2) {
    throw InvalidCoefficientError("csv coefficient needs at least two samples");
  }
  const double h = period / static_cast<double>(values.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (std::abs(times[j] - static_cast<double>(j) * h) > 1e-9 * period) {
      throw InvalidCoefficientError(
          "csv samples must be uniform over [0, T): row " + std::to_string(j) +
          " has t = " + fmt(times[j]) + ", expected " +
          fmt(static_cast<double>(j) * h));
    }
  }
  return sampled(period, std::move(values), order);
}

void PeriodicCoefficient::finalize() {
  const double T = period_;
  std::vector<double> base_breaks;
  if (auto* s = std::get_if<Sampled>(&rep_)) {
    const std::size_t n = s->values.size();
    const double h = T / static_cast<double>(n);
    s->primitive.assign(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double next = s->values[(j + 1) % n];
      const double cell = s->order == Interpolation::Step
                              ? s->values[j] * h
                              : 0.5 * (s->values[j] + next) * h;
      s->primitive[j + 1] = s->primitive[j] + cell;
      base_breaks.push_back(static_cast<double>(j) * h);
    }
  } else if (std::holds_alternative<Triangle>(rep_)) {
    base_breaks = {0.0, 0.5 * T};
  } else if (const auto* q = std::get_if<Square>(&rep_)) {
    base_breaks = {0.0, q->duty * T};
  }

  breakpoints_.clear();
  for (double b : base_breaks) {
    double r = std::fmod(b - shift_, T);
    if (r < 0.0) r += T;
    if (r >= T) r = 0.0;
    breakpoints_.push_back(r);
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                     breakpoints_.end());

  period_integral_ = base_primitive(T);
  if (!std::isfinite(period_integral_)) {
    throw InvalidCoefficientError("coefficient integral is not finite");
  }
  mean_ = period_integral_ / T;
}

double PeriodicCoefficient::base_eval(double r) const {
  const double T = period_;
  return std::visit(
      [&](const auto& rep) -> double {
        using R = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<R, Constant>) {
          return rep.value;
        } else if constexpr (std::is_same_v<R, SinOffset>) {
          return rep.offset + rep.amplitude * std::sin(kTwoPi * r / T + rep.phase);
        } else if constexpr (std::is_same_v<R, Triangle>) {
          const double p = r / T;
          const double span = rep.max - rep.min;
          return p <= 0.5 ? rep.min + span * 2.0 * p
                          : rep.max - span * 2.0 * (p - 0.5);
        } else if constexpr (std::is_same_v<R, Square>) {
          return r < rep.duty * T ? rep.high : rep.low;
        } else {
          const std::size_t n = rep.values.size();
          const double x = r * static_cast<double>(n) / T;
          std::size_t j = static_cast<std::size_t>(x);
          if (j >= n) j = n - 1;
          if (rep.order == Interpolation::Step) return rep.values[j];
          const double frac = x - static_cast<double>(j);
          const double next = rep.values[(j + 1) % n];
          return rep.values[j] + (next - rep.values[j]) * frac;
        }
      },
      rep_);
}

double PeriodicCoefficient::base_primitive(double r) const {
  const double T = period_;
  return std::visit(
      [&](const auto& rep) -> double {
        using R = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<R, Constant>) {
          return rep.value * r;
        } else if constexpr (std::is_same_v<R, SinOffset>) {
          return rep.offset * r -
                 rep.amplitude * T / kTwoPi *
                     (std::cos(kTwoPi * r / T + rep.phase) - std::cos(rep.phase));
        } else if constexpr (std::is_same_v<R, Triangle>) {
          const double span = rep.max - rep.min;
          if (r <= 0.5 * T) return rep.min * r + span * r * r / T;
          const double half = rep.min * 0.5 * T + span * 0.25 * T;
          const double s = r - 0.5 * T;
          return half + rep.max * s - span * s * s / T;
        } else if constexpr (std::is_same_v<R, Square>) {
          const double edge = rep.duty * T;
          return r <= edge ? rep.high * r : rep.high * edge + rep.low * (r - edge);
        } else {
          const std::size_t n = rep.values.size();
          const double h = T / static_cast<double>(n);
          const double x = r / h;
          std::size_t j = static_cast<std::size_t>(x);
          if (j >= n) return rep.primitive[n];
          const double f = x - static_cast<double>(j);
          const double vj = rep.values[j];
          if (rep.order == Interpolation::Step) return rep.primitive[j] + vj * f * h;
          const double next = rep.values[(j + 1) % n];
          return rep.primitive[j] + h * (vj * f + 0.5 * (next - vj) * f * f);
        }
      },
      rep_);
}

double PeriodicCoefficient::unbounded_primitive(double u) const {
  const double periods = std::floor(u / period_);
  double r = u - periods * period_;
  if (r < 0.0) r = 0.0;
  if (r > period_) r = period_;
  return periods * period_integral_ + base_primitive(r);
}

double PeriodicCoefficient::operator()(double t) const {
  const double u = shift_ == 0.0 ? t : t + shift_;
  double r = std::fmod(u, period_);
  if (r < 0.0) r += period_;
  if (r >= period_) r = 0.0;
  return base_eval(r);
}

double PeriodicCoefficient::integral(double a, double b) const {
  return unbounded_primitive(b + shift_) - unbounded_primitive(a + shift_);
}

PeriodicCoefficient PeriodicCoefficient::shifted(double t0) const {
  double s = std::fmod(shift_ + t0, period_);
  if (s < 0.0) s += period_;
  return PeriodicCoefficient(period_, rep_, s);
}

double PeriodicCoefficient::total_variation() const {
  return std::visit(
      [&](const auto& rep) -> double {
        using R = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<R, Constant>) {
          return 0.0;
        } else if constexpr (std::is_same_v<R, SinOffset>) {
          return 4.0 * std::abs(rep.amplitude);
        } else if constexpr (std::is_same_v<R, Triangle>) {
          return 2.0 * std::abs(rep.max - rep.min);
        } else if constexpr (std::is_same_v<R, Square>) {
          return 2.0 * std::abs(rep.high - rep.low);
        } else {
          const std::size_t n = rep.values.size();
          double tv = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            tv += std::abs(rep.values[(j + 1) % n] - rep.values[j]);
          }
          return tv;
        }
      },
      rep_);
}

CoefficientSummary PeriodicCoefficient::summary(std::size_t grid) const {
  CoefficientSummary s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid; ++j) {
    const double v = (*this)(period_ * static_cast<double>(j) / static_cast<double>(grid));
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    s.sup_abs = std::max(s.sup_abs, std::abs(v));
  }
  s.total_variation = total_variation();
  return s;
}

std::string_view PeriodicCoefficient::name() const {
  switch (rep_.index()) {
  case 0: return "constant";
  case 1: return "sin_offset";
  case 2: return "triangle";
  case 3: return "square";
  default: return "sampled";
  }
}

std::string PeriodicCoefficient::describe() const {
  std::ostringstream os;
  os << name() << '(';
  std::visit(
      [&](const auto& rep) {
        using R = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<R, Constant>) {
          os << fmt(rep.value);
        } else if constexpr (std::is_same_v<R, SinOffset>) {
          os << fmt(rep.offset) << ", " << fmt(rep.amplitude) << ", " << fmt(rep.phase);
        } else if constexpr (std::is_same_v<R, Triangle>) {
          os << fmt(rep.min) << ", " << fmt(rep.max);
        } else if constexpr (std::is_same_v<R, Square>) {
          os << fmt(rep.low) << ", " << fmt(rep.high) << ", " << fmt(rep.duty);
        } else {
          os << rep.values.size() << " samples, "
             << (rep.order == Interpolation::Step ? "step" : "linear");
        }
      },
      rep_);
  os << ')';
  if (shift_ != 0.0) os << " shifted by " << fmt(shift_);
  return os.str();
}

double mean_value(const PeriodicCoefficient& c) { return c.mean(); }

double lambda_primitive(const PeriodicCoefficient& c, double t) {
  return std::exp(c.integral(0.0, t));
}

} // namespace kgcert
