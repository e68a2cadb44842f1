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

#include <stdexcept>
#include <string>

namespace kgcert {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A coefficient could not be built (non-finite samples, bad period, ...).
class InvalidCoefficientError : public Error {
public:
  using Error::Error;
};

/// A standing assumption of the model is violated (negative dissipation,
/// non-positive effective mass, mismatched periods, ...).
class ModelAssumptionError : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an operation was not met.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The adaptive integrator could not advance (step size underflow or step
/// budget exhausted).
class IntegrationError : public Error {
public:
  IntegrationError(const std::string& what, double failure_time)
      : Error(what), failure_time_(failure_time) {}
  double failure_time() const noexcept { return failure_time_; }

private:
  double failure_time_;
};

/// The high-frequency corrector N1 is too close to singular.
class FrameError : public Error {
public:
  using Error::Error;
};

/// No contraction power was found within the allowed range.
class NoCertificateError : public Error {
public:
  NoCertificateError(const std::string& what, double worst_t, double worst_xi,
                     double worst_norm)
      : Error(what), worst_t(worst_t), worst_xi(worst_xi),
        worst_norm(worst_norm) {}
  double worst_t;
  double worst_xi;
  double worst_norm;
};

/// Frequency threshold search did not converge.
class ThresholdSearchError : public Error {
public:
  using Error::Error;
};

/// Exponential rate fit could not be performed.
class FitError : public Error {
public:
  using Error::Error;
};

} // namespace kgcert
