// Copyright 2026 The urbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace urbounds {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class ErrorCode {
  validation,
  grid_too_small,
  non_normalizable,
  incompatible,
  accuracy,
  degenerate_input,
  deterministic_third,
  wrong_regime,
  domain,
  truncation,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::grid_too_small: return "grid-too-small";
    case ErrorCode::non_normalizable: return "non-normalizable";
    case ErrorCode::incompatible: return "incompatible";
    case ErrorCode::accuracy: return "accuracy";
    case ErrorCode::degenerate_input: return "degenerate-input";
    case ErrorCode::deterministic_third: return "third-observable-deterministic";
    case ErrorCode::wrong_regime: return "wrong-regime";
    case ErrorCode::domain: return "domain";
    case ErrorCode::truncation: return "truncation";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Unit system. Every formula carries hbar and kB explicitly.
struct PhysConfig {
  double hbar = 1.0;
  double kB = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(kB > 0.0)) {
      throw Error(ErrorCode::validation, "PhysConfig requires hbar > 0 and kB > 0");
    }
  }
};

}  // namespace urbounds
