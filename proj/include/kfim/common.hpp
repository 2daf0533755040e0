// Copyright 2026 The kfim-negativity Authors
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

#ifndef KFIM_COMMON_HPP
#define KFIM_COMMON_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace kfim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr Complex kI{0.0, 1.0};

inline constexpr const char* kVersion = "0.1.0";

/// Largest chain simulated as a dense state vector (2^26 amplitudes = 1 GiB).
inline constexpr int kMaxStateSites = 26;
/// Largest Hermitian matrix handed to the dense eigensolver.
inline constexpr std::size_t kMaxEigenDim = std::size_t{1} << 14;

enum class ErrorCode {
    kInvalidArgument,
    kDimensionMismatch,
    kNotNormalized,
    kGuardExceeded,
    kNotHermitian,
    kNotUnitary,
    kUnknownPreset,
    kConfig,
    kIo,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument: return "invalid_argument";
        case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
        case ErrorCode::kNotNormalized: return "not_normalized";
        case ErrorCode::kGuardExceeded: return "guard_exceeded";
        case ErrorCode::kNotHermitian: return "not_hermitian";
        case ErrorCode::kNotUnitary: return "not_unitary";
        case ErrorCode::kUnknownPreset: return "unknown_preset";
        case ErrorCode::kConfig: return "config";
        case ErrorCode::kIo: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) {
        throw Error(code, message);
    }
}

constexpr std::size_t pow2(int k) { return std::size_t{1} << k; }

}  // namespace kfim

#endif  // KFIM_COMMON_HPP
