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

#ifndef KFIM_STATES_HPP
#define KFIM_STATES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "kfim/circuit.hpp"
#include "kfim/common.hpp"

namespace kfim {

/// Per-site Bloch angles of a product state.
struct ProductStateSpec {
    std::vector<double> thetas;
    std::vector<double> phis;

    static ProductStateSpec uniform(int L, double theta, double phi) {
        return {std::vector<double>(L, theta), std::vector<double>(L, phi)};
    }

    int sites() const { return static_cast<int>(thetas.size()); }

    void validate() const {
        require(thetas.size() == phis.size(), ErrorCode::kDimensionMismatch,
                "thetas has " + std::to_string(thetas.size()) + " entries but phis has " +
                    std::to_string(phis.size()));
        require(thetas.size() >= 2, ErrorCode::kInvalidArgument, "product state needs L >= 2");
    }

    /// Maps every (theta, phi) onto the same Bloch point with theta in [0, pi], phi in [0, 2 pi).
    ProductStateSpec canonical() const {
        ProductStateSpec out = *this;
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            double th = std::remainder(thetas[k], 2.0 * kPi);  // (-pi, pi]
            double ph = phis[k];
            if (th < 0.0) {
                th = -th;
                ph += kPi;
            }
            ph = std::fmod(ph, 2.0 * kPi);
            if (ph < 0.0) ph += 2.0 * kPi;
            if (ph >= 2.0 * kPi) ph = 0.0;
            out.thetas[k] = th;
            out.phis[k] = ph;
        }
        return out;
    }
};

enum class StateClass { kTransverse, kLongitudinal, kGeneric };

inline const char* to_string(StateClass c) {
    switch (c) {
        case StateClass::kTransverse: return "transverse";
        case StateClass::kLongitudinal: return "longitudinal";
        case StateClass::kGeneric: return "generic";
    }
    return "unknown";
}

inline constexpr double kDefaultClassTol = 1e-9;

/// Tensor product of cos(theta_k/2)|up> + e^{i phi_k} sin(theta_k/2)|down>.
inline StateVector product_state(const ProductStateSpec& spec) {
    spec.validate();
    const int L = spec.sites();
    require(L <= kMaxStateSites, ErrorCode::kGuardExceeded,
            "product state with L=" + std::to_string(L) + " exceeds guard " + std::to_string(kMaxStateSites));
    CVector amps(static_cast<Eigen::Index>(pow2(L)));
    amps[0] = 1.0;
    Eigen::Index filled = 1;
    for (int k = 0; k < L; ++k) {
        const Complex up = std::cos(spec.thetas[k] / 2.0);
        const Complex dn = std::polar(1.0, spec.phis[k]) * std::sin(spec.thetas[k] / 2.0);
        // site k becomes the new least significant bit
        for (Eigen::Index a = filled - 1; a >= 0; --a) {
            const Complex v = amps[a];
            amps[2 * a] = v * up;
            amps[2 * a + 1] = v * dn;
        }
        filled *= 2;
    }
    amps.normalize();
    return StateVector(L, std::move(amps));
}

inline StateClass classify_state(const ProductStateSpec& spec, double tol = kDefaultClassTol) {
    require(tol > 0.0, ErrorCode::kInvalidArgument, "classification tolerance must be positive");
    require(tol < kQuarterPi, ErrorCode::kInvalidArgument, "classification tolerance must be < pi/4 or classes overlap");
    spec.validate();
    const ProductStateSpec c = spec.canonical();
    bool transverse = true;
    bool longitudinal = true;
    for (double th : c.thetas) {
        transverse = transverse && std::abs(th - kPi / 2.0) <= tol;
        longitudinal = longitudinal && (std::abs(th) <= tol || std::abs(th - kPi) <= tol);
    }
    if (transverse) return StateClass::kTransverse;
    if (longitudinal) return StateClass::kLongitudinal;
    return StateClass::kGeneric;
}

}  // namespace kfim

#endif  // KFIM_STATES_HPP
