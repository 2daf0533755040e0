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

// Self-check suite behind `kfim verify`: engine cross-checks and the exact
// early-time identities for transverse-class states at the dual point.

#ifndef KFIM_VERIFICATION_HPP
#define KFIM_VERIFICATION_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "kfim/circuit.hpp"
#include "kfim/measures.hpp"
#include "kfim/record.hpp"
#include "kfim/replica.hpp"
#include "kfim/states.hpp"

namespace kfim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

inline StateVector random_state(int L, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CVector v(static_cast<Eigen::Index>(pow2(L)));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
    v.normalize();
    return StateVector(L, std::move(v));
}

}  // namespace detail

inline std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(20240611);

    {
        const CircuitParams p = CircuitParams::dual_point(6, 0.7);
        const CMatrix U = build_floquet_dense(p);
        double err = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector psi = detail::random_state(6, rng);
            err = std::max(err, (apply_floquet(psi, p).amplitudes - U * psi.amplitudes).cwiseAbs().maxCoeff());
        }
        out.push_back({"floquet kernel vs dense (L=6)", err <= 1e-12, "max err " + detail::sci(err)});
    }

    {
        const int L = 12;
        const TriPartition part{4, 4, 4};
        StateVector psi = product_state(ProductStateSpec::uniform(L, kPi / 2, 0.0));
        const CircuitParams p = CircuitParams::dual_point(L, 1.0);
        for (int t = 1; t <= 2; ++t) {
            psi = apply_floquet(psi, p);
            const Spectrum pt = hermitian_spectrum(partial_transpose(reduced_density_matrix(psi, part)));
            double worst = 0.0;
            for (int n = 1; n <= 2; ++n) {
                const double expect = std::ldexp(1.0, (4 - 6 * n) * t);
                worst = std::max(worst, std::abs(even_moment(pt, n) - expect) / expect);
            }
            out.push_back({"even moments 2^{(4-6n)t}, t=" + std::to_string(t), worst <= 1e-8,
                           "max rel err " + detail::sci(worst)});
            const std::size_t nz = pt.n_plus + pt.n_minus;
            const std::size_t d4 = pow2(4 * t);
            const std::size_t d3 = pow2(3 * t);
            const bool counts = nz == d4 && pt.n_plus == (d4 + d3) / 2 && pt.n_minus == (d4 - d3) / 2;
            const double spread = flat_spread(pt);
            const double level = pt.nonzero_magnitudes().front();
            const bool flat = spread <= 1e-8 && std::abs(level - std::ldexp(1.0, -3 * t)) <= 1e-8 * level;
            out.push_back({"flat partial-transpose spectrum, t=" + std::to_string(t), counts && flat,
                           "N+=" + std::to_string(pt.n_plus) + " N-=" + std::to_string(pt.n_minus) +
                               " spread " + detail::sci(spread)});
        }
    }

    {
        const int L = 9;
        const TriPartition part{3, 3, 3};
        const ReplicaSpace space{1, 1};
        std::uniform_real_distribution<double> uh(-2.0, 2.0);
        double err = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const double h = uh(rng);
            const CircuitParams p = CircuitParams::dual_point(L, h);
            const StateVector psi = apply_floquet(product_state(ProductStateSpec::uniform(L, kPi / 2, 0.0)), p);
            const double sv = even_moment(partial_transpose(reduced_density_matrix(psi, part)), 1);
            const double tm = moment_via_transfer(part, space, p.h, kPi / 2, 0.0);
            err = std::max(err, std::abs(sv - tm));
        }
        out.push_back({"transfer-matrix moment vs state vector (L=9)", err <= 1e-9, "max err " + detail::sci(err)});
    }

    for (auto [n, t] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
        const ReplicaSpace space{n, t};
        const double expect = std::ldexp(1.0, (4 - 6 * n) * t);
        const double prod = boundary_overlap_product(space);
        const double semi =
            moment_via_transfer({6, 6, 1}, space, std::vector<double>(13, 1.0), kPi / 2, 0.0, Complement::kInfinite);
        const double err = std::max(std::abs(prod - expect), std::abs(semi - expect)) / expect;
        out.push_back({"boundary-vector moment, n=" + std::to_string(n) + " t=" + std::to_string(t), err <= 1e-8,
                       "rel err " + detail::sci(err)});
        const double pp = overlap_P(space);
        const double ppp = overlap_P_adjoint_P_prime(space);
        const bool ok = std::abs(pp - std::ldexp(1.0, (1 - 2 * n) * t)) <= 1e-12 &&
                        std::abs(ppp - std::ldexp(1.0, (2 - 2 * n) * t)) <= 1e-12;
        out.push_back({"permutation overlaps, n=" + std::to_string(n) + " t=" + std::to_string(t), ok,
                       "<1|P|1>=" + format_number(pp) + " <1|P^+P'|1>=" + format_number(ppp)});
    }

    for (auto [n, t] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
        const ReplicaSpace space{n, t};
        const SpectralCertificate cert = certify_unit_projector_spectrum(build_transfer_C(space, 0.6, kPi / 2, 0.3).entries);
        out.push_back({"Spec(T_C) = {0,1}, simple unit eigenvalue, n=" + std::to_string(n) + " t=" + std::to_string(t),
                       cert.holds(1e-9),
                       "power " + std::to_string(cert.idempotent_power) + " dev " + detail::sci(cert.power_sum_deviation)});
    }
    return out;
}

}  // namespace kfim

#endif  // KFIM_VERIFICATION_HPP
