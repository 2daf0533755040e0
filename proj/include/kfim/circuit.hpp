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

// Kicked-field Ising Floquet circuit on a periodic qubit chain.
//
// Basis convention: site 1 is the most significant bit of the amplitude
// index; bit 0 is |up> (sigma^z = +1), bit 1 is |down> (sigma^z = -1).

#ifndef KFIM_CIRCUIT_HPP
#define KFIM_CIRCUIT_HPP

#include <cmath>
#include <string>
#include <vector>

#include "kfim/common.hpp"

namespace kfim {

enum class Boundary { kPeriodic };

struct CircuitParams {
    int L = 0;
    double J = kQuarterPi;
    double b = -kQuarterPi;
    std::vector<double> h;
    Boundary bc = Boundary::kPeriodic;

    static CircuitParams dual_point(int L, double field) {
        return CircuitParams{L, kQuarterPi, -kQuarterPi, std::vector<double>(L, field), Boundary::kPeriodic};
    }

    void validate() const {
        require(L >= 2, ErrorCode::kInvalidArgument, "circuit needs L >= 2, got L=" + std::to_string(L));
        require(L <= kMaxStateSites, ErrorCode::kGuardExceeded,
                "L=" + std::to_string(L) + " exceeds the state-vector guard L <= " + std::to_string(kMaxStateSites));
        require(static_cast<int>(h.size()) == L, ErrorCode::kDimensionMismatch,
                "h has " + std::to_string(h.size()) + " entries, expected L=" + std::to_string(L));
    }

    /// True iff |J| = |b| = pi/4 within 1e-12.
    bool is_dual_point() const {
        return std::abs(std::abs(J) - kQuarterPi) <= 1e-12 && std::abs(std::abs(b) - kQuarterPi) <= 1e-12;
    }
};

struct StateVector {
    int L = 0;
    CVector amplitudes;

    StateVector() = default;
    StateVector(int sites, CVector amps) : L(sites), amplitudes(std::move(amps)) {
        require(sites >= 1 && sites <= kMaxStateSites, ErrorCode::kGuardExceeded,
                "state vector size L=" + std::to_string(sites) + " outside [1, " + std::to_string(kMaxStateSites) + "]");
        require(static_cast<std::size_t>(amplitudes.size()) == pow2(sites), ErrorCode::kDimensionMismatch,
                "amplitude count " + std::to_string(amplitudes.size()) + " != 2^" + std::to_string(sites));
    }

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }
};

namespace detail {

inline void check_evolvable(const StateVector& state, const CircuitParams& params) {
    params.validate();
    require(state.L == params.L, ErrorCode::kDimensionMismatch,
            "state has L=" + std::to_string(state.L) + " but circuit has L=" + std::to_string(params.L));
    require(state.dim() == pow2(state.L), ErrorCode::kDimensionMismatch, "state amplitude count does not match 2^L");
    const double nrm = state.norm();
    require(std::abs(nrm - 1.0) <= 1e-6, ErrorCode::kNotNormalized,
            "input state norm " + std::to_string(nrm) + " deviates from 1 by more than 1e-6");
}

inline int spin_of(std::size_t index, int site, int L) {
    return ((index >> (L - 1 - site)) & 1U) ? -1 : 1;
}

/// Ising-layer energy J sum_k s_k s_{k+1} + sum_k h_k s_k for one basis index (periodic).
inline double ising_energy(std::size_t index, const CircuitParams& p) {
    double bonds = 0.0;
    double field = 0.0;
    for (int k = 0; k < p.L; ++k) {
        const int s = spin_of(index, k, p.L);
        bonds += s * spin_of(index, (k + 1) % p.L, p.L);
        field += p.h[k] * s;
    }
    return p.J * bonds + field;
}

inline CVector ising_phases(const CircuitParams& p) {
    const std::size_t dim = pow2(p.L);
    CVector phases(static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        phases[static_cast<Eigen::Index>(a)] = std::polar(1.0, -ising_energy(a, p));
    }
    return phases;
}

inline void apply_kicks(CVector& psi, int L, double b) {
    const double c = std::cos(b);
    const Complex ms = -kI * std::sin(b);
    const std::size_t dim = pow2(L);
    Complex* data = psi.data();
    for (int k = 0; k < L; ++k) {
        const std::size_t mask = std::size_t{1} << (L - 1 - k);
        for (std::size_t a = 0; a < dim; ++a) {
            if (a & mask) continue;
            const Complex up = data[a];
            const Complex dn = data[a | mask];
            data[a] = c * up + ms * dn;
            data[a | mask] = c * dn + ms * up;
        }
    }
}

}  // namespace detail

/// One Floquet period U = U_K U_I applied to `state`.
inline StateVector apply_floquet(const StateVector& state, const CircuitParams& params) {
    detail::check_evolvable(state, params);
    StateVector out = state;
    out.amplitudes.array() *= detail::ising_phases(params).array();
    detail::apply_kicks(out.amplitudes, params.L, params.b);
    return out;
}

/// t Floquet periods; t = 0 returns the input unchanged.
inline StateVector evolve(const StateVector& state, const CircuitParams& params, int t) {
    require(t >= 0, ErrorCode::kInvalidArgument, "evolve needs t >= 0");
    detail::check_evolvable(state, params);
    StateVector out = state;
    if (t == 0) return out;
    const CVector phases = detail::ising_phases(params);
    for (int step = 0; step < t; ++step) {
        out.amplitudes.array() *= phases.array();
        detail::apply_kicks(out.amplitudes, params.L, params.b);
    }
    return out;
}

inline constexpr int kMaxDenseFloquetSites = 12;

/// Dense U = U_K U_I assembled element by element; an oracle for apply_floquet.
inline CMatrix build_floquet_dense(const CircuitParams& params) {
    params.validate();
    require(params.L <= kMaxDenseFloquetSites, ErrorCode::kGuardExceeded,
            "build_floquet_dense guard: L <= " + std::to_string(kMaxDenseFloquetSites) + ", got L=" +
                std::to_string(params.L));
    const std::size_t dim = pow2(params.L);
    const Complex same = std::cos(params.b);
    const Complex flip = -kI * std::sin(params.b);
    CMatrix U(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const Complex phase = std::polar(1.0, -detail::ising_energy(col, params));
        for (std::size_t row = 0; row < dim; ++row) {
            Complex amp = phase;
            for (int k = 0; k < params.L; ++k) {
                amp *= detail::spin_of(row, k, params.L) == detail::spin_of(col, k, params.L) ? same : flip;
            }
            U(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
        }
    }
    return U;
}

/// Two-site kernel exp(-i J Z Z) exp(-i b X X) at h = 0: the Ising bond together
/// with the kick in its Kramers-Wannier dual (bond) form. Dual-unitary exactly
/// when |J| = |b| = pi/4 (mod pi/2).
inline CMatrix kfim_two_site_gate(double J, double b) {
    CMatrix zz = CMatrix::Zero(4, 4);
    zz(0, 0) = std::polar(1.0, -J);
    zz(1, 1) = std::polar(1.0, J);
    zz(2, 2) = std::polar(1.0, J);
    zz(3, 3) = std::polar(1.0, -J);
    CMatrix xx = CMatrix::Identity(4, 4) * std::cos(b);
    const Complex off = -kI * std::sin(b);
    xx(0, 3) = off;
    xx(3, 0) = off;
    xx(1, 2) = off;
    xx(2, 1) = off;
    return zz * xx;
}

inline bool is_unitary(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return ((m.adjoint() * m) - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Space-time reshuffle: <c a| U~ |d b> = <a b| U |c d>.
inline CMatrix space_time_reshuffle(const CMatrix& gate) {
    require(gate.rows() == 4 && gate.cols() == 4, ErrorCode::kDimensionMismatch, "two-site gate must be 4x4");
    CMatrix out(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) out(2 * c + a, 2 * d + b) = gate(2 * a + b, 2 * c + d);
    return out;
}

inline bool check_dual_unitarity(const CMatrix& gate) {
    require(gate.rows() == 4 && gate.cols() == 4, ErrorCode::kDimensionMismatch, "two-site gate must be 4x4");
    require(is_unitary(gate, 1e-10), ErrorCode::kNotUnitary, "gate is not unitary within 1e-10");
    return is_unitary(space_time_reshuffle(gate), 1e-10);
}

}  // namespace kfim

#endif  // KFIM_CIRCUIT_HPP
