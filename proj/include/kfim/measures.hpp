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

// Density-matrix quantities for a contiguous tripartition A|B|C of a pure
// chain state: partial traces, the partial transpose on B, spectra and the
// entropic functionals built on them. All logarithms are natural.

#ifndef KFIM_MEASURES_HPP
#define KFIM_MEASURES_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kfim/circuit.hpp"
#include "kfim/common.hpp"

namespace kfim {

/// Contiguous blocks from the left edge: A = sites 1..L_A, then B, then C.
struct TriPartition {
    int L_A = 1;
    int L_B = 1;
    int L_C = 1;

    int total() const { return L_A + L_B + L_C; }

    void validate() const {
        require(L_A >= 1 && L_B >= 1 && L_C >= 1, ErrorCode::kInvalidArgument,
                "all partition blocks must be >= 1, got " + to_label());
    }

    void validate(int L) const {
        validate();
        require(total() == L, ErrorCode::kDimensionMismatch,
                "partition " + to_label() + " does not sum to L=" + std::to_string(L));
    }

    std::string to_label() const {
        return std::to_string(L_A) + "/" + std::to_string(L_B) + "/" + std::to_string(L_C);
    }
};

struct DensityMatrix {
    CMatrix entries;
    std::size_t dimA = 1;
    std::size_t dimB = 1;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
    Complex trace() const { return entries.trace(); }
    double hermiticity_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }
};

/// Sorted (descending) real spectrum with sign bookkeeping at resolution zero_tol.
struct Spectrum {
    std::vector<double> eigenvalues;
    double zero_tol = 0.0;
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    std::size_t dim() const { return eigenvalues.size(); }

    double sum() const {
        double s = 0.0;
        for (double v : eigenvalues) s += v;
        return s;
    }

    /// Singular values, i.e. |lambda|, descending.
    std::vector<double> magnitudes() const {
        std::vector<double> out;
        out.reserve(eigenvalues.size());
        for (double v : eigenvalues) out.push_back(std::abs(v));
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }

    std::vector<double> nonzero_magnitudes() const {
        std::vector<double> out;
        for (double v : magnitudes())
            if (v > zero_tol) out.push_back(v);
        return out;
    }
};

/// Spectrum of a partially transposed density matrix.
using PTSpectrum = Spectrum;

inline double default_zero_tol(std::size_t dim) { return 1e-10 * static_cast<double>(dim); }

/// Reduced density matrix of the `count` contiguous sites starting at 0-based `first`.
inline DensityMatrix reduced_block(const StateVector& state, int first, int count) {
    require(first >= 0 && count >= 1 && first + count <= state.L, ErrorCode::kInvalidArgument,
            "block [" + std::to_string(first) + ", " + std::to_string(first + count) + ") outside chain of L=" +
                std::to_string(state.L));
    require(pow2(count) <= kMaxEigenDim, ErrorCode::kGuardExceeded,
            "reduced density matrix of " + std::to_string(count) + " sites exceeds guard 2^14");
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto dim_left = static_cast<Eigen::Index>(pow2(first));
    const auto dim_x = static_cast<Eigen::Index>(pow2(count));
    const auto dim_right = static_cast<Eigen::Index>(pow2(state.L - first - count));
    DensityMatrix rho;
    rho.entries = CMatrix::Zero(dim_x, dim_x);
    rho.dimA = static_cast<std::size_t>(dim_x);
    rho.dimB = 1;
    for (Eigen::Index l = 0; l < dim_left; ++l) {
        Eigen::Map<const RowMajor> block(state.amplitudes.data() + l * dim_x * dim_right, dim_x, dim_right);
        rho.entries.noalias() += block * block.adjoint();
    }
    return rho;
}

/// rho_AB = tr_C |psi><psi|, rows/columns indexed by the (a, b) bit blocks.
inline DensityMatrix reduced_density_matrix(const StateVector& state, const TriPartition& part) {
    part.validate(state.L);
    require(pow2(part.L_A + part.L_B) <= kMaxEigenDim, ErrorCode::kGuardExceeded,
            "rho_AB dimension 2^" + std::to_string(part.L_A + part.L_B) + " exceeds guard 2^14");
    DensityMatrix rho = reduced_block(state, 0, part.L_A + part.L_B);
    rho.dimA = pow2(part.L_A);
    rho.dimB = pow2(part.L_B);
    return rho;
}

/// (a1 b1; a2 b2) -> (a1 b2; a2 b1).
inline DensityMatrix partial_transpose(const DensityMatrix& rho) {
    require(rho.entries.rows() == rho.entries.cols(), ErrorCode::kDimensionMismatch, "density matrix not square");
    require(rho.dimA * rho.dimB == rho.dim(), ErrorCode::kDimensionMismatch,
            "dimA*dimB=" + std::to_string(rho.dimA * rho.dimB) + " != dim " + std::to_string(rho.dim()));
    const auto dA = static_cast<Eigen::Index>(rho.dimA);
    const auto dB = static_cast<Eigen::Index>(rho.dimB);
    DensityMatrix out;
    out.dimA = rho.dimA;
    out.dimB = rho.dimB;
    out.entries.resize(rho.entries.rows(), rho.entries.cols());
    for (Eigen::Index a1 = 0; a1 < dA; ++a1)
        for (Eigen::Index b1 = 0; b1 < dB; ++b1)
            for (Eigen::Index a2 = 0; a2 < dA; ++a2)
                for (Eigen::Index b2 = 0; b2 < dB; ++b2)
                    out.entries(a1 * dB + b2, a2 * dB + b1) = rho.entries(a1 * dB + b1, a2 * dB + b2);
    return out;
}

inline Spectrum spectrum_from_eigenvalues(std::vector<double> eigenvalues, double zero_tol) {
    Spectrum s;
    std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
    s.eigenvalues = std::move(eigenvalues);
    s.zero_tol = zero_tol;
    for (double v : s.eigenvalues) {
        if (v > zero_tol) {
            ++s.n_plus;
        } else if (v < -zero_tol) {
            ++s.n_minus;
        } else {
            ++s.n_zero;
        }
    }
    return s;
}

/// Eigenvalues of a Hermitian matrix; zero_tol < 0 selects 1e-10 * dim.
inline Spectrum hermitian_spectrum(const CMatrix& m, double zero_tol = -1.0) {
    require(m.rows() == m.cols(), ErrorCode::kDimensionMismatch, "matrix not square");
    require(static_cast<std::size_t>(m.rows()) <= kMaxEigenDim, ErrorCode::kGuardExceeded,
            "eigensolve dimension " + std::to_string(m.rows()) + " exceeds guard 2^14");
    const double herm = m.rows() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
    require(herm <= 1e-8, ErrorCode::kNotHermitian, "matrix deviates from Hermitian by " + std::to_string(herm));
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    if (zero_tol < 0.0) zero_tol = default_zero_tol(dim);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    RVector ev;
    if (solver.info() == Eigen::Success) {
        ev = solver.eigenvalues();
    } else {
        // Tridiagonal QL can stall on large blocks of (near-)zero, exactly
        // degenerate eigenvalues. A diagonal shift lets those blocks deflate.
        const double scale = std::max(m.diagonal().cwiseAbs().maxCoeff(), 1.0 / static_cast<double>(dim));
        for (double shift : {scale, -scale, 2.0 * scale}) {
            solver.compute(m + shift * CMatrix::Identity(m.rows(), m.cols()), Eigen::EigenvaluesOnly);
            if (solver.info() == Eigen::Success) {
                ev = solver.eigenvalues().array() - shift;
                break;
            }
        }
        require(solver.info() == Eigen::Success, ErrorCode::kInvalidArgument, "Hermitian eigensolver did not converge");
    }
    return spectrum_from_eigenvalues(std::vector<double>(ev.data(), ev.data() + ev.size()), zero_tol);
}

inline Spectrum hermitian_spectrum(const DensityMatrix& m, double zero_tol = -1.0) {
    return hermitian_spectrum(m.entries, zero_tol);
}

/// ln sum_i |lambda_i|.
inline double negativity(const Spectrum& spec) {
    double trace_norm = 0.0;
    for (double v : spec.eigenvalues) trace_norm += std::abs(v);
    return std::log(trace_norm);
}

/// Renyi entropy of a density-matrix spectrum; alpha = 1 is von Neumann.
/// Eigenvalues at or below zero_tol count as exact zeros.
inline double renyi_entropy(const Spectrum& spec, double alpha) {
    require(alpha > 0.0, ErrorCode::kInvalidArgument, "Renyi index must be > 0, got " + std::to_string(alpha));
    if (alpha == 1.0) {
        double s = 0.0;
        for (double v : spec.eigenvalues)
            if (v > spec.zero_tol) s -= v * std::log(v);
        return s;
    }
    double power_sum = 0.0;
    for (double v : spec.eigenvalues)
        if (v > spec.zero_tol) power_sum += std::pow(v, alpha);
    return std::log(power_sum) / (1.0 - alpha);
}

inline double renyi_entropy(const DensityMatrix& rho, double alpha) {
    return renyi_entropy(hermitian_spectrum(rho), alpha);
}

inline double von_neumann_entropy(const Spectrum& spec) { return renyi_entropy(spec, 1.0); }

/// -sum_{lambda>0} lambda ln lambda + sum_{lambda<0} |lambda| ln |lambda|.
inline double odd_entropy(const Spectrum& spec) {
    double s = 0.0;
    for (double v : spec.eigenvalues) {
        if (v > spec.zero_tol) {
            s -= v * std::log(v);
        } else if (v < -spec.zero_tol) {
            s += -v * std::log(-v);
        }
    }
    return s;
}

/// tr (rho^{T_B})^{2n} from the spectrum.
inline double even_moment(const Spectrum& spec, int n) {
    require(n >= 1, ErrorCode::kInvalidArgument, "moment index n must be >= 1");
    double s = 0.0;
    for (double v : spec.eigenvalues) s += std::pow(v * v, n);
    return s;
}

inline double even_moment(const DensityMatrix& rho_pt, int n) { return even_moment(hermitian_spectrum(rho_pt), n); }

/// (max - min) / max over the nonzero |lambda|; 0 when fewer than two survive.
inline double flat_spread(const Spectrum& spec) {
    const std::vector<double> mags = spec.nonzero_magnitudes();
    if (mags.size() < 2) return 0.0;
    return (mags.front() - mags.back()) / mags.front();
}

/// The three marginal spectra (A, B, AB) needed for mutual information.
struct MarginalSpectra {
    Spectrum A;
    Spectrum B;
    Spectrum AB;
};

inline MarginalSpectra marginal_spectra(const StateVector& state, const TriPartition& part) {
    part.validate(state.L);
    return {hermitian_spectrum(reduced_block(state, 0, part.L_A)),
            hermitian_spectrum(reduced_block(state, part.L_A, part.L_B)),
            hermitian_spectrum(reduced_density_matrix(state, part))};
}

inline double mutual_information(const MarginalSpectra& m, double alpha) {
    return renyi_entropy(m.A, alpha) + renyi_entropy(m.B, alpha) - renyi_entropy(m.AB, alpha);
}

/// I^(alpha)_{A:B} = S_A + S_B - S_AB.
inline double mutual_information(const StateVector& state, const TriPartition& part, double alpha) {
    return mutual_information(marginal_spectra(state, part), alpha);
}

}  // namespace kfim

#endif  // KFIM_MEASURES_HPP
