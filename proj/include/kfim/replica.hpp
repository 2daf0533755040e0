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

// Replica transfer matrices in the space direction for even moments of the
// partially transposed reduced density matrix at the dual point
// J = pi/4, b = -pi/4.
//
// A replica configuration holds 4n x t spins s_{nu,tau}: replicas nu < 2n are
// forward (ket) copies, nu >= 2n backward (bra) copies. Spin (nu, tau) lives
// at bit (4nt - 1 - (nu*t + tau)) of the configuration index, bit 0 <-> s = +1.
// Matrix rows carry the spins of site k, columns those of site k+1; the moment
// is the trace of the ordered product over sites (periodic chain).

#ifndef KFIM_REPLICA_HPP
#define KFIM_REPLICA_HPP

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "kfim/common.hpp"
#include "kfim/measures.hpp"

namespace kfim {

struct ReplicaSpace {
    int n = 1;  // 2n copies of rho, i.e. 4n spin rows
    int t = 1;  // time slices

    static constexpr int kMaxSpins = 12;        // dense transfer matrices
    static constexpr int kMaxVectorSpins = 20;  // boundary vectors and permutations

    int replicas() const { return 4 * n; }
    int spins() const { return 4 * n * t; }
    std::size_t dim() const { return pow2(spins()); }

    void validate(int max_spins = kMaxSpins) const {
        require(n >= 1 && t >= 1, ErrorCode::kInvalidArgument, "replica space needs n >= 1 and t >= 1");
        require(spins() <= max_spins, ErrorCode::kGuardExceeded,
                "replica space 2^(4nt) = 2^" + std::to_string(spins()) + " exceeds guard 2^" +
                    std::to_string(max_spins));
    }

    int shift(int nu, int tau) const { return spins() - 1 - (nu * t + tau); }

    int spin(std::size_t config, int nu, int tau) const { return ((config >> shift(nu, tau)) & 1U) ? -1 : 1; }

    /// +1 for forward replicas (nu < 2n, 0-based), -1 for backward ones.
    int orientation(int nu) const { return nu < 2 * n ? 1 : -1; }

    std::size_t replica_mask(int nu) const {
        std::size_t m = 0;
        for (int tau = 0; tau < t; ++tau) m |= std::size_t{1} << shift(nu, tau);
        return m;
    }

    std::size_t forward_mask() const {
        std::size_t m = 0;
        for (int nu = 0; nu < 2 * n; ++nu) m |= replica_mask(nu);
        return m;
    }

    std::size_t backward_mask() const {
        std::size_t m = 0;
        for (int nu = 2 * n; nu < 4 * n; ++nu) m |= replica_mask(nu);
        return m;
    }
};

/// Which final-time pairing of forward and backward replicas a site carries.
enum class Flavor { kA, kB, kC };

inline const char* to_string(Flavor f) {
    switch (f) {
        case Flavor::kA: return "A";
        case Flavor::kB: return "B";
        case Flavor::kC: return "C";
    }
    return "?";
}

/// Backward replica tied to forward replica `nu` (0-based) at the last time slice.
inline int boundary_partner(const ReplicaSpace& space, Flavor flavor, int nu) {
    const int two_n = 2 * space.n;
    switch (flavor) {
        case Flavor::kA: return two_n + (nu - 1 + two_n) % two_n;
        case Flavor::kB: return two_n + (nu + 1) % two_n;
        case Flavor::kC: return two_n + nu;
    }
    return two_n + nu;
}

struct TransferMatrix {
    CMatrix entries;
    Flavor flavor = Flavor::kC;
    ReplicaSpace space;
    double h = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Dense transfer matrix assembled from its closed-form matrix elements.
inline TransferMatrix build_transfer(const ReplicaSpace& space, Flavor flavor, double h, double theta, double phi) {
    space.validate();
    const int n = space.n;
    const int t = space.t;
    const std::size_t dim = space.dim();
    const double prefactor = std::ldexp(1.0, -2 * (t - 1) * n);
    const Complex w_up = std::cos(theta / 2.0);
    const Complex w_dn_fwd = std::polar(std::sin(theta / 2.0), phi);
    const Complex w_dn_bwd = std::polar(std::sin(theta / 2.0), -phi);
    const std::size_t fwd = space.forward_mask();
    const std::size_t bwd = space.backward_mask();
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

    TransferMatrix out{CMatrix::Zero(dim, dim), flavor, space, h, theta, phi};
    for (std::size_t s = 0; s < dim; ++s) {
        bool paired = true;
        for (int nu = 0; nu < 2 * n && paired; ++nu) {
            paired = space.spin(s, nu, t - 1) == space.spin(s, boundary_partner(space, flavor, nu), t - 1);
        }
        if (!paired) continue;
        Complex row = prefactor;
        double diag = 0.0;
        for (int nu = 0; nu < 4 * n; ++nu) {
            const int o = space.orientation(nu);
            if (space.spin(s, nu, 0) == 1) {
                row *= w_up;
            } else {
                row *= o > 0 ? w_dn_fwd : w_dn_bwd;
            }
            for (int tau = 0; tau < t; ++tau) {
                diag += o * h * space.spin(s, nu, tau);
                if (tau + 1 < t) diag += o * kQuarterPi * space.spin(s, nu, tau) * space.spin(s, nu, tau + 1);
            }
        }
        row *= std::polar(1.0, -diag);
        for (std::size_t r = 0; r < dim; ++r) {
            // exp(-i pi/4 sum_nu sgn_nu sum_tau s r) = i^(#flipped forward - #flipped backward)
            const std::size_t flipped = s ^ r;
            const int k = std::popcount(flipped & fwd) - std::popcount(flipped & bwd);
            out.entries(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) = row * kIPow[((k % 4) + 4) % 4];
        }
    }
    return out;
}

inline TransferMatrix build_transfer_C(const ReplicaSpace& space, double h, double theta, double phi) {
    return build_transfer(space, Flavor::kC, h, theta, phi);
}
inline TransferMatrix build_transfer_A(const ReplicaSpace& space, double h, double theta, double phi) {
    return build_transfer(space, Flavor::kA, h, theta, phi);
}
inline TransferMatrix build_transfer_B(const ReplicaSpace& space, double h, double theta, double phi) {
    return build_transfer(space, Flavor::kB, h, theta, phi);
}

/// Basis permutation |s> -> |image[s]> cyclically relabelling the forward replicas.
struct ReplicaPermutation {
    std::vector<std::size_t> image;

    std::size_t dim() const { return image.size(); }

    CMatrix to_matrix() const {
        CMatrix P = CMatrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
        for (std::size_t s = 0; s < dim(); ++s) P(static_cast<Eigen::Index>(image[s]), static_cast<Eigen::Index>(s)) = 1.0;
        return P;
    }

    CVector apply(const CVector& v) const {
        CVector out(v.size());
        for (std::size_t s = 0; s < dim(); ++s) out[static_cast<Eigen::Index>(image[s])] = v[static_cast<Eigen::Index>(s)];
        return out;
    }

    CVector apply_adjoint(const CVector& v) const {
        CVector out(v.size());
        for (std::size_t s = 0; s < dim(); ++s) out[static_cast<Eigen::Index>(s)] = v[static_cast<Eigen::Index>(image[s])];
        return out;
    }

    /// P M P^dagger.
    CMatrix conjugate(const CMatrix& m) const {
        CMatrix out(m.rows(), m.cols());
        for (std::size_t s = 0; s < dim(); ++s)
            for (std::size_t r = 0; r < dim(); ++r)
                out(static_cast<Eigen::Index>(image[s]), static_cast<Eigen::Index>(image[r])) =
                    m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r));
        return out;
    }
};

/// Unprimed: forward replica nu takes the spins of nu-1 (T_A = P T_C P^dagger).
/// Primed: forward replica nu takes the spins of nu+1 (T_B = P' T_C P'^dagger).
inline ReplicaPermutation permutation_P(const ReplicaSpace& space, bool primed) {
    space.validate(ReplicaSpace::kMaxVectorSpins);
    const int two_n = 2 * space.n;
    ReplicaPermutation perm;
    perm.image.resize(space.dim());
    for (std::size_t s = 0; s < space.dim(); ++s) {
        std::size_t out = s & space.backward_mask();
        for (int nu = 0; nu < two_n; ++nu) {
            const int src = primed ? (nu + 1) % two_n : (nu - 1 + two_n) % two_n;
            for (int tau = 0; tau < space.t; ++tau) {
                if (space.spin(s, src, tau) == -1) out |= std::size_t{1} << space.shift(nu, tau);
            }
        }
        perm.image[s] = out;
    }
    return perm;
}

/// |1>: forward replica nu identified with backward replica nu + 2n at every time, normalized.
inline CVector boundary_vector_one(const ReplicaSpace& space) {
    space.validate(ReplicaSpace::kMaxVectorSpins);
    const int two_n = 2 * space.n;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
    const double amp = std::ldexp(1.0, -space.n * space.t);
    for (std::size_t s = 0; s < space.dim(); ++s) {
        bool paired = true;
        for (int nu = 0; nu < two_n && paired; ++nu) {
            for (int tau = 0; tau < space.t && paired; ++tau) {
                paired = space.spin(s, nu, tau) == space.spin(s, nu + two_n, tau);
            }
        }
        if (paired) v[static_cast<Eigen::Index>(s)] = amp;
    }
    return v;
}

/// <1|P|1>; closed form 2^{(1-2n)t}.
inline double overlap_P(const ReplicaSpace& space) {
    const CVector one = boundary_vector_one(space);
    return one.dot(permutation_P(space, false).apply(one)).real();
}

/// <1|P'^dagger|1>; equals <1|P|1>.
inline double overlap_P_prime_adjoint(const ReplicaSpace& space) {
    const CVector one = boundary_vector_one(space);
    return one.dot(permutation_P(space, true).apply_adjoint(one)).real();
}

/// <1|P^dagger P'|1>.
inline double overlap_P_adjoint_P_prime(const ReplicaSpace& space) {
    const CVector one = boundary_vector_one(space);
    return one.dot(permutation_P(space, false).apply_adjoint(permutation_P(space, true).apply(one))).real();
}

/// Large-L_A, L_B limit of the semi-infinite boundary form: product of the three overlaps.
inline double boundary_overlap_product(const ReplicaSpace& space) {
    return overlap_P(space) * overlap_P_adjoint_P_prime(space) * overlap_P_prime_adjoint(space);
}

enum class Complement { kFinite, kInfinite };

namespace detail {

class TransferCache {
  public:
    TransferCache(const ReplicaSpace& space, double theta, double phi) : space_(space), theta_(theta), phi_(phi) {}

    const CMatrix& get(Flavor flavor, double h) {
        auto key = std::make_pair(static_cast<int>(flavor), h);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, build_transfer(space_, flavor, h, theta_, phi_).entries).first;
        }
        return it->second;
    }

  private:
    ReplicaSpace space_;
    double theta_;
    double phi_;
    std::map<std::pair<int, double>, CMatrix> cache_;
};

}  // namespace detail

/// tr (rho_AB^{T_B})^{2n} at time t = space.t from replica transfer matrices.
///
/// kFinite evaluates tr[prod_A T_A[h_k] prod_B T_B[h_k] prod_C T_C[h_k]] on the
/// periodic chain. kInfinite sends L_C to infinity, giving
/// <1| P (prod_A T_C) P^dagger P' (prod_B T_C) P'^dagger |1>; this needs <1| to
/// be the fixed point of T_C, so it is restricted to transverse-class states.
/// `h` always has part.total() entries; under kInfinite the C entries are unused.
inline double moment_via_transfer(const TriPartition& part, const ReplicaSpace& space, const std::vector<double>& h,
                                  double theta, double phi, Complement complement = Complement::kFinite) {
    part.validate();
    space.validate();
    require(static_cast<int>(h.size()) == part.total(), ErrorCode::kDimensionMismatch,
            "h has " + std::to_string(h.size()) + " entries but partition " + part.to_label() + " has " +
                std::to_string(part.total()) + " sites");
    detail::TransferCache cache(space, theta, phi);
    const auto dim = static_cast<Eigen::Index>(space.dim());

    if (complement == Complement::kFinite) {
        CMatrix acc = CMatrix::Identity(dim, dim);
        for (int k = 0; k < part.total(); ++k) {
            const Flavor f = k < part.L_A ? Flavor::kA : (k < part.L_A + part.L_B ? Flavor::kB : Flavor::kC);
            acc = acc * cache.get(f, h[k]);
        }
        return acc.trace().real();
    }

    require(std::abs(theta - kPi / 2.0) <= 1e-9, ErrorCode::kInvalidArgument,
            "boundary-vector form needs a transverse-class state (theta = pi/2)");
    const CVector one = boundary_vector_one(space);
    const ReplicaPermutation P = permutation_P(space, false);
    const ReplicaPermutation Pp = permutation_P(space, true);
    CVector x = Pp.apply_adjoint(one);
    for (int k = part.L_A + part.L_B - 1; k >= part.L_A; --k) x = cache.get(Flavor::kC, h[k]) * x;
    x = P.apply_adjoint(Pp.apply(x));
    for (int k = part.L_A - 1; k >= 0; --k) x = cache.get(Flavor::kC, h[k]) * x;
    x = P.apply(x);
    return one.dot(x).real();
}

/// Exact characterization of Spec(T) = {1, 0, ..., 0} that does not rely on
/// eigenvalue conditioning (T is defective at 0).
///
/// T has zero rows outside the final-time pairing, so Spec(T) = Spec(K) + {0}
/// with K the principal block on the remaining `support`. Powers of K are taken
/// until K^{m+1} = K^m, at which point every eigenvalue obeys
/// |lambda^m (lambda - 1)| <= |K^{m+1} - K^m|_F. K^m is then a projector onto
/// the unit eigenspace, on which K acts as the identity, so the unit
/// eigenvalue's geometric multiplicity equals rank K^m = tr K^m.
struct SpectralCertificate {
    std::size_t dim = 0;
    std::size_t support_dim = 0;
    int idempotent_power = -1;          // m, or -1 if K^m never stabilized
    double power_sum_deviation = 0.0;   // max_k |tr K^k - 1|, k = 1..m+1
    double idempotency_residual = 0.0;  // |K^{m+1} - K^m|_F
    int unit_geometric_multiplicity = 0;

    bool holds(double tol) const {
        return idempotent_power > 0 && power_sum_deviation <= tol && idempotency_residual <= tol &&
               unit_geometric_multiplicity == 1;
    }
};

inline SpectralCertificate certify_unit_projector_spectrum(const CMatrix& T, double tol = 1e-9, int max_power = 64) {
    require(T.rows() == T.cols(), ErrorCode::kDimensionMismatch, "transfer matrix not square");
    SpectralCertificate cert;
    cert.dim = static_cast<std::size_t>(T.rows());
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < T.rows(); ++i)
        if (T.row(i).cwiseAbs().maxCoeff() > 0.0) support.push_back(i);
    cert.support_dim = support.size();
    const auto d = static_cast<Eigen::Index>(support.size());
    CMatrix K(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) K(i, j) = T(support[i], support[j]);

    CMatrix power = K;
    for (int k = 1; k <= max_power; ++k) {
        cert.power_sum_deviation = std::max(cert.power_sum_deviation, std::abs(power.trace() - 1.0));
        CMatrix next = power * K;
        cert.idempotency_residual = (next - power).norm();
        if (cert.idempotency_residual <= tol) {
            cert.idempotent_power = k;
            cert.power_sum_deviation = std::max(cert.power_sum_deviation, std::abs(next.trace() - 1.0));
            cert.unit_geometric_multiplicity = static_cast<int>(std::llround(power.trace().real()));
            break;
        }
        power = std::move(next);
    }
    return cert;
}

/// max_i min(|lambda_i|, |lambda_i - 1|) from a general complex eigensolve.
/// Reported for information only: defective zero eigenvalues limit its accuracy.
inline double eigensolver_deviation_from_unit_spectrum(const CMatrix& T) {
    Eigen::ComplexEigenSolver<CMatrix> solver(T, false);
    double dev = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const Complex v = solver.eigenvalues()[i];
        dev = std::max(dev, std::min(std::abs(v), std::abs(v - 1.0)));
    }
    return dev;
}

}  // namespace kfim

#endif  // KFIM_REPLICA_HPP
