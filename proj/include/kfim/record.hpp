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

#ifndef KFIM_RECORD_HPP
#define KFIM_RECORD_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "kfim/measures.hpp"

namespace kfim {

/// Shortest round-trip decimal form of a double ("0.5", "1", "2.75...").
inline std::string format_number(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

struct AlphaMeasures {
    double alpha = 1.0;
    double S_A = 0.0;
    double S_B = 0.0;
    double S_AB = 0.0;
    double I = 0.0;
    double gap_2E_I = 0.0;  // |2E - I|
};

/// One time step of every tracked quantity.
struct EntanglementRecord {
    int t = 0;
    double E = 0.0;
    double E_odd = 0.0;
    std::vector<AlphaMeasures> per_alpha;
    double S_vN_AB = 0.0;
    std::size_t N_plus = 0;
    std::size_t N_minus = 0;
    std::size_t N_zero = 0;
    double flat_spread = 0.0;

    const AlphaMeasures& at_alpha(double alpha) const {
        for (const auto& a : per_alpha)
            if (a.alpha == alpha) return a;
        throw Error(ErrorCode::kInvalidArgument, "record has no alpha=" + format_number(alpha));
    }
};

inline std::vector<double> normalize_alphas(std::vector<double> alphas) {
    require(!alphas.empty(), ErrorCode::kInvalidArgument, "alpha list must be nonempty");
    for (double a : alphas) require(a > 0.0, ErrorCode::kInvalidArgument, "Renyi index must be > 0");
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    return alphas;
}

inline EntanglementRecord compute_record(const StateVector& state, const TriPartition& part,
                                         const std::vector<double>& alphas, int t) {
    const DensityMatrix rho = reduced_density_matrix(state, part);
    const Spectrum pt = hermitian_spectrum(partial_transpose(rho));
    const MarginalSpectra marg{hermitian_spectrum(reduced_block(state, 0, part.L_A)),
                               hermitian_spectrum(reduced_block(state, part.L_A, part.L_B)), hermitian_spectrum(rho)};
    EntanglementRecord rec;
    rec.t = t;
    rec.E = negativity(pt);
    rec.E_odd = odd_entropy(pt);
    for (double a : normalize_alphas(alphas)) {
        AlphaMeasures m;
        m.alpha = a;
        m.S_A = renyi_entropy(marg.A, a);
        m.S_B = renyi_entropy(marg.B, a);
        m.S_AB = renyi_entropy(marg.AB, a);
        m.I = m.S_A + m.S_B - m.S_AB;
        m.gap_2E_I = std::abs(2.0 * rec.E - m.I);
        rec.per_alpha.push_back(m);
    }
    rec.S_vN_AB = von_neumann_entropy(marg.AB);
    rec.N_plus = pt.n_plus;
    rec.N_minus = pt.n_minus;
    rec.N_zero = pt.n_zero;
    rec.flat_spread = flat_spread(pt);
    return rec;
}

struct Column {
    std::string name;
    bool entropic;  // natural-log quantity, rescaled by --bits
};

/// Fixed column order: t, E, E_odd, per-alpha groups (ascending), S_vN_AB, sign counts, flat_spread.
inline std::vector<Column> record_columns(const std::vector<double>& alphas) {
    std::vector<Column> cols{{"t", false}, {"E", true}, {"E_odd", true}};
    for (double a : normalize_alphas(alphas)) {
        const std::string suffix = "_a" + format_number(a);
        cols.push_back({"S_A" + suffix, true});
        cols.push_back({"S_B" + suffix, true});
        cols.push_back({"S_AB" + suffix, true});
        cols.push_back({"I" + suffix, true});
        cols.push_back({"gap_2E_I" + suffix, true});
    }
    cols.push_back({"S_vN_AB", true});
    cols.push_back({"N_plus", false});
    cols.push_back({"N_minus", false});
    cols.push_back({"N_zero", false});
    cols.push_back({"flat_spread", false});
    return cols;
}

/// Values aligned with record_columns(alphas of the record).
inline std::vector<double> record_values(const EntanglementRecord& r) {
    std::vector<double> v{static_cast<double>(r.t), r.E, r.E_odd};
    for (const auto& a : r.per_alpha) {
        v.insert(v.end(), {a.S_A, a.S_B, a.S_AB, a.I, a.gap_2E_I});
    }
    v.push_back(r.S_vN_AB);
    v.push_back(static_cast<double>(r.N_plus));
    v.push_back(static_cast<double>(r.N_minus));
    v.push_back(static_cast<double>(r.N_zero));
    v.push_back(r.flat_spread);
    return v;
}

inline std::vector<double> record_alphas(const EntanglementRecord& r) {
    std::vector<double> out;
    for (const auto& a : r.per_alpha) out.push_back(a.alpha);
    return out;
}

}  // namespace kfim

#endif  // KFIM_RECORD_HPP
