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

// Haar-random reference values, the late-time plateaus for equal tripartitions.

#ifndef KFIM_HAAR_HPP
#define KFIM_HAAR_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kfim/circuit.hpp"
#include "kfim/record.hpp"

namespace kfim {

struct HaarEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-sample seed, independent of evaluation order.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index + 1));
}

/// 2^L i.i.d. standard complex Gaussians, normalized.
inline StateVector sample_haar_state(int L, std::uint64_t seed) {
    require(L >= 2, ErrorCode::kInvalidArgument, "Haar state needs L >= 2");
    require(L <= kMaxStateSites, ErrorCode::kGuardExceeded, "Haar state L exceeds guard");
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector amps(static_cast<Eigen::Index>(pow2(L)));
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        amps[i] = Complex(re, im);
    }
    amps.normalize();
    return StateVector(L, std::move(amps));
}

/// Mean and standard error (sample std with n-1, over sqrt(n)).
inline HaarEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
    require(values.size() >= 2, ErrorCode::kInvalidArgument, "an estimate needs at least 2 samples");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    return {mean, std::sqrt(var / n), static_cast<int>(values.size()), seed};
}

inline const std::vector<double>& default_alphas() {
    static const std::vector<double> a{0.5, 1.0, 2.0};
    return a;
}

/// Sampled Haar averages of the requested record columns (e.g. "E", "I_a0.5").
inline std::map<std::string, HaarEstimate> haar_reference(int L, const TriPartition& part,
                                                          const std::vector<std::string>& measures, int samples,
                                                          std::uint64_t seed,
                                                          const std::vector<double>& alphas = default_alphas()) {
    part.validate(L);
    require(samples >= 2, ErrorCode::kInvalidArgument, "Haar reference needs samples >= 2");
    const std::vector<Column> cols = record_columns(alphas);
    std::vector<std::size_t> picks;
    for (const auto& m : measures) {
        std::size_t idx = cols.size();
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c].name == m) idx = c;
        if (idx == cols.size()) {
            std::string valid;
            for (const auto& c : cols) valid += (valid.empty() ? "" : ", ") + c.name;
            throw Error(ErrorCode::kInvalidArgument, "unknown measure '" + m + "'; valid: " + valid);
        }
        picks.push_back(idx);
    }
    std::vector<std::vector<double>> values(measures.size());
    for (int s = 0; s < samples; ++s) {
        const StateVector psi = sample_haar_state(L, sample_seed(seed, static_cast<std::uint64_t>(s)));
        const std::vector<double> row = record_values(compute_record(psi, part, alphas, 0));
        for (std::size_t m = 0; m < picks.size(); ++m) values[m].push_back(row[picks[m]]);
    }
    std::map<std::string, HaarEstimate> out;
    for (std::size_t m = 0; m < measures.size(); ++m) out[measures[m]] = summarize(values[m], seed);
    return out;
}

}  // namespace kfim

#endif  // KFIM_HAAR_HPP
