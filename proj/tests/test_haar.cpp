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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "test_util.hpp"

namespace kfim {
namespace {

double combined(const HaarEstimate& a, const HaarEstimate& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

TEST(HaarState, NormalizedAndDeterministic) {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const StateVector a = sample_haar_state(8, seed);
        EXPECT_NEAR(a.norm(), 1.0, 1e-12);
        EXPECT_EQ(a.amplitudes, sample_haar_state(8, seed).amplitudes);
    }
    EXPECT_NE(sample_haar_state(8, 1).amplitudes, sample_haar_state(8, 2).amplitudes);
}

TEST(HaarState, RejectsTinyChains) { EXPECT_KFIM_ERROR(sample_haar_state(1, 0), ErrorCode::kInvalidArgument); }

TEST(HaarState, SampleSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(sample_seed(1234, i));
    EXPECT_EQ(seen.size(), 1000U);
    EXPECT_EQ(sample_seed(7, 3), sample_seed(7, 3));
    EXPECT_NE(sample_seed(7, 3), sample_seed(8, 3));
}

TEST(HaarState, MarginalsAreValidDensityMatrices) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = reduced_density_matrix(sample_haar_state(9, s), {3, 3, 3});
        EXPECT_LE(rho.hermiticity_error(), 1e-12);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        EXPECT_GE(hermitian_spectrum(rho).eigenvalues.back(), -1e-12);
    }
}

TEST(Summarize, MeanAndStandardError) {
    const HaarEstimate e = summarize({1.0, 2.0, 3.0}, 5);
    EXPECT_DOUBLE_EQ(e.mean, 2.0);
    EXPECT_DOUBLE_EQ(e.std_error, 1.0 / std::sqrt(3.0));
    EXPECT_EQ(e.samples, 3);
    EXPECT_EQ(e.seed, 5U);
    EXPECT_KFIM_ERROR(summarize({1.0}, 0), ErrorCode::kInvalidArgument);
}

TEST(HaarReference, EntanglementEntropyMatchesIndependentSampler) {
    const auto refs = haar_reference(12, {4, 4, 4}, {"S_A_a1", "E"}, 200, 2024);
    const HaarEstimate& mine = refs.at("S_A_a1");
    const oracle::SampleSummary other = oracle::haar_entropy_svd(12, 4, 200, 777);
    const double se = std::sqrt(mine.std_error * mine.std_error + other.std_error * other.std_error);
    EXPECT_LE(std::abs(mine.mean - other.mean), 3.0 * se) << mine.mean << " vs " << other.mean;
    EXPECT_GT(refs.at("E").mean, 0.0);
    EXPECT_EQ(mine.samples, 200);
}

TEST(HaarReference, NeighbouringSeedsAgree) {
    const auto a = haar_reference(10, {3, 3, 4}, {"E", "I_a0.5"}, 100, 10);
    const auto b = haar_reference(10, {3, 3, 4}, {"E", "I_a0.5"}, 100, 11);
    for (const char* m : {"E", "I_a0.5"}) {
        EXPECT_LE(std::abs(a.at(m).mean - b.at(m).mean), 4.0 * combined(a.at(m), b.at(m))) << m;
    }
}

TEST(HaarReference, StandardErrorShrinksWithSamples) {
    const double se1 = haar_reference(8, {2, 2, 4}, {"S_A_a1"}, 400, 3).at("S_A_a1").std_error;
    const double se2 = haar_reference(8, {2, 2, 4}, {"S_A_a1"}, 800, 3).at("S_A_a1").std_error;
    const double ratio = se2 / se1;
    EXPECT_GT(ratio, (1.0 / std::sqrt(2.0)) * 0.8);
    EXPECT_LT(ratio, (1.0 / std::sqrt(2.0)) * 1.2);
}

TEST(HaarReference, Deterministic) {
    const auto a = haar_reference(6, {2, 2, 2}, {"E"}, 10, 42);
    const auto b = haar_reference(6, {2, 2, 2}, {"E"}, 10, 42);
    EXPECT_EQ(a.at("E").mean, b.at("E").mean);
    EXPECT_EQ(a.at("E").std_error, b.at("E").std_error);
}

TEST(HaarReference, SampleOrderDoesNotMatter) {
    std::vector<double> values;
    for (std::uint64_t i = 4; i-- > 0;)
        values.push_back(compute_record(sample_haar_state(6, sample_seed(9, i)), {2, 2, 2}, {1.0}, 0).E);
    std::reverse(values.begin(), values.end());
    EXPECT_NEAR(haar_reference(6, {2, 2, 2}, {"E"}, 4, 9, {1.0}).at("E").mean, summarize(values, 9).mean, 1e-15);
}

TEST(HaarReference, UnknownMeasureListsValidNames) {
    try {
        haar_reference(6, {2, 2, 2}, {"bogus"}, 4, 0);
        FAIL() << "expected error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
        EXPECT_NE(std::string(e.what()).find("I_a0.5"), std::string::npos) << e.what();
    }
}

TEST(HaarReference, ArgumentChecks) {
    EXPECT_KFIM_ERROR(haar_reference(6, {2, 2, 2}, {"E"}, 1, 0), ErrorCode::kInvalidArgument);
    EXPECT_KFIM_ERROR(haar_reference(6, {2, 2, 3}, {"E"}, 4, 0), ErrorCode::kDimensionMismatch);
}

}  // namespace
}  // namespace kfim
