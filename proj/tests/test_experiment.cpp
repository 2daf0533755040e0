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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

namespace kfim {
namespace {

namespace fs = std::filesystem;

std::string temp_path(const std::string& name) {
    const fs::path dir = fs::path(::testing::TempDir()) / "kfim_experiment_tests";
    fs::create_directories(dir);
    return (dir / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string drop_first_line(const std::string& s) { return s.substr(s.find('\n') + 1); }

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.circuit = CircuitParams::dual_point(6, 1.0);
    c.state = ProductStateSpec::uniform(6, kPi / 2, 0.0);
    c.partition = {2, 2, 2};
    c.t_max = 3;
    return c;
}

// ---------------------------------------------------------------------------
// run_experiment

TEST(RunExperiment, TransversePresetSatisfiesRelationChainEarly) {
    ExperimentConfig cfg = preset("fig1a", 12);
    cfg.t_max = 2;
    const auto rows = run_experiment(cfg);
    ASSERT_EQ(rows.size(), 3U);
    for (int t : {1, 2}) {
        const EntanglementRecord& r = rows[static_cast<std::size_t>(t)];
        EXPECT_EQ(r.t, t);
        EXPECT_NEAR(2 * r.E, r.at_alpha(0.5).I, 1e-8);
        EXPECT_NEAR(2 * r.E, 2.0 / 3.0 * r.E_odd, 1e-8);
        EXPECT_LE(r.at_alpha(0.5).gap_2E_I, 1e-8);
        EXPECT_LE(r.flat_spread, 1e-8);
    }
}

TEST(RunExperiment, ZeroPeriodsGiveOneProductRow) {
    ExperimentConfig cfg = small_config();
    cfg.t_max = 0;
    const auto rows = run_experiment(cfg);
    ASSERT_EQ(rows.size(), 1U);
    const EntanglementRecord& r = rows[0];
    EXPECT_NEAR(r.E, 0.0, 1e-12);
    EXPECT_NEAR(r.E_odd, 0.0, 1e-12);
    EXPECT_NEAR(r.S_vN_AB, 0.0, 1e-12);
    for (const auto& a : r.per_alpha) {
        EXPECT_NEAR(a.S_A, 0.0, 1e-12);
        EXPECT_NEAR(a.S_B, 0.0, 1e-12);
        EXPECT_NEAR(a.S_AB, 0.0, 1e-12);
        EXPECT_NEAR(a.I, 0.0, 1e-12);
    }
    EXPECT_EQ(r.N_minus, 0U);
}

TEST(RunExperiment, UnequalPartitionLateTimeFactorizes) {
    ExperimentConfig cfg = preset("fig3a", 15);
    cfg.partition = {3, 3, 9};
    cfg.t_max = 14;
    cfg.alphas = {0.5};
    const auto rows = run_experiment(cfg);
    double E = 0.0;
    double I = 0.0;
    double gap = 0.0;
    for (int t = 10; t <= 14; ++t) {
        const auto& r = rows[static_cast<std::size_t>(t)];
        E += r.E / 5;
        I += r.at_alpha(0.5).I / 5;
        gap += std::abs(r.E_odd - r.S_vN_AB) / 5;
    }
    EXPECT_LE(E, 0.05);
    EXPECT_LE(I, 0.05);
    EXPECT_LE(gap, 0.05);
}

TEST(RunExperiment, IntegrablePresetRunsThroughPipeline) {
    ExperimentConfig cfg = preset("fig1c", 6);
    cfg.t_max = 3;
    EXPECT_EQ(run_experiment(cfg).size(), 4U);
}

TEST(RunExperiment, EpsilonShiftsBothCouplings) {
    ExperimentConfig cfg = small_config();
    cfg.epsilon = 0.01;
    const CircuitParams p = cfg.effective_circuit();
    EXPECT_DOUBLE_EQ(p.J, kQuarterPi - 0.01);
    EXPECT_DOUBLE_EQ(p.b, -kQuarterPi - 0.01);
    EXPECT_FALSE(p.is_dual_point());
}

TEST(RunExperiment, GapColumnIsTwiceNegativityMinusMutualInformation) {
    const auto rows = run_experiment(preset("fig2a", 6));
    for (const auto& r : rows)
        for (const auto& a : r.per_alpha) EXPECT_DOUBLE_EQ(a.gap_2E_I, std::abs(2 * r.E - a.I));
}

TEST(RunExperiment, ValidationErrors) {
    ExperimentConfig cfg = small_config();
    cfg.t_max = -1;
    EXPECT_KFIM_ERROR(run_experiment(cfg), ErrorCode::kInvalidArgument);
    cfg = small_config();
    cfg.alphas = {};
    EXPECT_KFIM_ERROR(run_experiment(cfg), ErrorCode::kInvalidArgument);
    cfg = small_config();
    cfg.epsilon = -0.1;
    EXPECT_KFIM_ERROR(run_experiment(cfg), ErrorCode::kInvalidArgument);
    cfg = small_config();
    cfg.partition = {2, 2, 3};
    EXPECT_KFIM_ERROR(run_experiment(cfg), ErrorCode::kDimensionMismatch);
    cfg = small_config();
    cfg.state = ProductStateSpec::uniform(5, 0.0, 0.0);
    EXPECT_KFIM_ERROR(run_experiment(cfg), ErrorCode::kDimensionMismatch);
}

TEST(Record, AlphaHandling) {
    EXPECT_EQ(normalize_alphas({2.0, 0.5, 1.0, 0.5}), (std::vector<double>{0.5, 1.0, 2.0}));
    EXPECT_KFIM_ERROR(normalize_alphas({0.0}), ErrorCode::kInvalidArgument);
    const EntanglementRecord r = compute_record(product_state(ProductStateSpec::uniform(3, 1.0, 0.0)), {1, 1, 1}, {1.0}, 0);
    EXPECT_KFIM_ERROR(r.at_alpha(2.0), ErrorCode::kInvalidArgument);
}

// ---------------------------------------------------------------------------
// presets

TEST(Preset, WeakIntegrabilityBreaking) {
    const ExperimentConfig c = preset("fig1d");
    EXPECT_EQ(c.circuit.h, std::vector<double>(12, 0.1));
    EXPECT_EQ(classify_state(c.state), StateClass::kTransverse);
}

TEST(Preset, GenericFigureTwoAngles) {
    const ExperimentConfig c = preset("fig2c");
    EXPECT_EQ(c.state.thetas, std::vector<double>(12, 2.5));
    EXPECT_EQ(c.state.phis, std::vector<double>(12, 1.0));
    EXPECT_EQ(preset("fig2b").state.thetas[0], 2.0);
    EXPECT_EQ(preset("fig2d").state.phis[0], 3.0);
}

TEST(Preset, EqualTripartitionScales) {
    for (int L : {6, 12, 21}) {
        const ExperimentConfig c = preset("fig1a", L);
        EXPECT_EQ(c.partition.L_A, L / 3);
        EXPECT_EQ(c.partition.L_B, L / 3);
        EXPECT_EQ(c.partition.L_C, L / 3);
        EXPECT_EQ(c.circuit.L, L);
        EXPECT_TRUE(c.haar.has_value());
    }
    EXPECT_KFIM_ERROR(preset("fig1a", 13), ErrorCode::kInvalidArgument);
}

TEST(Preset, FigureThreeCaptionRatios) {
    const ExperimentConfig a = preset("fig3a", 30);
    EXPECT_EQ(a.partition.L_A, 6);
    EXPECT_EQ(a.partition.L_C, 18);
    const ExperimentConfig b = preset("fig3b", 30);
    EXPECT_EQ(b.partition.L_A, 7);
    EXPECT_EQ(b.partition.L_C, 16);
    EXPECT_EQ(preset("fig3c").state.thetas[0], 1.0);
    EXPECT_FALSE(preset("fig3d").haar.has_value());
    EXPECT_EQ(preset("fig3a").circuit.L, 15);
}

TEST(Preset, AllNamesResolveAtDualPoint) {
    for (const auto& info : preset_table()) {
        const ExperimentConfig c = preset(info.name);
        EXPECT_NO_THROW(c.validate()) << info.name;
        EXPECT_TRUE(c.circuit.is_dual_point()) << info.name;
    }
}

TEST(Preset, UnknownNameListsValidOnes) {
    try {
        preset("fig9z");
        FAIL() << "expected error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kUnknownPreset);
        const std::string msg = e.what();
        for (const char* n : {"fig1a", "fig2d", "fig3d"}) EXPECT_NE(msg.find(n), std::string::npos) << msg;
    }
}

// ---------------------------------------------------------------------------
// config files

TEST(Config, JsonRoundTrip) {
    ExperimentConfig c = preset("fig2b", 9);
    c.epsilon = 0.02;
    c.alphas = {0.5, 3.0};
    c.bits = true;
    c.output_format = OutputFormat::kJson;
    c.output_path = "x.json";
    c.haar = HaarSettings{17, 99};
    const ExperimentConfig back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.circuit.L, c.circuit.L);
    EXPECT_EQ(back.circuit.J, c.circuit.J);
    EXPECT_EQ(back.circuit.b, c.circuit.b);
    EXPECT_EQ(back.circuit.h, c.circuit.h);
    EXPECT_EQ(back.state.thetas, c.state.thetas);
    EXPECT_EQ(back.state.phis, c.state.phis);
    EXPECT_EQ(back.partition.L_A, c.partition.L_A);
    EXPECT_EQ(back.partition.L_C, c.partition.L_C);
    EXPECT_EQ(back.t_max, c.t_max);
    EXPECT_EQ(back.alphas, c.alphas);
    EXPECT_EQ(back.epsilon, c.epsilon);
    ASSERT_TRUE(back.haar.has_value());
    EXPECT_EQ(back.haar->samples, 17);
    EXPECT_EQ(back.haar->seed, 99U);
    EXPECT_EQ(back.output_path, "x.json");
    EXPECT_EQ(back.output_format, OutputFormat::kJson);
    EXPECT_TRUE(back.bits);
}

TEST(Config, KeysMirrorFieldNames) {
    const nlohmann::json j = config_to_json(small_config());
    for (const char* k : {"circuit", "state", "partition", "t_max", "alphas", "epsilon", "haar", "output_path",
                          "output_format", "bits"})
        EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Config, ScalarFieldBroadcasts) {
    nlohmann::json j = config_to_json(small_config());
    j["circuit"]["h"] = 0.5;
    EXPECT_EQ(config_from_json(j).circuit.h, std::vector<double>(6, 0.5));
}

TEST(Config, Errors) {
    nlohmann::json j = config_to_json(small_config());
    j["circuit"]["bc"] = "open";
    EXPECT_KFIM_ERROR(config_from_json(j), ErrorCode::kConfig);
    j = config_to_json(small_config());
    j.erase("partition");
    EXPECT_KFIM_ERROR(config_from_json(j), ErrorCode::kConfig);
    j = config_to_json(small_config());
    j["output_format"] = "xml";
    EXPECT_KFIM_ERROR(config_from_json(j), ErrorCode::kConfig);
    j = config_to_json(small_config());
    j["t_max"] = "ten";
    EXPECT_KFIM_ERROR(config_from_json(j), ErrorCode::kConfig);
    EXPECT_KFIM_ERROR(load_config(temp_path("does_not_exist.json")), ErrorCode::kIo);
    const std::string bad = temp_path("bad.json");
    std::ofstream(bad) << "{ not json";
    EXPECT_KFIM_ERROR(load_config(bad), ErrorCode::kConfig);
}

TEST(Config, LoadFromFile) {
    const std::string path = temp_path("cfg.json");
    std::ofstream(path) << config_to_json(small_config()).dump(2);
    EXPECT_EQ(load_config(path).t_max, 3);
}

// ---------------------------------------------------------------------------
// output

TEST(Csv, HeaderOrderIsFixed) {
    const auto cols = record_columns({2.0, 0.5});
    std::vector<std::string> names;
    for (const auto& c : cols) names.push_back(c.name);
    const std::vector<std::string> want{"t",          "E",          "E_odd",     "S_A_a0.5", "S_B_a0.5", "S_AB_a0.5",
                                        "I_a0.5",     "gap_2E_I_a0.5", "S_A_a2", "S_B_a2",   "S_AB_a2",  "I_a2",
                                        "gap_2E_I_a2", "S_vN_AB",   "N_plus",    "N_minus",  "N_zero",   "flat_spread"};
    EXPECT_EQ(names, want);
}

TEST(Csv, CommentLineThenHeaderThenRows) {
    const auto rows = run_experiment(small_config());
    std::ostringstream os;
    write_csv(os, rows, default_alphas(), OutputMeta{1234, false});
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# seed=1234, version=", 0), 0U) << line;
    EXPECT_NE(line.find("units=nats"), std::string::npos);
    std::getline(in, line);
    EXPECT_EQ(line.rfind("t,E,E_odd,S_A_a0.5,", 0), 0U) << line;
    int data = 0;
    while (std::getline(in, line)) {
        ++data;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 22);
        EXPECT_EQ(line.find(' '), std::string::npos);
    }
    EXPECT_EQ(data, 4);
}

TEST(Csv, RerunIsByteIdenticalApartFromComment) {
    ExperimentConfig c = small_config();
    c.output_path = temp_path("det1.csv");
    run_and_write(c);
    const std::string first = slurp(c.output_path);
    c.output_path = temp_path("det2.csv");
    run_and_write(c);
    EXPECT_EQ(drop_first_line(first), drop_first_line(slurp(c.output_path)));
}

TEST(Csv, ValuesRoundTripExactly) {
    const auto rows = run_experiment(small_config());
    std::ostringstream os;
    write_csv(os, rows, default_alphas(), OutputMeta{});
    std::istringstream in(drop_first_line(drop_first_line(os.str())));
    std::string line;
    for (const auto& r : rows) {
        std::getline(in, line);
        const std::vector<double> want = record_values(r);
        std::stringstream cells(line);
        std::string cell;
        for (double w : want) {
            std::getline(cells, cell, ',');
            EXPECT_EQ(std::stod(cell), w);
        }
    }
}

TEST(Csv, BitsConvertEntropicColumnsOnly) {
    const auto rows = run_experiment(small_config());
    const auto cols = record_columns(default_alphas());
    const std::vector<double> nats = scaled_values(rows[1], cols, false);
    const std::vector<double> bits = scaled_values(rows[1], cols, true);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].entropic) {
            EXPECT_DOUBLE_EQ(bits[c], nats[c] / kLn2) << cols[c].name;
        } else {
            EXPECT_EQ(bits[c], nats[c]) << cols[c].name;
        }
    }
    EXPECT_NEAR(bits[1], 1.0, 1e-9);  // E at t = 1 is one bit
}

TEST(Json, RecordsAndColumns) {
    const auto rows = run_experiment(small_config());
    const nlohmann::json j = records_to_json(rows, default_alphas(), OutputMeta{7, true});
    EXPECT_EQ(j["meta"]["units"], "bits");
    EXPECT_EQ(j["meta"]["seed"], 7);
    EXPECT_EQ(j["columns"].size(), record_columns(default_alphas()).size());
    ASSERT_EQ(j["records"].size(), rows.size());
    EXPECT_EQ(j["records"][1]["t"], 1);
    EXPECT_NEAR(j["records"][1]["E"].get<double>(), rows[1].E / kLn2, 1e-15);
}

TEST(Output, RunAndWriteWithHaarSidecar) {
    ExperimentConfig c = small_config();
    c.output_path = temp_path("with_haar.json");
    c.output_format = OutputFormat::kJson;
    c.haar = HaarSettings{4, 5};
    run_and_write(c);
    const nlohmann::json out = nlohmann::json::parse(slurp(c.output_path));
    EXPECT_EQ(out["records"].size(), 4U);
    const nlohmann::json refs = nlohmann::json::parse(slurp(c.output_path + ".haar.json"));
    EXPECT_EQ(refs["samples"], 4);
    EXPECT_EQ(refs["partition"], "2/2/2");
    for (const char* m : {"E", "E_odd", "I_a0.5", "S_vN_AB"}) {
        EXPECT_TRUE(refs["refs"].contains(m)) << m;
        EXPECT_TRUE(refs["refs"][m].contains("mean"));
        EXPECT_TRUE(refs["refs"][m].contains("std_error"));
    }
    EXPECT_FALSE(fs::exists(c.output_path + ".tmp"));
}

TEST(Output, EmptyPathRejected) {
    ExperimentConfig c = small_config();
    EXPECT_KFIM_ERROR(run_and_write(c), ErrorCode::kConfig);
}

TEST(Output, AtomicWriteReplacesContents) {
    const std::string path = temp_path("nested/dir/file.txt");
    write_file_atomically(path, "one");
    write_file_atomically(path, "two");
    EXPECT_EQ(slurp(path), "two");
    EXPECT_FALSE(fs::exists(path + ".tmp"));
}

// ---------------------------------------------------------------------------
// verification suite used by the `verify` subcommand

TEST(Verification, AllChecksPass) {
    for (const auto& r : run_verification()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

}  // namespace
}  // namespace kfim
