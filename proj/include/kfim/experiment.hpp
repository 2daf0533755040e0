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

// Config-driven time sweeps, figure presets and CSV/JSON emission.

#ifndef KFIM_EXPERIMENT_HPP
#define KFIM_EXPERIMENT_HPP

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "kfim/circuit.hpp"
#include "kfim/haar.hpp"
#include "kfim/measures.hpp"
#include "kfim/record.hpp"
#include "kfim/states.hpp"

namespace kfim {

enum class OutputFormat { kCsv, kJson };

struct HaarSettings {
    int samples = 200;
    std::uint64_t seed = 1234;
};

struct ExperimentConfig {
    CircuitParams circuit;
    ProductStateSpec state;
    TriPartition partition;
    int t_max = 0;
    std::vector<double> alphas = default_alphas();
    double epsilon = 0.0;  // shifts J -> J - eps, b -> b - eps
    std::optional<HaarSettings> haar;
    std::string output_path;
    OutputFormat output_format = OutputFormat::kCsv;
    bool bits = false;

    void validate() const {
        circuit.validate();
        require(state.sites() == circuit.L, ErrorCode::kDimensionMismatch,
                "state has " + std::to_string(state.sites()) + " sites but circuit has L=" + std::to_string(circuit.L));
        state.validate();
        partition.validate(circuit.L);
        require(t_max >= 0, ErrorCode::kInvalidArgument, "t_max must be >= 0");
        normalize_alphas(alphas);
        require(epsilon >= 0.0, ErrorCode::kInvalidArgument, "epsilon must be >= 0");
        if (haar) require(haar->samples >= 2, ErrorCode::kInvalidArgument, "haar.samples must be >= 2");
    }

    CircuitParams effective_circuit() const {
        CircuitParams p = circuit;
        p.J -= epsilon;
        p.b -= epsilon;
        return p;
    }
};

/// One record per t in 0..t_max.
inline std::vector<EntanglementRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    const CircuitParams params = config.effective_circuit();
    const std::vector<double> alphas = normalize_alphas(config.alphas);
    std::vector<EntanglementRecord> out;
    out.reserve(static_cast<std::size_t>(config.t_max) + 1);
    StateVector psi = product_state(config.state);
    for (int t = 0; t <= config.t_max; ++t) {
        if (t > 0) psi = apply_floquet(psi, params);
        out.push_back(compute_record(psi, config.partition, alphas, t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Presets

struct PresetInfo {
    const char* name;
    double theta;
    double phi;
    double h;
    int ab_numerator;  // L_A = L_B = round(L * num / den)
    int ab_denominator;
    int default_L;
    bool haar;
    const char* description;
};

inline const std::vector<PresetInfo>& preset_table() {
    static const std::vector<PresetInfo> table{
        {"fig1a", kPi / 2, 0.0, 1.0, 1, 3, 12, true, "transverse class"},
        {"fig1b", 0.0, 0.0, 1.0, 1, 3, 12, true, "longitudinal class"},
        {"fig1c", kPi / 2, 0.0, 0.0, 1, 3, 12, true, "integrable, h = 0"},
        {"fig1d", kPi / 2, 0.0, 0.1, 1, 3, 12, true, "weak integrability breaking, h = 0.1"},
        {"fig2a", 1.0, 1.0, 1.0, 1, 3, 12, true, "generic theta=1, phi=1"},
        {"fig2b", 2.0, 2.0, 1.0, 1, 3, 12, true, "generic theta=2, phi=2"},
        {"fig2c", 2.5, 1.0, 1.0, 1, 3, 12, true, "generic theta=2.5, phi=1"},
        {"fig2d", 2.5, 3.0, 1.0, 1, 3, 12, true, "generic theta=2.5, phi=3"},
        {"fig3a", kPi / 2, 0.0, 1.0, 6, 30, 15, false, "transverse class, L_A = L_B = 6 of 30"},
        {"fig3b", kPi / 2, 0.0, 1.0, 7, 30, 15, false, "transverse class, L_A = L_B = 7 of 30"},
        {"fig3c", 1.0, 1.0, 1.0, 6, 30, 15, false, "generic theta=phi=1, L_A = L_B = 6 of 30"},
        {"fig3d", 1.0, 1.0, 1.0, 7, 30, 15, false, "generic theta=phi=1, L_A = L_B = 7 of 30"},
    };
    return table;
}

inline constexpr int kPresetTMax = 20;

inline ExperimentConfig preset(const std::string& name, std::optional<int> L_override = std::nullopt) {
    const PresetInfo* info = nullptr;
    for (const auto& p : preset_table())
        if (name == p.name) info = &p;
    if (info == nullptr) {
        std::string valid;
        for (const auto& p : preset_table()) valid += (valid.empty() ? "" : ", ") + std::string(p.name);
        throw Error(ErrorCode::kUnknownPreset, "unknown preset '" + name + "'; valid names: " + valid);
    }
    const int L = L_override.value_or(info->default_L);
    require(L >= 3, ErrorCode::kInvalidArgument, "preset needs L >= 3");
    int ab = 0;
    if (info->ab_numerator * 3 == info->ab_denominator) {
        require(L % 3 == 0, ErrorCode::kInvalidArgument,
                "preset " + name + " needs an equal tripartition, L=" + std::to_string(L) + " is not divisible by 3");
        ab = L / 3;
    } else {
        ab = static_cast<int>(std::lround(static_cast<double>(L) * info->ab_numerator / info->ab_denominator));
    }
    require(ab >= 1 && L - 2 * ab >= 1, ErrorCode::kInvalidArgument,
            "preset " + name + " cannot be scaled to L=" + std::to_string(L));

    ExperimentConfig cfg;
    cfg.circuit = CircuitParams::dual_point(L, info->h);
    cfg.state = ProductStateSpec::uniform(L, info->theta, info->phi);
    cfg.partition = {ab, ab, L - 2 * ab};
    cfg.t_max = kPresetTMax;
    if (info->haar) cfg.haar = HaarSettings{};
    cfg.output_path = name + "_L" + std::to_string(L) + ".csv";
    return cfg;
}

// ---------------------------------------------------------------------------
// Config (de)serialization

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["circuit"] = {{"L", c.circuit.L}, {"J", c.circuit.J}, {"b", c.circuit.b}, {"h", c.circuit.h}, {"bc", "periodic"}};
    j["state"] = {{"thetas", c.state.thetas}, {"phis", c.state.phis}};
    j["partition"] = {{"L_A", c.partition.L_A}, {"L_B", c.partition.L_B}, {"L_C", c.partition.L_C}};
    j["t_max"] = c.t_max;
    j["alphas"] = c.alphas;
    j["epsilon"] = c.epsilon;
    j["haar"] = c.haar ? nlohmann::json{{"samples", c.haar->samples}, {"seed", c.haar->seed}} : nlohmann::json(nullptr);
    j["output_path"] = c.output_path;
    j["output_format"] = c.output_format == OutputFormat::kCsv ? "csv" : "json";
    j["bits"] = c.bits;
    return j;
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::kCsv;
    if (s == "json") return OutputFormat::kJson;
    throw Error(ErrorCode::kConfig, "output format must be 'csv' or 'json', got '" + s + "'");
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    try {
        ExperimentConfig c;
        const auto& circ = j.at("circuit");
        c.circuit.L = circ.at("L").get<int>();
        c.circuit.J = circ.value("J", kQuarterPi);
        c.circuit.b = circ.value("b", -kQuarterPi);
        const auto& h = circ.at("h");
        c.circuit.h = h.is_number() ? std::vector<double>(c.circuit.L, h.get<double>()) : h.get<std::vector<double>>();
        const std::string bc = circ.value("bc", std::string("periodic"));
        require(bc == "periodic", ErrorCode::kConfig, "only periodic boundary conditions are supported, got '" + bc + "'");
        const auto& st = j.at("state");
        c.state.thetas = st.at("thetas").get<std::vector<double>>();
        c.state.phis = st.at("phis").get<std::vector<double>>();
        const auto& part = j.at("partition");
        c.partition = {part.at("L_A").get<int>(), part.at("L_B").get<int>(), part.at("L_C").get<int>()};
        c.t_max = j.at("t_max").get<int>();
        if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
        c.epsilon = j.value("epsilon", 0.0);
        if (j.contains("haar") && !j.at("haar").is_null()) {
            HaarSettings hs;
            hs.samples = j.at("haar").value("samples", hs.samples);
            hs.seed = j.at("haar").value("seed", hs.seed);
            c.haar = hs;
        }
        c.output_path = j.value("output_path", std::string());
        c.output_format = parse_format(j.value("output_format", std::string("csv")));
        c.bits = j.value("bits", false);
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kConfig, std::string("malformed config: ") + e.what());
    }
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::kIo, "cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kConfig, "config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Output

struct OutputMeta {
    std::uint64_t seed = 0;
    bool bits = false;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string format_cell(double value, bool integral) {
    if (integral) return std::to_string(static_cast<long long>(std::llround(value)));
    return format_number(value);
}

inline std::vector<double> scaled_values(const EntanglementRecord& r, const std::vector<Column>& cols, bool bits) {
    std::vector<double> v = record_values(r);
    if (bits)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c].entropic) v[c] /= kLn2;
    return v;
}

inline bool is_count_column(const std::string& name) {
    return name == "t" || name == "N_plus" || name == "N_minus" || name == "N_zero";
}

/// UTF-8 CSV: one comment line (the only line that varies between identical runs), one header row.
inline void write_csv(std::ostream& os, const std::vector<EntanglementRecord>& records, const std::vector<double>& alphas,
                      const OutputMeta& meta) {
    const std::vector<Column> cols = record_columns(alphas);
    os << "# seed=" << meta.seed << ", version=" << kVersion << ", units=" << (meta.bits ? "bits" : "nats")
       << ", generated=" << utc_timestamp() << '\n';
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c].name;
    os << '\n';
    for (const auto& r : records) {
        const std::vector<double> v = scaled_values(r, cols, meta.bits);
        for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << format_cell(v[c], is_count_column(cols[c].name));
        os << '\n';
    }
}

inline nlohmann::json records_to_json(const std::vector<EntanglementRecord>& records, const std::vector<double>& alphas,
                                      const OutputMeta& meta) {
    const std::vector<Column> cols = record_columns(alphas);
    nlohmann::json j;
    j["meta"] = {{"seed", meta.seed}, {"version", kVersion}, {"units", meta.bits ? "bits" : "nats"},
                 {"generated", utc_timestamp()}};
    nlohmann::json names = nlohmann::json::array();
    for (const auto& c : cols) names.push_back(c.name);
    j["columns"] = names;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
        const std::vector<double> v = scaled_values(r, cols, meta.bits);
        nlohmann::json row;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (is_count_column(cols[c].name)) {
                row[cols[c].name] = std::llround(v[c]);
            } else {
                row[cols[c].name] = v[c];
            }
        }
        rows.push_back(row);
    }
    j["records"] = rows;
    return j;
}

/// Writes through a temporary sibling and renames it into place.
inline void write_file_atomically(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
        out << contents;
        require(static_cast<bool>(out), ErrorCode::kIo, "write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

inline std::string render_records(const std::vector<EntanglementRecord>& records, const std::vector<double>& alphas,
                                  OutputFormat format, const OutputMeta& meta) {
    if (format == OutputFormat::kJson) return records_to_json(records, alphas, meta).dump(2) + "\n";
    std::ostringstream os;
    write_csv(os, records, alphas, meta);
    return os.str();
}

inline std::vector<std::string> entropic_measures(const std::vector<double>& alphas) {
    std::vector<std::string> out;
    for (const auto& c : record_columns(alphas))
        if (c.entropic) out.push_back(c.name);
    return out;
}

inline nlohmann::json haar_to_json(int L, const TriPartition& part, const HaarSettings& hs,
                                   const std::map<std::string, HaarEstimate>& refs, bool bits) {
    const double scale = bits ? 1.0 / kLn2 : 1.0;
    nlohmann::json j;
    j["L"] = L;
    j["partition"] = part.to_label();
    j["samples"] = hs.samples;
    j["seed"] = hs.seed;
    j["units"] = bits ? "bits" : "nats";
    nlohmann::json r;
    for (const auto& [name, est] : refs) r[name] = {{"mean", est.mean * scale}, {"std_error", est.std_error * scale}};
    j["refs"] = r;
    return j;
}

/// Runs the config, writes the records and (with haar settings) a `<output>.haar.json` sidecar.
inline std::vector<EntanglementRecord> run_and_write(const ExperimentConfig& config) {
    const std::vector<EntanglementRecord> records = run_experiment(config);
    const OutputMeta meta{config.haar ? config.haar->seed : 0, config.bits};
    const std::vector<double> alphas = normalize_alphas(config.alphas);
    require(!config.output_path.empty(), ErrorCode::kConfig, "output_path is empty");
    write_file_atomically(config.output_path, render_records(records, alphas, config.output_format, meta));
    if (config.haar) {
        const auto refs = haar_reference(config.circuit.L, config.partition, entropic_measures(alphas),
                                         config.haar->samples, config.haar->seed, alphas);
        write_file_atomically(config.output_path + ".haar.json",
                              haar_to_json(config.circuit.L, config.partition, *config.haar, refs, config.bits).dump(2) +
                                  "\n");
    }
    return records;
}

}  // namespace kfim

#endif  // KFIM_EXPERIMENT_HPP
