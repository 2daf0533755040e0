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

// kfim: command-line front end for the kicked-field Ising entanglement toolkit.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kfim/kfim.hpp"

namespace {

kfim::TriPartition parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            parts.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw kfim::Error(kfim::ErrorCode::kInvalidArgument, "partition entry '" + item + "' is not an integer");
        }
    }
    kfim::require(parts.size() == 3, kfim::ErrorCode::kInvalidArgument, "--partition expects a,b,c");
    return {parts[0], parts[1], parts[2]};
}

int run_config(const std::string& path, const std::string& out_override) {
    kfim::ExperimentConfig cfg = kfim::load_config(path);
    if (!out_override.empty()) cfg.output_path = out_override;
    const auto records = kfim::run_and_write(cfg);
    std::cerr << "wrote " << records.size() << " rows to " << cfg.output_path << "\n";
    return 0;
}

int run_preset(const std::string& name, std::optional<int> L, double epsilon, const std::string& out,
               const std::string& format, bool bits, std::optional<int> t_max, bool no_haar, bool print_config) {
    kfim::ExperimentConfig cfg = kfim::preset(name, L);
    cfg.epsilon = epsilon;
    cfg.bits = bits;
    cfg.output_format = kfim::parse_format(format);
    if (t_max) cfg.t_max = *t_max;
    if (no_haar) cfg.haar.reset();
    if (!out.empty()) {
        cfg.output_path = out;
    } else if (cfg.output_format == kfim::OutputFormat::kJson) {
        cfg.output_path = cfg.output_path.substr(0, cfg.output_path.size() - 4) + ".json";
    }
    if (print_config) {
        std::cout << kfim::config_to_json(cfg).dump(2) << "\n";
        return 0;
    }
    const auto records = kfim::run_and_write(cfg);
    std::cerr << "wrote " << records.size() << " rows to " << cfg.output_path << "\n";
    return 0;
}

int run_haar(int L, const std::string& partition, int samples, std::uint64_t seed, const std::vector<double>& alphas,
             bool bits) {
    const kfim::TriPartition part = parse_partition(partition);
    const auto normalized = kfim::normalize_alphas(alphas);
    const auto refs = kfim::haar_reference(L, part, kfim::entropic_measures(normalized), samples, seed, normalized);
    std::cout << kfim::haar_to_json(L, part, kfim::HaarSettings{samples, seed}, refs, bits).dump(2) << "\n";
    return 0;
}

int run_verify() {
    bool ok = true;
    for (const auto& r : kfim::run_verification()) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  (" << r.detail << ")\n";
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all checks passed\n" : "verification FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulation of mixed-state entanglement in the kicked-field Ising model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
    run->add_option("--config", config_path, "Path to the JSON config")->required();
    run->add_option("--out", run_out, "Override output_path from the config");

    std::string preset_name;
    std::optional<int> preset_L;
    std::optional<int> preset_tmax;
    double epsilon = 0.0;
    std::string preset_out;
    std::string format = "csv";
    bool bits = false;
    bool no_haar = false;
    bool print_config = false;
    auto* pre = app.add_subcommand("preset", "Run a figure preset");
    pre->add_option("name", preset_name, "fig1a..fig1d, fig2a..fig2d, fig3a..fig3d")->required();
    pre->add_option("--L", preset_L, "Total chain length (keeps the preset's partition ratios)");
    pre->add_option("--epsilon", epsilon, "Dual-point perturbation: J = pi/4 - eps, b = -pi/4 - eps");
    pre->add_option("--out", preset_out, "Output path");
    pre->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    pre->add_option("--t-max", preset_tmax, "Number of Floquet periods");
    pre->add_flag("--bits", bits, "Report entropic columns in bits instead of nats");
    pre->add_flag("--no-haar", no_haar, "Skip the Haar reference sidecar");
    pre->add_flag("--print-config", print_config, "Print the resolved config as JSON and exit");

    int haar_L = 12;
    std::string haar_partition = "4,4,4";
    int haar_samples = 200;
    std::uint64_t haar_seed = 1234;
    std::vector<double> haar_alphas = kfim::default_alphas();
    bool haar_bits = false;
    auto* haar = app.add_subcommand("haar", "Sample Haar-random reference values (JSON to stdout)");
    haar->add_option("--L", haar_L, "Total chain length")->required();
    haar->add_option("--partition", haar_partition, "L_A,L_B,L_C")->required();
    haar->add_option("--samples", haar_samples, "Number of Haar states");
    haar->add_option("--seed", haar_seed, "Base seed");
    haar->add_option("--alphas", haar_alphas, "Renyi indices")->delimiter(',');
    haar->add_flag("--bits", haar_bits, "Report in bits");

    app.add_subcommand("verify", "Run engine cross-checks and exact early-time identities");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return run_config(config_path, run_out);
        if (app.got_subcommand("preset"))
            return run_preset(preset_name, preset_L, epsilon, preset_out, format, bits, preset_tmax, no_haar,
                              print_config);
        if (app.got_subcommand("haar"))
            return run_haar(haar_L, haar_partition, haar_samples, haar_seed, haar_alphas, haar_bits);
        if (app.got_subcommand("verify")) return run_verify();
    } catch (const kfim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
