// Copyright 2026 The parity-proxy Authors
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

// Command-line driver: parity-proxy {sweep|sensitivity|validate|montecarlo} [flags]

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "parity/errors.h"
#include "parity/experiment.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCutoff = 4;

struct Flags {
    std::optional<double> r, phi_start, phi_stop, beta;
    std::optional<int64_t> steps, shots, cutoff;
    std::optional<uint64_t> seed;
    std::optional<std::string> prescription, out, format, error_model, config;
};

void add_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--r", f.r, "OPA gain r (dimensionless, >= 0)");
    cmd->add_option("--phi-start", f.phi_start, "first probe phase in radians");
    cmd->add_option("--phi-stop", f.phi_stop, "end of the phase grid in radians (excluded)");
    cmd->add_option("--steps", f.steps, "number of grid points (>= 1)");
    cmd->add_option("--beta", f.beta, "local oscillator amplitude |beta| (>= 0)");
    cmd->add_option("--prescription", f.prescription, "X recovery schedule")->check(CLI::IsMember({"three", "four"}));
    cmd->add_option("--shots", f.shots, "shots per measurement setting (montecarlo)");
    cmd->add_option("--seed", f.seed, "master RNG seed");
    cmd->add_option("--cutoff", f.cutoff, "per-mode Fock cutoff for oracle paths, in [8, 120]");
    cmd->add_option("--out", f.out, "output file, '-' for stdout");
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--error-model", f.error_model, "Monte-Carlo error bars")
        ->check(CLI::IsMember({"delta", "bootstrap"}));
    cmd->add_option("--config", f.config, "JSON config file; explicit flags override it");
}

parity::ExperimentConfig resolve(parity::Command command, const Flags &f) {
    parity::ExperimentConfig c;
    if (f.config) {
        c = parity::load_config_file(*f.config);
    }
    c.command = command;
    if (f.r) c.r = *f.r;
    if (f.phi_start) c.phi_start = *f.phi_start;
    if (f.phi_stop) c.phi_stop = *f.phi_stop;
    if (f.steps) c.steps = *f.steps;
    if (f.beta) c.beta_mag = *f.beta;
    if (f.prescription) c.prescription = parity::parse_prescription(*f.prescription);
    if (f.shots) c.shots = *f.shots;
    if (f.seed) c.seed = *f.seed;
    if (f.cutoff) c.cutoff = *f.cutoff;
    if (f.out) c.output_path = *f.out;
    if (f.format) c.format = parity::parse_format(*f.format);
    if (f.error_model) c.error_model = parity::parse_error_model(*f.error_model);
    c.validate();
    return c;
}

template <typename Write>
void emit(const parity::ExperimentConfig &c, Write &&write) {
    if (c.output_path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream file(c.output_path, std::ios::binary);
    if (!file) {
        throw parity::ConfigError("cannot open output file '" + c.output_path + "'");
    }
    write(file);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "Parity-by-proxy simulator for a two-mode squeezed-vacuum Mach-Zehnder interferometer.\n"
        "Angles are in radians; gains and amplitudes are dimensionless.\n"
        "Exit codes: 0 success, 2 config error, 3 validation failure, 4 Fock cutoff too small."};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<CLI::App *, parity::Command>> commands;
    for (auto [name, cmd, help] : {
             std::tuple{"sweep", parity::Command::kSweep, "proxy signal, closed form, Gaussian parity and intensity vs phi"},
             std::tuple{"sensitivity", parity::Command::kSensitivity, "phase sensitivity delta_phi vs phi"},
             std::tuple{"validate", parity::Command::kValidate, "run the cross-module invariant checks"},
             std::tuple{"montecarlo", parity::Command::kMonteCarlo, "finite-shot proxy parity estimates vs phi"},
         }) {
        CLI::App *sub = app.add_subcommand(name, help);
        add_flags(sub, flags);
        commands.emplace_back(sub, cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        parity::Command command = parity::Command::kSweep;
        for (auto [sub, cmd] : commands) {
            if (sub->parsed()) {
                command = cmd;
            }
        }
        parity::ExperimentConfig config = resolve(command, flags);
        if (command == parity::Command::kValidate) {
            parity::ValidationReport report = parity::run_validate(config);
            emit(config, [&](std::ostream &out) {
                if (config.format == parity::OutputFormat::kJson) {
                    parity::write_report_json(out, config, report);
                } else {
                    parity::write_report_csv(out, config, report);
                }
            });
            for (const auto &c : report.checks) {
                if (!c.passed) {
                    std::cerr << "FAILED " << c.name << ": " << c.detail << "\n";
                }
            }
            return report.all_passed() ? 0 : kExitValidation;
        }
        parity::Table table;
        switch (command) {
            case parity::Command::kSensitivity:
                table = parity::run_sensitivity(config);
                break;
            case parity::Command::kMonteCarlo:
                table = parity::run_montecarlo(config);
                break;
            default:
                table = parity::run_sweep(config);
        }
        emit(config, [&](std::ostream &out) {
            if (config.format == parity::OutputFormat::kJson) {
                parity::write_json(out, config, table);
            } else {
                parity::write_csv(out, config, table);
            }
        });
        return 0;
    } catch (const parity::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const parity::CutoffError &e) {
        std::cerr << "numerical infeasibility: " << e.what() << "\n";
        return kExitCutoff;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
