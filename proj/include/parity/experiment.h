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

#ifndef PARITY_EXPERIMENT_H
#define PARITY_EXPERIMENT_H

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "parity/homodyne.h"
#include "parity/montecarlo.h"

namespace parity {

inline constexpr const char *kVersion = "0.1.0";

/// Invalid or inconsistent experiment configuration. Maps to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Command { kSweep, kSensitivity, kValidate, kMonteCarlo };
enum class OutputFormat { kCsv, kJson };

/// Everything a CLI run needs. Angles are radians, gains dimensionless.
struct ExperimentConfig {
    Command command = Command::kSweep;
    double r = 0.5;
    double phi_start = 0;
    double phi_stop = 6.283185307179586;
    int64_t steps = 200;
    double beta_mag = 2;
    Prescription prescription = Prescription::kThree;
    int64_t shots = 100000;
    uint64_t seed = 1;
    int64_t cutoff = 60;
    std::string output_path = "-";
    OutputFormat format = OutputFormat::kCsv;
    ErrorModel error_model = ErrorModel::kDeltaMethod;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    /// Half-open grid: phi_i = start + i (stop - start) / steps.
    std::vector<double> phi_grid() const;

    bool operator==(const ExperimentConfig &) const = default;
};

std::string command_name(Command c);
Command parse_command(const std::string &name);
std::string prescription_name(Prescription p);
Prescription parse_prescription(const std::string &name);
std::string format_name(OutputFormat f);
OutputFormat parse_format(const std::string &name);
std::string error_model_name(ErrorModel m);
ErrorModel parse_error_model(const std::string &name);

/// Nested JSON form:
///   {"command": ..., "circuit": {"r"}, "phi_grid": {"start", "stop", "steps"},
///    "homodyne": {"beta", "prescription"}, "montecarlo": {"shots", "seed", "error_model"},
///    "oracle": {"cutoff"}, "output": {"path", "format"}}
/// Missing keys keep the values of `base`; unknown keys are rejected.
nlohmann::json config_to_json(const ExperimentConfig &config);
ExperimentConfig config_from_json(const nlohmann::json &j, ExperimentConfig base = {});
std::string serialize_config(const ExperimentConfig &config);
ExperimentConfig parse_config_text(const std::string &text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string &path, ExperimentConfig base = {});

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> summary;
};

/// Columns phi, S_proxy, S_closed_form, parity_gaussian, intensity.
Table run_sweep(const ExperimentConfig &config);
/// Columns phi, delta_phi plus summary delta_phi_min, bound, at_minimum, ...
Table run_sensitivity(const ExperimentConfig &config);
/// Columns phi, S_estimate, stderr, shots.
Table run_montecarlo(const ExperimentConfig &config);

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_deviation = 0;
    double tolerance = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    /// True when some failure came from an insufficient Fock cutoff.
    bool cutoff_limited() const;
};

ValidationReport run_validate(const ExperimentConfig &config);

/// CSV with a '#' header block (tool, version, full config), one header row and
/// values printed with 17 significant digits.
void write_csv(std::ostream &out, const ExperimentConfig &config, const Table &table);
void write_json(std::ostream &out, const ExperimentConfig &config, const Table &table);
void write_report_csv(std::ostream &out, const ExperimentConfig &config, const ValidationReport &report);
void write_report_json(std::ostream &out, const ExperimentConfig &config, const ValidationReport &report);

/// 17 significant digits; nan/inf spelled as such.
std::string format_double(double x);

}  // namespace parity

#endif
