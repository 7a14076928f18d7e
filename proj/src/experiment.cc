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

#include "parity/experiment.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "parity/errors.h"
#include "parity/fock.h"
#include "parity/parallel.h"

namespace parity {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename T>
T take(const json &section, const char *key, const std::string &path, T fallback) {
    if (!section.contains(key)) {
        return fallback;
    }
    try {
        return section.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError("config key '" + path + "." + key + "' has the wrong type");
    }
}

void reject_unknown(const json &section, const std::string &path, std::initializer_list<const char *> allowed) {
    if (!section.is_object()) {
        throw ConfigError("config section '" + path + "' must be an object");
    }
    for (const auto &[key, value] : section.items()) {
        bool ok = false;
        for (const char *a : allowed) {
            ok |= key == a;
        }
        if (!ok) {
            throw ConfigError("unknown config key '" + (path.empty() ? key : path + "." + key) + "'");
        }
    }
}

// X(theta, |beta|) for the TMSV interferometer in the closed form quoted with
// the operator-propagation result.
double reference_x(double theta, double beta, double phi, double r) {
    double b2 = beta * beta;
    return (11.0 + 16.0 * b2 * b2 + std::cos(2 * phi) - 16.0 * std::cosh(2 * r) +
            16.0 * b2 * std::cos(2 * theta - phi) * std::sin(phi) * std::sinh(2 * r) -
            (std::cos(2 * phi) - 5.0) * std::cosh(4 * r)) /
           16.0;
}

cdouble expected_asq(double phi, double r) {
    return std::polar(1.0, -phi) * std::cosh(r) * std::sinh(r) * std::sin(phi);
}

// Evaluates one check, turning exceptions into failures with a diagnostic.
template <typename Fn>
CheckResult run_check(const std::string &name, double tolerance, Fn &&fn) {
    CheckResult c;
    c.name = name;
    c.tolerance = tolerance;
    try {
        c.max_deviation = fn(c.detail);
        c.passed = c.max_deviation <= tolerance;
    } catch (const CutoffError &e) {
        c.passed = false;
        c.max_deviation = kNaN;
        c.detail = std::string("cutoff: ") + e.what();
    } catch (const std::exception &e) {
        c.passed = false;
        c.max_deviation = kNaN;
        c.detail = e.what();
    }
    return c;
}

std::vector<double> oracle_phases(const std::vector<double> &grid) {
    std::vector<double> out;
    size_t stride = std::max<size_t>(1, grid.size() / 8);
    for (size_t k = 0; k < grid.size(); k += stride) {
        out.push_back(grid[k]);
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (steps < 1) {
        throw ConfigError("steps must be >= 1 (got " + std::to_string(steps) + ")");
    }
    if (!(r >= 0) || !std::isfinite(r)) {
        throw ConfigError("r must be a finite gain >= 0");
    }
    if (!(beta_mag >= 0) || !std::isfinite(beta_mag)) {
        throw ConfigError("beta must be >= 0");
    }
    if (!std::isfinite(phi_start) || !std::isfinite(phi_stop)) {
        throw ConfigError("phi grid bounds must be finite (radians)");
    }
    if (cutoff < 8 || cutoff > 120) {
        throw ConfigError("cutoff must lie in [8, 120] (got " + std::to_string(cutoff) + ")");
    }
    if (shots < 1) {
        throw ConfigError("shots must be >= 1");
    }
    if (command == Command::kSweep && !(beta_mag > 0)) {
        throw ConfigError("sweep needs a live local oscillator: set --beta > 0");
    }
    if (command == Command::kSensitivity && !(r > 0)) {
        throw ConfigError("sensitivity needs r > 0: the signal does not depend on phi at r = 0");
    }
    if (command == Command::kMonteCarlo) {
        if (!(beta_mag > 0) || beta_mag > kMaxSampledBeta) {
            throw ConfigError("montecarlo needs 0 < beta <= 3 (Fock cutoff feasibility)");
        }
    }
}

std::vector<double> ExperimentConfig::phi_grid() const {
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(steps));
    for (int64_t i = 0; i < steps; i++) {
        grid.push_back(phi_start + static_cast<double>(i) * (phi_stop - phi_start) / static_cast<double>(steps));
    }
    return grid;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::kSweep:
            return "sweep";
        case Command::kSensitivity:
            return "sensitivity";
        case Command::kValidate:
            return "validate";
        case Command::kMonteCarlo:
            return "montecarlo";
    }
    return "sweep";
}

Command parse_command(const std::string &name) {
    for (Command c : {Command::kSweep, Command::kSensitivity, Command::kValidate, Command::kMonteCarlo}) {
        if (command_name(c) == name) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + name + "' (expected sweep, sensitivity, validate or montecarlo)");
}

std::string prescription_name(Prescription p) {
    return p == Prescription::kThree ? "three" : "four";
}

Prescription parse_prescription(const std::string &name) {
    if (name == "three") {
        return Prescription::kThree;
    }
    if (name == "four") {
        return Prescription::kFour;
    }
    throw ConfigError("prescription must be 'three' or 'four' (got '" + name + "')");
}

std::string format_name(OutputFormat f) {
    return f == OutputFormat::kCsv ? "csv" : "json";
}

OutputFormat parse_format(const std::string &name) {
    if (name == "csv") {
        return OutputFormat::kCsv;
    }
    if (name == "json") {
        return OutputFormat::kJson;
    }
    throw ConfigError("format must be 'csv' or 'json' (got '" + name + "')");
}

std::string error_model_name(ErrorModel m) {
    return m == ErrorModel::kDeltaMethod ? "delta" : "bootstrap";
}

ErrorModel parse_error_model(const std::string &name) {
    if (name == "delta") {
        return ErrorModel::kDeltaMethod;
    }
    if (name == "bootstrap") {
        return ErrorModel::kBootstrap;
    }
    throw ConfigError("error model must be 'delta' or 'bootstrap' (got '" + name + "')");
}

json config_to_json(const ExperimentConfig &c) {
    return json{
        {"command", command_name(c.command)},
        {"circuit", {{"r", c.r}}},
        {"phi_grid", {{"start", c.phi_start}, {"stop", c.phi_stop}, {"steps", c.steps}}},
        {"homodyne", {{"beta", c.beta_mag}, {"prescription", prescription_name(c.prescription)}}},
        {"montecarlo", {{"shots", c.shots}, {"seed", c.seed}, {"error_model", error_model_name(c.error_model)}}},
        {"oracle", {{"cutoff", c.cutoff}}},
        {"output", {{"path", c.output_path}, {"format", format_name(c.format)}}},
    };
}

ExperimentConfig config_from_json(const json &j, ExperimentConfig c) {
    reject_unknown(j, "", {"command", "circuit", "phi_grid", "homodyne", "montecarlo", "oracle", "output"});
    if (j.contains("command")) {
        c.command = parse_command(take<std::string>(j, "command", "", ""));
    }
    const json empty = json::object();
    auto section = [&](const char *name) -> const json & { return j.contains(name) ? j.at(name) : empty; };

    const json &circuit = section("circuit");
    reject_unknown(circuit, "circuit", {"r"});
    c.r = take(circuit, "r", "circuit", c.r);

    const json &grid = section("phi_grid");
    reject_unknown(grid, "phi_grid", {"start", "stop", "steps"});
    c.phi_start = take(grid, "start", "phi_grid", c.phi_start);
    c.phi_stop = take(grid, "stop", "phi_grid", c.phi_stop);
    c.steps = take(grid, "steps", "phi_grid", c.steps);

    const json &hom = section("homodyne");
    reject_unknown(hom, "homodyne", {"beta", "prescription"});
    c.beta_mag = take(hom, "beta", "homodyne", c.beta_mag);
    if (hom.contains("prescription")) {
        c.prescription = parse_prescription(take<std::string>(hom, "prescription", "homodyne", ""));
    }

    const json &mc = section("montecarlo");
    reject_unknown(mc, "montecarlo", {"shots", "seed", "error_model"});
    c.shots = take(mc, "shots", "montecarlo", c.shots);
    c.seed = take(mc, "seed", "montecarlo", c.seed);
    if (mc.contains("error_model")) {
        c.error_model = parse_error_model(take<std::string>(mc, "error_model", "montecarlo", ""));
    }

    const json &oracle = section("oracle");
    reject_unknown(oracle, "oracle", {"cutoff"});
    c.cutoff = take(oracle, "cutoff", "oracle", c.cutoff);

    const json &out = section("output");
    reject_unknown(out, "output", {"path", "format"});
    c.output_path = take(out, "path", "output", c.output_path);
    if (out.contains("format")) {
        c.format = parse_format(take<std::string>(out, "format", "output", ""));
    }
    return c;
}

std::string serialize_config(const ExperimentConfig &config) {
    return config_to_json(config).dump(2);
}

ExperimentConfig parse_config_text(const std::string &text, ExperimentConfig base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j, std::move(base));
}

ExperimentConfig load_config_file(const std::string &path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

Table run_sweep(const ExperimentConfig &config) {
    config.validate();
    const auto grid = config.phi_grid();
    const double n_bar = total_photons(config.r);
    Table t;
    t.columns = {"phi", "S_proxy", "S_closed_form", "parity_gaussian", "intensity"};
    t.rows.resize(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        double phi = grid[i];
        ProxyReadout readout = proxy_readout(bias_shift(phi), config.r, config.beta_mag, config.prescription);
        t.rows[i] = {phi, readout.signal, signal_closed_form(n_bar, phi), readout.parity_gaussian, readout.n_f};
    });
    double worst = 0;
    for (const auto &row : t.rows) {
        worst = std::max(worst, std::abs(row[1] - row[2]));
    }
    t.summary.push_back({"n_bar", format_double(n_bar)});
    t.summary.push_back({"max_abs_S_proxy_minus_closed_form", format_double(worst)});
    return t;
}

Table run_sensitivity(const ExperimentConfig &config) {
    config.validate();
    const auto grid = config.phi_grid();
    const double n_bar = total_photons(config.r);
    const double bound = 1.0 / std::sqrt(n_bar * (n_bar + 2.0));
    Table t;
    t.columns = {"phi", "delta_phi"};
    double best = std::numeric_limits<double>::infinity();
    bool near_zero = false;
    for (double phi : grid) {
        double dphi = kNaN;
        try {
            dphi = phase_sensitivity(config.r, phi).delta_phi;
        } catch (const UndefinedSensitivityError &) {
        }
        if (std::isfinite(dphi)) {
            best = std::min(best, dphi);
            near_zero |= std::abs(std::sin(phi)) <= 1e-2;
        }
        t.rows.push_back({phi, dphi});
    }
    t.summary.push_back({"n_bar", format_double(n_bar)});
    t.summary.push_back({"delta_phi_min", format_double(std::isfinite(best) ? best : kNaN)});
    t.summary.push_back({"bound_1_over_sqrt_n_n_plus_2", format_double(bound)});
    t.summary.push_back({"heisenberg_1_over_n", format_double(1.0 / n_bar)});
    t.summary.push_back({"at_minimum", near_zero ? "true" : "false"});
    t.summary.push_back({"sub_heisenberg", std::isfinite(best) && best < 1.0 / n_bar ? "true" : "false"});
    return t;
}

Table run_montecarlo(const ExperimentConfig &config) {
    config.validate();
    const auto grid = config.phi_grid();
    Table t;
    t.columns = {"phi", "S_estimate", "stderr", "shots"};
    t.rows.resize(grid.size());
    std::vector<std::string> notes(grid.size());
    ExperimentOptions options;
    options.cutoff = static_cast<size_t>(config.cutoff);
    options.error_model = config.error_model;
    options.max_workers = 1;
    parallel_for(grid.size(), [&](size_t i) {
        ShotPlan plan = ShotPlan::for_prescription(
            config.prescription, config.beta_mag, config.shots, substream_seed(config.seed, i));
        ProxyExperimentResult res = run_proxy_experiment(plan, grid[i], config.r, options);
        t.rows[i] = {grid[i], res.parity.mean, res.parity.std_error, static_cast<double>(res.parity.shots)};
        if (!res.valid) {
            notes[i] = res.diagnostic;
        }
    });
    size_t invalid = 0;
    for (const auto &n : notes) {
        invalid += !n.empty();
    }
    t.summary.push_back({"invalid_rows", std::to_string(invalid)});
    return t;
}

bool ValidationReport::all_passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

bool ValidationReport::cutoff_limited() const {
    for (const auto &c : checks) {
        if (!c.passed && c.detail.rfind("cutoff:", 0) == 0) {
            return true;
        }
    }
    return false;
}

ValidationReport run_validate(const ExperimentConfig &config) {
    config.validate();
    const auto grid = config.phi_grid();
    const double r = config.r;
    const double beta = config.beta_mag > 0 ? std::min(config.beta_mag, kMaxSampledBeta) : 2.0;
    const size_t cutoff = static_cast<size_t>(config.cutoff);
    ValidationReport report;

    report.checks.push_back(run_check("commutation_random_circuits", 1e-12, [&](std::string &detail) {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> angle(0, 2 * kPi), gain(0, 1);
        std::uniform_int_distribution<int> kind(0, 2), mode(0, 2), length(1, 12);
        double worst = 0;
        for (int trial = 0; trial < 100; trial++) {
            std::vector<CircuitElement> elements;
            int len = length(rng);
            for (int e = 0; e < len; e++) {
                size_t i = static_cast<size_t>(mode(rng));
                size_t j = (i + 1 + static_cast<size_t>(mode(rng) % 2)) % 3;
                switch (kind(rng)) {
                    case 0:
                        elements.push_back(BeamSplitter{i, j});
                        break;
                    case 1:
                        elements.push_back(PhaseShift{i, angle(rng)});
                        break;
                    default:
                        elements.push_back(TwoModeSqueezer{i, j, gain(rng)});
                }
            }
            worst = std::max(worst, compose(elements, 3).commutation_defect());
        }
        detail = "max |T K T^T - K| over 100 random compositions";
        return worst;
    }));

    report.checks.push_back(run_check("signal_equivalence", 1e-10, [&](std::string &detail) {
        double worst = 0;
        for (double phi : grid) {
            double s = proxy_readout(bias_shift(phi), r, beta, config.prescription).signal;
            worst = std::max(worst, std::abs(s - signal_closed_form(total_photons(r), phi)));
        }
        detail = "S_proxy vs 1/sqrt(1+n(n+2)sin^2 phi)";
        return worst;
    }));

    report.checks.push_back(run_check("asq_recovery", 1e-10, [&](std::string &detail) {
        double worst = 0;
        for (double phi : grid) {
            auto three = proxy_readout(phi, r, beta, Prescription::kThree).asq;
            worst = std::max(worst, std::abs(three - expected_asq(phi, r)));
        }
        detail = "three-measurement <a_f^dag2> vs e^{-i phi} cosh r sinh r sin phi";
        return worst;
    }));

    report.checks.push_back(run_check("prescription_equivalence", 1e-12, [&](std::string &detail) {
        double worst = 0;
        for (double phi : grid) {
            auto three = proxy_readout(phi, r, beta, Prescription::kThree).asq;
            auto four = proxy_readout(phi, r, beta, Prescription::kFour).asq;
            worst = std::max(worst, std::abs(three - four));
        }
        detail = "three-measurement vs four-phase recovery";
        return worst;
    }));

    report.checks.push_back(run_check("closed_form_x", 1e-10, [&](std::string &detail) {
        double worst = 0;
        for (double phi : oracle_phases(grid)) {
            MultiModeMoments state = mzi_output(phi, r);
            for (double theta : {0.0, kPi / 4, kPi / 2}) {
                for (double b : {0.0, 1.0, 2.0}) {
                    double x = x_measurement(state, theta, b).value;
                    worst = std::max(worst, std::abs(x - reference_x(theta, b, phi, r)));
                }
            }
        }
        detail = "moment-computed X vs closed form";
        return worst;
    }));

    report.checks.push_back(run_check("intensity_phase_independence", 1e-10, [&](std::string &detail) {
        double worst = 0;
        double target = std::sinh(r) * std::sinh(r);
        for (double phi : grid) {
            worst = std::max(worst, std::abs(mzi_output(phi, r).intensity(proxy_layout::kSignal2) - target));
        }
        detail = "<a_f^dag a_f> vs sinh^2 r";
        return worst;
    }));

    report.checks.push_back(run_check("parity_by_proxy_identity", 1e-12, [&](std::string &detail) {
        double worst = 0;
        for (double phi : grid) {
            auto readout = proxy_readout(phi, r, beta, config.prescription);
            worst = std::max(worst, std::abs(readout.parity_gaussian - readout.signal));
        }
        detail = "(pi/2) W(0,0) of reduced a_f vs proxy signal S";
        return worst;
    }));

    report.checks.push_back(run_check("wigner_parity_identity", 1e-8, [&](std::string &detail) {
        double worst = 0;
        worst = std::max(worst, wigner_parity_check(FockVector::basis({cutoff}, std::vector<size_t>{0}), 0).abs_diff);
        for (double b : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, wigner_parity_check(coherent_fock(b, cutoff), 0).abs_diff);
        }
        FockVector tmsv = tmsv_fock(r, cutoff);
        worst = std::max(worst, wigner_parity_check(tmsv, 0).abs_diff);
        FockVector smsv = apply_beamsplitter_fock(tmsv_fock(r, cutoff), 0, 1);
        worst = std::max(worst, wigner_parity_check(smsv, 0).abs_diff);
        detail = "W(0,0) from oracle moments vs (2/pi)<(-1)^N>: vacuum, coherent, thermal, squeezed";
        return worst;
    }));

    report.checks.push_back(run_check("oracle_agreement", 1e-6, [&](std::string &detail) {
        double worst = 0;
        const double target = std::sinh(r) * std::sinh(r);
        for (double phi : oracle_phases(grid)) {
            FockVector s = mzi_output_fock(phi, r, cutoff, 1e-8);
            double gaussian = parity_expectation(reduce_mode(mzi_output(phi, r), proxy_layout::kSignal2));
            worst = std::max(worst, std::abs(gaussian - mode_parity_fock(s, 1)));
            worst = std::max(worst, std::abs(mode_moments_fock(s, 1).n_mean - target));
        }
        detail = "Gaussian parity and intensity vs truncated Fock oracle";
        return worst;
    }));

    report.checks.push_back(run_check("joint_counts_vs_wick", 1e-6, [&](std::string &detail) {
        double worst = 0;
        for (double theta : {0.0, kPi / 4}) {
            double phi = grid.front();
            FockVector s = proxy_output_fock(phi, theta, r, beta, cutoff, 1e-8);
            auto table = joint_count_distribution(s, proxy_layout::kDetectorC, proxy_layout::kDetectorD);
            double x = x_measurement(mzi_output(phi, r), theta, beta).value;
            worst = std::max(worst, std::abs(table.mean_product() - x / 4.0));
        }
        detail = "E[n_c n_d] from oracle counts vs X/4 from Wick moments";
        return worst;
    }));

    return report;
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void write_header(std::ostream &out, const ExperimentConfig &config) {
    out << "# parity-proxy " << kVersion << "\n";
    out << "# command: " << command_name(config.command) << "\n";
    std::istringstream lines(serialize_config(config));
    std::string line;
    while (std::getline(lines, line)) {
        out << "# " << line << "\n";
    }
}

json number_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

}  // namespace

void write_csv(std::ostream &out, const ExperimentConfig &config, const Table &table) {
    write_header(out, config);
    for (size_t k = 0; k < table.columns.size(); k++) {
        out << (k ? "," : "") << table.columns[k];
    }
    out << "\n";
    for (const auto &row : table.rows) {
        for (size_t k = 0; k < row.size(); k++) {
            out << (k ? "," : "") << format_double(row[k]);
        }
        out << "\n";
    }
    for (const auto &[key, value] : table.summary) {
        out << "# summary " << key << " = " << value << "\n";
    }
}

void write_json(std::ostream &out, const ExperimentConfig &config, const Table &table) {
    json rows = json::array();
    for (const auto &row : table.rows) {
        json r = json::array();
        for (double x : row) {
            r.push_back(number_or_null(x));
        }
        rows.push_back(std::move(r));
    }
    json summary = json::object();
    for (const auto &[key, value] : table.summary) {
        summary[key] = value;
    }
    json doc{
        {"tool", "parity-proxy"},
        {"version", kVersion},
        {"config", config_to_json(config)},
        {"columns", table.columns},
        {"rows", rows},
        {"summary", summary},
    };
    out << doc.dump(2) << "\n";
}

void write_report_csv(std::ostream &out, const ExperimentConfig &config, const ValidationReport &report) {
    write_header(out, config);
    out << "check,passed,max_deviation,tolerance,detail\n";
    for (const auto &c : report.checks) {
        std::string detail = c.detail;
        for (auto &ch : detail) {
            if (ch == '"') {
                ch = '\'';
            }
        }
        out << c.name << "," << (c.passed ? "true" : "false") << "," << format_double(c.max_deviation) << ","
            << format_double(c.tolerance) << ",\"" << detail << "\"\n";
    }
    out << "# summary all_passed = " << (report.all_passed() ? "true" : "false") << "\n";
}

void write_report_json(std::ostream &out, const ExperimentConfig &config, const ValidationReport &report) {
    json checks = json::array();
    for (const auto &c : report.checks) {
        checks.push_back({
            {"check", c.name},
            {"passed", c.passed},
            {"max_deviation", number_or_null(c.max_deviation)},
            {"tolerance", c.tolerance},
            {"detail", c.detail},
        });
    }
    json doc{
        {"tool", "parity-proxy"},
        {"version", kVersion},
        {"config", config_to_json(config)},
        {"checks", checks},
        {"all_passed", report.all_passed()},
    };
    out << doc.dump(2) << "\n";
}

}  // namespace parity
