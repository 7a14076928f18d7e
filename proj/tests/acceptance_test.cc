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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.h"
#include "parity/circuit.h"
#include "parity/experiment.h"
#include "parity/fock.h"
#include "parity/gaussian.h"
#include "parity/homodyne.h"
#include "parity/montecarlo.h"

namespace parity {
namespace {

using oracle::kPi;

constexpr double kSignalTol = 1e-10;
constexpr double kAsqTol = 1e-10;
constexpr double kPrescriptionTol = 1e-12;
constexpr double kClosedFormXTol = 1e-10;
constexpr double kIntensityMomentTol = 1e-10;
constexpr double kIntensityOracleTol = 1e-6;
constexpr size_t kIntensityOracleCutoff = 40;
constexpr double kIntensityOracleTail = 1e-7;
constexpr double kWignerParityTol = 1e-8;
constexpr double kWignerParityTail = 1e-12;
constexpr double kSensitivityRelTol = 1e-2;
constexpr double kSymplecticTol = 1e-12;
constexpr double kMonteCarloSigmas = 5;
constexpr double kStderrRatioLow = 7;
constexpr double kStderrRatioHigh = 13;

constexpr double kSignalBudget = 1.0;
constexpr double kWignerParityBudget = 10.0;
constexpr double kMonteCarloBudget = 60.0;

struct Outcome {
    bool passed = true;
    std::string detail;
};

std::vector<double> phi_grid(int steps) {
    std::vector<double> g;
    for (int k = 0; k < steps; k++) {
        g.push_back(2 * kPi * k / steps);
    }
    return g;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

Outcome signal_equivalence() {
    double worst = 0;
    for (double r : {0.1, 0.5, 1.0}) {
        for (double phi : phi_grid(200)) {
            auto readout = proxy_readout(bias_shift(phi), r, 2.0, Prescription::kThree);
            worst = std::max(worst, std::abs(readout.signal - signal_closed_form(total_photons(r), phi)));
        }
    }
    return {worst <= kSignalTol, "max |S_proxy - S_closed| = " + sci(worst) + " (tol " + sci(kSignalTol) + ")"};
}

Outcome output_moment_recovery() {
    double worst = 0, worst_pair = 0;
    const double beta = 2.0;
    for (double r : {0.1, 0.5, 1.0}) {
        for (double phi : phi_grid(200)) {
            double circuit_phi = bias_shift(phi);
            auto state = mzi_output(circuit_phi, r);
            std::vector<XMeasurement> three, four;
            for (auto [theta, b] : prescription_settings(Prescription::kThree, beta)) {
                three.push_back(x_measurement(state, theta, b));
            }
            for (auto [theta, b] : prescription_settings(Prescription::kFour, beta)) {
                four.push_back(x_measurement(state, theta, b));
            }
            cdouble a3 = recover_asq(Prescription::kThree, three, beta);
            cdouble a4 = recover_asq(Prescription::kFour, four, beta);
            worst = std::max(worst, std::abs(a3 - oracle::reference_asq(circuit_phi, r)));
            worst_pair = std::max(worst_pair, std::abs(a3 - a4));
        }
    }
    bool ok = worst <= kAsqTol && worst_pair <= kPrescriptionTol;
    return {ok, "three-setting vs closed form " + sci(worst) + " (tol " + sci(kAsqTol) + "), four vs three " +
                    sci(worst_pair) + " (tol " + sci(kPrescriptionTol) + ")"};
}

Outcome closed_form_x() {
    double worst = 0;
    for (double theta : {0.0, kPi / 4, kPi / 2}) {
        for (double beta : {0.0, 1.0, 2.0}) {
            for (double phi : {0.0, kPi / 6, kPi / 2}) {
                for (double r : {0.2, 0.6}) {
                    double x = x_measurement(mzi_output(phi, r), theta, beta).value;
                    worst = std::max(worst, std::abs(x - oracle::reference_x(theta, beta, phi, r)));
                }
            }
        }
    }
    return {worst <= kClosedFormXTol, "max |X - X_closed| = " + sci(worst) + " (tol " + sci(kClosedFormXTol) + ")"};
}

Outcome intensity_phase_independence() {
    double moment = 0, fock = 0;
    for (double r : {0.1, 0.5, 1.0}) {
        for (double phi : phi_grid(200)) {
            auto det = detector_readout(mzi_output(phi, r), 0.0, 2.0);
            double n = intensity_from_detectors(det.d_intensity, det.c_intensity, 2.0);
            moment = std::max(moment, std::abs(n - std::sinh(r) * std::sinh(r)));
        }
    }
    for (double r : {0.2, 0.5, 0.8}) {
        for (double phi : phi_grid(24)) {
            auto s = mzi_output_fock(phi, r, kIntensityOracleCutoff, kIntensityOracleTail);
            fock = std::max(fock, std::abs(mode_moments_fock(s, 1).n_mean - std::sinh(r) * std::sinh(r)));
        }
    }
    bool ok = moment <= kIntensityMomentTol && fock <= kIntensityOracleTol;
    return {ok, "moment path " + sci(moment) + " (tol " + sci(kIntensityMomentTol) + "), oracle path cutoff " +
                    std::to_string(kIntensityOracleCutoff) + " " + sci(fock) + " (tol " + sci(kIntensityOracleTol) +
                    ")"};
}

FockVector smsv_fock(double r, size_t cutoff) {
    FockVector s({cutoff}, kWignerParityTail);
    double t = std::tanh(r);
    double amp = 1 / std::sqrt(std::cosh(r));
    for (size_t n = 0; 2 * n <= cutoff; n++) {
        size_t occ[1] = {2 * n};
        s.at(occ) = amp;
        amp *= -t * std::sqrt((2.0 * n + 1) * (2.0 * n + 2)) / (2.0 * (n + 1));
    }
    s.check_norm("squeezed vacuum");
    return s;
}

Outcome wigner_parity_identity() {
    std::vector<std::pair<std::string, FockVector>> states;
    states.emplace_back("vacuum", coherent_fock(0.0, 40, kWignerParityTail));
    for (double b : {0.5, 1.0, 2.0}) {
        states.emplace_back("coherent " + sci(b), coherent_fock(b, 60, kWignerParityTail));
    }
    for (double r : {0.3, 0.5, 0.8}) {
        states.emplace_back("thermal " + sci(r), tmsv_fock(r, 60, kWignerParityTail));
    }
    for (double r : {0.3, 0.6}) {
        states.emplace_back("squeezed " + sci(r), smsv_fock(r, 80));
    }
    double worst = 0;
    std::string worst_name;
    for (const auto &[name, s] : states) {
        auto check = wigner_parity_check(s, 0);
        if (!(check.abs_diff <= worst)) {
            worst = check.abs_diff;
            worst_name = name;
        }
    }
    return {worst <= kWignerParityTol, std::to_string(states.size()) + " states, max |gaussian - fock| = " + sci(worst) +
                                       " (" + worst_name + ", tol " + sci(kWignerParityTol) + ")"};
}

Outcome sensitivity() {
    double worst_rel = 0;
    for (double r : {0.3, 0.5, 1.0}) {
        double n = total_photons(r);
        double rel = std::abs(phase_sensitivity(r, 1e-3).delta_phi * std::sqrt(n * (n + 2)) - 1);
        worst_rel = std::max(worst_rel, rel);
    }
    bool sub_heisenberg = true;
    int points = 0;
    for (double n : {0.05, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        double r = std::asinh(std::sqrt(n / 2));
        double best = INFINITY;
        for (int k = 1; k <= 2000; k++) {
            best = std::min(best, phase_sensitivity(r, k * 1e-4).delta_phi);
        }
        sub_heisenberg &= best < 1 / n;
        points++;
    }
    bool ok = worst_rel <= kSensitivityRelTol && sub_heisenberg;
    return {ok, "max relative deviation at phi=1e-3 " + sci(worst_rel) + " (tol " + sci(kSensitivityRelTol) +
                    "), dphi_min < 1/n_bar at " + std::to_string(points) + " photon numbers <= 2: " +
                    (sub_heisenberg ? "yes" : "no")};
}

Outcome symplectic_invariant() {
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<int> kind(0, 2), count(1, 20), modes(2, 4);
    std::uniform_real_distribution<double> angle(-kPi, kPi), gain(0, 1);
    double worst_quad = 0, worst_complex = 0;
    for (int trial = 0; trial < 100; trial++) {
        size_t m = static_cast<size_t>(modes(rng));
        std::uniform_int_distribution<size_t> pick(0, m - 1);
        std::vector<CircuitElement> elements;
        int n = count(rng);
        while (static_cast<int>(elements.size()) < n) {
            size_t i = pick(rng), j = pick(rng);
            int k = kind(rng);
            if (k == 1) {
                elements.push_back(PhaseShift{i, angle(rng)});
            } else if (i != j) {
                if (k == 0) {
                    elements.push_back(BeamSplitter{i, j});
                } else {
                    elements.push_back(TwoModeSqueezer{i, j, gain(rng)});
                }
            }
        }
        auto t = compose(elements, m);
        worst_quad = std::max(worst_quad, t.symplectic_defect());
        worst_complex = std::max(worst_complex, t.commutation_defect());
    }
    bool ok = worst_quad <= kSymplecticTol && worst_complex <= kSymplecticTol;
    return {ok, "100 random circuits, quadrature S K S^dag " + sci(worst_quad) + ", ladder T K T^T " +
                    sci(worst_complex) + " (tol " + sci(kSymplecticTol) + ")"};
}

std::string montecarlo_csv(uint64_t seed) {
    ExperimentConfig c;
    c.command = Command::kMonteCarlo;
    c.r = 0.3;
    c.beta_mag = 2.0;
    c.phi_start = kPi / 4;
    c.phi_stop = kPi / 4 + 1;
    c.steps = 2;
    c.shots = 20000;
    c.seed = seed;
    std::stringstream out;
    write_csv(out, c, run_montecarlo(c));
    return out.str();
}

Outcome montecarlo_soundness() {
    const double r = 0.3, phi = kPi / 4;
    const double exact = signal_closed_form(total_photons(r), phi);
    auto run = [&](int64_t shots, uint64_t seed) {
        return run_proxy_experiment(ShotPlan::for_prescription(Prescription::kThree, 2.0, shots, seed), phi, r);
    };
    auto main_run = run(100000, 1);
    double sigmas = std::abs(main_run.parity.mean - exact) / main_run.parity.std_error;
    auto small = run(10000, 2);
    auto large = run(1000000, 3);
    double ratio = small.parity.std_error / large.parity.std_error;
    bool identical = montecarlo_csv(9) == montecarlo_csv(9);
    bool ok = main_run.valid && sigmas <= kMonteCarloSigmas && ratio >= kStderrRatioLow &&
              ratio <= kStderrRatioHigh && identical;
    return {ok, "S = " + sci(main_run.parity.mean) + " +- " + sci(main_run.parity.std_error) + " vs " + sci(exact) +
                    " (" + sci(sigmas) + " sigma, limit " + sci(kMonteCarloSigmas) + "), stderr ratio 1e4/1e6 " +
                    sci(ratio) + " (range [" + sci(kStderrRatioLow) + ", " + sci(kStderrRatioHigh) +
                    "]), same-seed CSV identical: " + (identical ? "yes" : "no")};
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
    double budget_seconds;
};

}  // namespace
}  // namespace parity

int main() {
    using namespace parity;
    std::vector<Criterion> criteria{
        {1, "signal equivalence", signal_equivalence, kSignalBudget},
        {2, "output moment recovery", output_moment_recovery, 0},
        {3, "closed-form X", closed_form_x, 0},
        {4, "intensity phase independence", intensity_phase_independence, 0},
        {5, "wigner parity identity", wigner_parity_identity, kWignerParityBudget},
        {6, "phase sensitivity", sensitivity, 0},
        {7, "symplectic invariant", symplectic_invariant, 0},
        {8, "monte-carlo soundness", montecarlo_soundness, kMonteCarloBudget},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = sci(seconds) + " s";
        if (c.budget_seconds > 0) {
            timing += " (budget " + sci(c.budget_seconds) + " s)";
            if (seconds >= c.budget_seconds) {
                outcome.passed = false;
            }
        }
        failures += !outcome.passed;
        std::printf("%s  %d  %-30s %s; %s\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
