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

#include "parity/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parity/parallel.h"

namespace parity {

namespace {

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Two correlated per-shot quantities: x = 4 n_c n_d and y = n_c + n_d - |beta|^2.
struct PairStats {
    int64_t n = 0;
    double mean_x = 0, mean_y = 0;
    double m2_x = 0, m2_y = 0, c_xy = 0;

    void add(double x, double y) {
        n++;
        double dx = x - mean_x;
        double dy = y - mean_y;
        mean_x += dx / static_cast<double>(n);
        mean_y += dy / static_cast<double>(n);
        m2_x += dx * (x - mean_x);
        m2_y += dy * (y - mean_y);
        c_xy += dx * (y - mean_y);
    }
    double var_x() const {
        return n > 1 ? m2_x / static_cast<double>(n - 1) : 0.0;
    }
    double var_y() const {
        return n > 1 ? m2_y / static_cast<double>(n - 1) : 0.0;
    }
    double cov_xy() const {
        return n > 1 ? c_xy / static_cast<double>(n - 1) : 0.0;
    }
};

std::vector<XMeasurement> as_measurements(const ShotPlan &plan, std::span<const double> x_means) {
    std::vector<XMeasurement> xs;
    for (size_t k = 0; k < plan.settings.size(); k++) {
        xs.push_back({plan.settings[k].theta, plan.settings[k].beta_mag, x_means[k]});
    }
    return xs;
}

struct SignalPoint {
    cdouble asq;
    double n_f;
    double radicand;
};

SignalPoint signal_point(
    const ShotPlan &plan, Prescription p, std::span<const double> x_means, std::span<const double> y_means) {
    auto xs = as_measurements(plan, x_means);
    SignalPoint out;
    out.asq = recover_asq(p, xs, plan.beta_mag());
    double n = 0;
    for (double y : y_means) {
        n += y;
    }
    out.n_f = n / static_cast<double>(y_means.size());
    out.radicand = (out.n_f + 0.5) * (out.n_f + 0.5) - std::norm(out.asq);
    return out;
}

}  // namespace

void RunningStats::add(double x) {
    count_++;
    double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
}

void RunningStats::merge(const RunningStats &other) {
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    int64_t n = count_ + other.count_;
    double d = other.mean_ - mean_;
    double na = static_cast<double>(count_), nb = static_cast<double>(other.count_);
    mean_ += d * nb / static_cast<double>(n);
    m2_ += other.m2_ + d * d * na * nb / static_cast<double>(n);
    count_ = n;
}

double RunningStats::variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

EstimatorResult RunningStats::result() const {
    double se = count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    return {mean_, se, count_};
}

uint64_t substream_seed(uint64_t master, uint64_t stream) {
    uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<CountSample> sample_counts(const JointCountTable &dist, int64_t shots, uint64_t seed) {
    if (shots < 0) {
        throw std::invalid_argument("shot count must be nonnegative");
    }
    auto p = dist.probabilities();
    if (p.empty()) {
        throw std::invalid_argument("cannot sample from an empty distribution");
    }
    std::vector<double> cdf(p.size());
    double acc = 0;
    for (size_t k = 0; k < p.size(); k++) {
        if (p[k] < 0) {
            throw std::invalid_argument("negative probability in count table");
        }
        acc += p[k];
        cdf[k] = acc;
    }
    if (!(acc > 0) || std::abs(acc - 1.0) > 1e-6) {
        std::stringstream ss;
        ss << "count table sums to " << acc << ", expected 1";
        throw std::invalid_argument(ss.str());
    }
    std::mt19937_64 rng(seed);
    std::vector<CountSample> out;
    out.reserve(static_cast<size_t>(shots));
    const size_t width = dist.max_d() + 1;
    for (int64_t s = 0; s < shots; s++) {
        double u = uniform01(rng) * acc;
        size_t k = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        if (k >= cdf.size()) {
            // u rounded up to the total; take the last occupied cell.
            k = cdf.size() - 1;
            while (p[k] == 0 && k > 0) {
                k--;
            }
        }
        out.push_back({static_cast<uint32_t>(k / width), static_cast<uint32_t>(k % width)});
    }
    return out;
}

EstimatorResult estimate_x(std::span<const CountSample> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("estimate_x needs at least one sample");
    }
    RunningStats stats;
    for (const auto &s : samples) {
        stats.add(4.0 * static_cast<double>(s.n_c) * static_cast<double>(s.n_d));
    }
    return stats.result();
}

ShotPlan ShotPlan::for_prescription(Prescription p, double beta_mag, int64_t shots, uint64_t seed) {
    ShotPlan plan;
    for (auto [theta, beta] : prescription_settings(p, beta_mag)) {
        plan.settings.push_back({theta, beta});
    }
    plan.shots_per_setting = shots;
    plan.seed = seed;
    return plan;
}

double ShotPlan::beta_mag() const {
    double b = 0;
    for (const auto &s : settings) {
        b = std::max(b, s.beta_mag);
    }
    return b;
}

Prescription ShotPlan::prescription() const {
    double beta = beta_mag();
    if (!(beta > 0)) {
        throw std::invalid_argument("shot plan needs a live local oscillator");
    }
    for (Prescription p : {Prescription::kThree, Prescription::kFour}) {
        auto expected = prescription_settings(p, beta);
        if (expected.size() != settings.size()) {
            continue;
        }
        bool match = true;
        for (size_t k = 0; k < expected.size(); k++) {
            double dt = std::remainder(settings[k].theta - expected[k].first, std::numbers::pi);
            match &= std::abs(dt) <= 1e-12 && settings[k].beta_mag == expected[k].second;
        }
        if (match) {
            return p;
        }
    }
    throw std::invalid_argument(
        "shot plan settings match neither the three-measurement (0, pi/4, blocked) nor the four-phase "
        "(0, pi/4, pi/2, -pi/4) schedule");
}

ProxyExperimentResult run_proxy_experiment(
    const ShotPlan &plan, double phi, double r, const ExperimentOptions &options) {
    const Prescription prescription = plan.prescription();
    const double beta = plan.beta_mag();
    if (beta > kMaxSampledBeta) {
        std::stringstream ss;
        ss << "sampled mode caps |beta| at " << kMaxSampledBeta << ", got " << beta;
        throw std::invalid_argument(ss.str());
    }
    if (plan.shots_per_setting <= 0) {
        throw std::invalid_argument("shots per setting must be positive");
    }
    const double circuit_phi = bias_shift(phi);
    const size_t num_settings = plan.settings.size();
    const bool keep_samples = options.error_model == ErrorModel::kBootstrap;

    std::vector<PairStats> stats(num_settings);
    std::vector<std::vector<CountSample>> kept(num_settings);
    parallel_for(
        num_settings,
        [&](size_t k) {
            const ShotSetting &s = plan.settings[k];
            FockVector out = proxy_output_fock(
                circuit_phi, s.theta, r, s.beta_mag, options.cutoff, options.tail_tolerance);
            JointCountTable table =
                joint_count_distribution(out, proxy_layout::kDetectorC, proxy_layout::kDetectorD);
            auto samples = sample_counts(table, plan.shots_per_setting, substream_seed(plan.seed, k));
            double b2 = s.beta_mag * s.beta_mag;
            for (const auto &c : samples) {
                double nc = c.n_c, nd = c.n_d;
                stats[k].add(4.0 * nc * nd, nc + nd - b2);
            }
            if (keep_samples) {
                kept[k] = std::move(samples);
            }
        },
        options.max_workers);

    ProxyExperimentResult result;
    std::vector<double> x_means(num_settings), y_means(num_settings);
    for (size_t k = 0; k < num_settings; k++) {
        const PairStats &st = stats[k];
        double n = static_cast<double>(st.n);
        x_means[k] = st.mean_x;
        y_means[k] = st.mean_y;
        result.settings.push_back(
            {plan.settings[k], {st.mean_x, std::sqrt(st.var_x() / n), st.n}, {st.mean_y, std::sqrt(st.var_y() / n), st.n}});
    }
    const int64_t total_shots = plan.shots_per_setting * static_cast<int64_t>(num_settings);
    SignalPoint point = signal_point(plan, prescription, x_means, y_means);
    result.asq = point.asq;
    result.n_f = point.n_f;
    if (!(point.radicand > 0)) {
        std::stringstream ss;
        ss << "shot noise drove (n+1/2)^2-|<a^dag2>|^2 to " << point.radicand
           << "; increase shots per setting";
        result.valid = false;
        result.diagnostic = ss.str();
        result.parity = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), total_shots};
        return result;
    }
    const double signal = 1.0 / (2.0 * std::sqrt(point.radicand));

    double std_error = 0;
    if (options.error_model == ErrorModel::kDeltaMethod) {
        // The prescriptions are affine in the X means; read off the weights.
        std::vector<double> zero(num_settings, 0.0);
        cdouble offset = recover_asq(prescription, as_measurements(plan, zero), beta);
        double ds_dr = -0.25 / (point.radicand * std::sqrt(point.radicand));
        double dr_dy = 2.0 * (point.n_f + 0.5) / static_cast<double>(num_settings);
        double variance = 0;
        for (size_t k = 0; k < num_settings; k++) {
            std::vector<double> unit(num_settings, 0.0);
            unit[k] = 1.0;
            cdouble w = recover_asq(prescription, as_measurements(plan, unit), beta) - offset;
            double gx = ds_dr * (-2.0 * (std::conj(point.asq) * w).real());
            double gy = ds_dr * dr_dy;
            const PairStats &st = stats[k];
            variance += (gx * gx * st.var_x() + 2.0 * gx * gy * st.cov_xy() + gy * gy * st.var_y()) /
                        static_cast<double>(st.n);
        }
        std_error = std::sqrt(variance);
    } else {
        RunningStats boot;
        std::mt19937_64 rng(substream_seed(plan.seed, 0xB0075742ull));
        std::vector<double> bx(num_settings), by(num_settings);
        for (size_t b = 0; b < options.bootstrap_resamples; b++) {
            for (size_t k = 0; k < num_settings; k++) {
                const auto &samples = kept[k];
                double b2 = plan.settings[k].beta_mag * plan.settings[k].beta_mag;
                double sx = 0, sy = 0;
                for (size_t s = 0; s < samples.size(); s++) {
                    const auto &c = samples[static_cast<size_t>(uniform01(rng) * static_cast<double>(samples.size()))];
                    double nc = c.n_c, nd = c.n_d;
                    sx += 4.0 * nc * nd;
                    sy += nc + nd - b2;
                }
                bx[k] = sx / static_cast<double>(samples.size());
                by[k] = sy / static_cast<double>(samples.size());
            }
            SignalPoint bp = signal_point(plan, prescription, bx, by);
            if (bp.radicand > 0) {
                boot.add(1.0 / (2.0 * std::sqrt(bp.radicand)));
            }
        }
        std_error = std::sqrt(boot.variance());
    }
    result.parity = {signal, std_error, total_shots};
    return result;
}

}  // namespace parity
