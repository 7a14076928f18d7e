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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracle.h"
#include "parity/errors.h"

namespace parity {
namespace {

using oracle::kPi;

JointCountTable hom_table() {
    JointCountTable t(2, 2);
    t.at(2, 0) = 0.5;
    t.at(0, 2) = 0.5;
    return t;
}

JointCountTable proxy_table(double phi, double theta, double r, double beta) {
    return joint_count_distribution(proxy_output_fock(phi, theta, r, beta, 60, 1e-10), proxy_layout::kDetectorC,
                                    proxy_layout::kDetectorD);
}

TEST(montecarlo, running_stats) {
    RunningStats s;
    EXPECT_EQ(s.result().std_error, 0.0);
    for (double x : {1.0, 2.0, 3.0, 4.0}) {
        s.add(x);
    }
    EXPECT_DOUBLE_EQ(s.mean(), 2.5);
    EXPECT_DOUBLE_EQ(s.variance(), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.result().std_error, std::sqrt(5.0 / 3.0 / 4.0));
    EXPECT_EQ(s.result().shots, 4);
}

TEST(montecarlo, running_stats_merge_matches_sequential) {
    RunningStats all, left, right, empty;
    for (int k = 0; k < 100; k++) {
        double x = std::sin(k * 0.37) * 10 + k * 0.01;
        all.add(x);
        (k < 37 ? left : right).add(x);
    }
    left.merge(right);
    left.merge(empty);
    EXPECT_EQ(left.count(), all.count());
    EXPECT_NEAR(left.mean(), all.mean(), 1e-12);
    EXPECT_NEAR(left.variance(), all.variance(), 1e-10);
    empty.merge(all);
    EXPECT_EQ(empty.count(), 100);
}

TEST(montecarlo, substreams_are_distinct) {
    std::set<uint64_t> seen;
    for (uint64_t master : {0ull, 1ull, 2ull}) {
        for (uint64_t k = 0; k < 100; k++) {
            seen.insert(substream_seed(master, k));
        }
    }
    EXPECT_EQ(seen.size(), 300u);
    EXPECT_EQ(substream_seed(7, 3), substream_seed(7, 3));
}

TEST(montecarlo, point_mass_samples) {
    JointCountTable t(3, 3);
    t.at(0, 0) = 1.0;
    for (const auto &s : sample_counts(t, 1000, 42)) {
        EXPECT_EQ(s.n_c, 0u);
        EXPECT_EQ(s.n_d, 0u);
    }
    auto est = estimate_x(sample_counts(t, 1000, 42));
    EXPECT_EQ(est.mean, 0.0);
    EXPECT_EQ(est.std_error, 0.0);
    EXPECT_EQ(est.shots, 1000);
}

TEST(montecarlo, hom_sampling_frequencies) {
    const int64_t shots = 20000;
    auto samples = sample_counts(hom_table(), shots, 5);
    int64_t coincidences = 0, left = 0;
    for (const auto &s : samples) {
        coincidences += (s.n_c == 1 && s.n_d == 1);
        left += (s.n_c == 2 && s.n_d == 0);
    }
    EXPECT_EQ(coincidences, 0);
    double sigma = std::sqrt(0.25 / shots);
    EXPECT_NEAR(static_cast<double>(left) / shots, 0.5, 3 * sigma);
}

TEST(montecarlo, sampling_is_deterministic) {
    auto a = sample_counts(hom_table(), 500, 99);
    auto b = sample_counts(hom_table(), 500, 99);
    auto c = sample_counts(hom_table(), 500, 100);
    bool same = true, differs = false;
    for (size_t k = 0; k < a.size(); k++) {
        same &= a[k].n_c == b[k].n_c && a[k].n_d == b[k].n_d;
        differs |= a[k].n_c != c[k].n_c;
    }
    EXPECT_TRUE(same);
    EXPECT_TRUE(differs);
}

TEST(montecarlo, sampling_errors) {
    JointCountTable zero(2, 2);
    EXPECT_THROW(sample_counts(zero, 10, 1), std::invalid_argument);
    JointCountTable negative(1, 1);
    negative.at(0, 0) = 1.5;
    negative.at(1, 1) = -0.5;
    EXPECT_THROW(sample_counts(negative, 10, 1), std::invalid_argument);
    JointCountTable short_mass(1, 1);
    short_mass.at(0, 0) = 0.9;
    EXPECT_THROW(sample_counts(short_mass, 10, 1), std::invalid_argument);
    EXPECT_THROW(sample_counts(hom_table(), -1, 1), std::invalid_argument);
    EXPECT_THROW(estimate_x({}), std::invalid_argument);
}

TEST(montecarlo, estimate_x_within_five_sigma) {
    double r = 0.3, beta = 2.0, phi = kPi / 4;
    for (double theta : {0.0, kPi / 4}) {
        auto est = estimate_x(sample_counts(proxy_table(phi, theta, r, beta), 100000, 17));
        double exact = x_measurement(mzi_output(phi, r), theta, beta).value;
        EXPECT_LE(std::abs(est.mean - exact), 5 * est.std_error) << theta;
        EXPECT_GT(est.std_error, 0.0);
    }
}

TEST(montecarlo, standard_error_scales_as_inverse_root_shots) {
    auto table = proxy_table(kPi / 4, 0.0, 0.3, 2.0);
    double small = estimate_x(sample_counts(table, 10000, 1)).std_error;
    double large = estimate_x(sample_counts(table, 1000000, 2)).std_error;
    EXPECT_NEAR(large / small, 0.1, 0.03);
}

TEST(montecarlo, shot_plan_prescriptions) {
    auto three = ShotPlan::for_prescription(Prescription::kThree, 2.0, 10, 1);
    EXPECT_EQ(three.settings.size(), 3u);
    EXPECT_EQ(three.prescription(), Prescription::kThree);
    EXPECT_EQ(three.beta_mag(), 2.0);
    auto four = ShotPlan::for_prescription(Prescription::kFour, 1.0, 10, 1);
    EXPECT_EQ(four.prescription(), Prescription::kFour);
    auto shifted = three;
    shifted.settings[0].theta = kPi;
    EXPECT_EQ(shifted.prescription(), Prescription::kThree);

    auto odd = three;
    odd.settings[1].theta = 0.3;
    EXPECT_THROW(odd.prescription(), std::invalid_argument);
    auto unblocked = three;
    unblocked.settings[2].beta_mag = 2.0;
    EXPECT_THROW(unblocked.prescription(), std::invalid_argument);
    ShotPlan dark;
    dark.settings = {{0, 0}, {0, 0}, {0, 0}};
    EXPECT_THROW(dark.prescription(), std::invalid_argument);
}

TEST(montecarlo, experiment_rejects_bad_plans) {
    auto big_lo = ShotPlan::for_prescription(Prescription::kThree, 3.5, 10, 1);
    EXPECT_THROW(run_proxy_experiment(big_lo, 0.2, 0.3), std::invalid_argument);
    auto no_shots = ShotPlan::for_prescription(Prescription::kThree, 2.0, 0, 1);
    EXPECT_THROW(run_proxy_experiment(no_shots, 0.2, 0.3), std::invalid_argument);
}

TEST(montecarlo, experiment_surfaces_cutoff_errors) {
    auto plan = ShotPlan::for_prescription(Prescription::kThree, 2.0, 100, 1);
    ExperimentOptions options;
    options.cutoff = 20;
    EXPECT_THROW(run_proxy_experiment(plan, 0.2, 0.3, options), CutoffError);
}

TEST(montecarlo, experiment_matches_closed_form) {
    double r = 0.3, phi = kPi / 4;
    auto plan = ShotPlan::for_prescription(Prescription::kThree, 2.0, 100000, 7);
    auto result = run_proxy_experiment(plan, phi, r);
    ASSERT_TRUE(result.valid) << result.diagnostic;
    double exact = signal_closed_form(total_photons(r), phi);
    EXPECT_LE(std::abs(result.parity.mean - exact), 5 * result.parity.std_error);
    EXPECT_EQ(result.parity.shots, 300000);
    EXPECT_EQ(result.settings.size(), 3u);
    for (const auto &s : result.settings) {
        EXPECT_NEAR(s.intensity.mean, std::sinh(r) * std::sinh(r), 5 * s.intensity.std_error);
    }
}

TEST(montecarlo, prescriptions_agree_statistically) {
    double r = 0.3, phi = 0.6;
    auto three = run_proxy_experiment(ShotPlan::for_prescription(Prescription::kThree, 2.0, 50000, 3), phi, r);
    auto four = run_proxy_experiment(ShotPlan::for_prescription(Prescription::kFour, 2.0, 50000, 4), phi, r);
    double combined = std::hypot(three.parity.std_error, four.parity.std_error);
    EXPECT_LE(std::abs(three.parity.mean - four.parity.mean), 5 * combined);
}

TEST(montecarlo, zero_gain_is_consistent_with_unit_parity) {
    auto result = run_proxy_experiment(ShotPlan::for_prescription(Prescription::kFour, 2.0, 20000, 11), 0.4, 0.0);
    ASSERT_TRUE(result.valid);
    EXPECT_LE(std::abs(result.parity.mean - 1.0), 5 * result.parity.std_error);
}

TEST(montecarlo, experiment_is_deterministic_across_worker_counts) {
    auto plan = ShotPlan::for_prescription(Prescription::kThree, 2.0, 5000, 21);
    ExperimentOptions serial;
    serial.max_workers = 1;
    ExperimentOptions threaded;
    threaded.max_workers = 3;
    auto a = run_proxy_experiment(plan, 1.0, 0.3, serial);
    auto b = run_proxy_experiment(plan, 1.0, 0.3, threaded);
    EXPECT_EQ(a.parity.mean, b.parity.mean);
    EXPECT_EQ(a.parity.std_error, b.parity.std_error);
    EXPECT_EQ(a.asq, b.asq);
}

TEST(montecarlo, bootstrap_agrees_with_delta_method) {
    auto plan = ShotPlan::for_prescription(Prescription::kThree, 2.0, 20000, 5);
    ExperimentOptions boot;
    boot.error_model = ErrorModel::kBootstrap;
    boot.bootstrap_resamples = 200;
    auto delta = run_proxy_experiment(plan, 0.5, 0.3);
    auto b = run_proxy_experiment(plan, 0.5, 0.3, boot);
    EXPECT_EQ(delta.parity.mean, b.parity.mean);
    EXPECT_NEAR(b.parity.std_error / delta.parity.std_error, 1.0, 0.3);
}

TEST(montecarlo, starved_budget_is_flagged_not_thrown) {
    bool saw_invalid = false;
    for (uint64_t seed = 0; seed < 400 && !saw_invalid; seed++) {
        auto plan = ShotPlan::for_prescription(Prescription::kThree, 3.0, 2, seed);
        ProxyExperimentResult result;
        ASSERT_NO_THROW(result = run_proxy_experiment(plan, 0.3, 0.3));
        if (!result.valid) {
            saw_invalid = true;
            EXPECT_TRUE(std::isnan(result.parity.mean));
            EXPECT_FALSE(result.diagnostic.empty());
        }
    }
    EXPECT_TRUE(saw_invalid);
}

TEST(montecarlo, estimator_is_unbiased_over_seeds) {
    double r = 0.3, phi = kPi / 4;
    RunningStats means;
    ExperimentOptions options;
    options.cutoff = 48;
    for (uint64_t seed = 0; seed < 50; seed++) {
        auto plan = ShotPlan::for_prescription(Prescription::kThree, 2.0, 10000, 1000 + seed);
        auto result = run_proxy_experiment(plan, phi, r, options);
        ASSERT_TRUE(result.valid);
        means.add(result.parity.mean);
    }
    double exact = signal_closed_form(total_photons(r), phi);
    EXPECT_LE(std::abs(means.mean() - exact), 3 * means.result().std_error);
}

}  // namespace
}  // namespace parity
