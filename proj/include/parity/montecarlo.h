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

#ifndef PARITY_MONTECARLO_H
#define PARITY_MONTECARLO_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parity/fock.h"
#include "parity/homodyne.h"

namespace parity {

struct EstimatorResult {
    double mean = 0;
    double std_error = 0;
    int64_t shots = 0;
};

/// Welford accumulator. merge() is commutative and associative up to rounding.
class RunningStats {
   public:
    void add(double x);
    void merge(const RunningStats &other);

    int64_t count() const {
        return count_;
    }
    double mean() const {
        return mean_;
    }
    /// Unbiased sample variance; zero for fewer than two samples.
    double variance() const;
    /// mean, sample sd / sqrt(count), count.
    EstimatorResult result() const;

   private:
    int64_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

struct CountSample {
    uint32_t n_c = 0;
    uint32_t n_d = 0;
};

/// SplitMix64 finalizer of (master, stream); gives independent substream seeds.
uint64_t substream_seed(uint64_t master, uint64_t stream);

/// i.i.d. draws from the table by inverse CDF on a seeded mt19937_64. The same
/// seed always yields the same sequence.
std::vector<CountSample> sample_counts(const JointCountTable &dist, int64_t shots, uint64_t seed);

/// X = 4 <n_c n_d> estimated from samples.
EstimatorResult estimate_x(std::span<const CountSample> samples);

struct ShotSetting {
    double theta = 0;
    double beta_mag = 0;
};

struct ShotPlan {
    std::vector<ShotSetting> settings;
    int64_t shots_per_setting = 0;
    uint64_t seed = 0;

    static ShotPlan for_prescription(Prescription p, double beta_mag, int64_t shots, uint64_t seed);
    /// Identifies which prescription the settings implement; throws
    /// std::invalid_argument when they match neither.
    Prescription prescription() const;
    double beta_mag() const;
};

enum class ErrorModel { kDeltaMethod, kBootstrap };

/// Sampled mode caps the LO amplitude so the oracle stays feasible.
inline constexpr double kMaxSampledBeta = 3.0;

struct ExperimentOptions {
    size_t cutoff = 60;
    double tail_tolerance = 1e-10;
    ErrorModel error_model = ErrorModel::kDeltaMethod;
    size_t bootstrap_resamples = 200;
    size_t max_workers = 0;
};

struct SettingResult {
    ShotSetting setting;
    EstimatorResult x;
    /// n_c + n_d - |beta|^2 per shot.
    EstimatorResult intensity;
};

struct ProxyExperimentResult {
    EstimatorResult parity;
    std::vector<SettingResult> settings;
    cdouble asq{};
    double n_f = 0;
    /// False when noise drove (n+1/2)^2 - |<a^dag2>|^2 nonpositive; parity is then NaN.
    bool valid = true;
    std::string diagnostic;
};

/// Finite-shot run of the measurement schedule at signal phase phi. The bias
/// shift phi -> phi + pi/2 is applied here, so parity.mean estimates
/// signal_closed_form(total_photons(r), phi).
ProxyExperimentResult run_proxy_experiment(
    const ShotPlan &plan, double phi, double r, const ExperimentOptions &options = {});

}  // namespace parity

#endif
