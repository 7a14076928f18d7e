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

#ifndef PARITY_FOCK_H
#define PARITY_FOCK_H

#include <span>
#include <vector>

#include "parity/circuit.h"
#include "parity/gaussian.h"

namespace parity {

inline constexpr double kDefaultTailTolerance = 1e-12;

/// Dense pure state on a truncated multi-mode Fock space. Mode k holds
/// occupations 0..cutoffs[k]; amplitudes are row-major with mode 0 slowest.
///
/// The squared norm stays within [1 - tail_tolerance, 1]. Gates that would leak
/// more probability out of the truncated space throw CutoffError.
class FockVector {
   public:
    FockVector(std::vector<size_t> cutoffs, double tail_tolerance = kDefaultTailTolerance);

    /// |occupations> on the given truncation.
    static FockVector basis(
        std::vector<size_t> cutoffs, std::span<const size_t> occupations, double tail_tolerance = kDefaultTailTolerance);

    size_t num_modes() const {
        return cutoffs_.size();
    }
    const std::vector<size_t> &cutoffs() const {
        return cutoffs_;
    }
    size_t stride(size_t mode) const {
        return strides_[mode];
    }
    size_t size() const {
        return amplitudes_.size();
    }
    double tail_tolerance() const {
        return tail_tolerance_;
    }
    void set_tail_tolerance(double tol) {
        tail_tolerance_ = tol;
    }

    std::span<cdouble> amplitudes() {
        return amplitudes_;
    }
    std::span<const cdouble> amplitudes() const {
        return amplitudes_;
    }

    size_t index(std::span<const size_t> occupations) const;
    /// Occupation of `mode` at flat index `flat`.
    size_t occupation(size_t flat, size_t mode) const {
        return (flat / strides_[mode]) % (cutoffs_[mode] + 1);
    }
    cdouble &at(std::span<const size_t> occupations) {
        return amplitudes_[index(occupations)];
    }
    cdouble at(std::span<const size_t> occupations) const {
        return amplitudes_[index(occupations)];
    }

    double norm_squared() const;
    /// Throws CutoffError when 1 - norm^2 exceeds the tail budget.
    void check_norm(const char *context) const;

   private:
    std::vector<size_t> cutoffs_;
    std::vector<size_t> strides_;
    std::vector<cdouble> amplitudes_;
    double tail_tolerance_;
};

/// Per-mode mean + 10 standard deviations + 20.
size_t suggest_cutoff(double mean, double stddev);

/// sum_n tanh(r)^n / cosh(r) |n, n>. Throws CutoffError if the discarded tail
/// tanh(r)^(2(cutoff+1)) exceeds tail_tolerance.
FockVector tmsv_fock(double r, size_t cutoff, double tail_tolerance = kDefaultTailTolerance);

/// Coherent state |beta>. Requires cutoff >= |beta|^2 + 10|beta| + 20.
FockVector coherent_fock(cdouble beta, size_t cutoff, double tail_tolerance = kDefaultTailTolerance);

/// Joint state with the modes of `first` followed by those of `second`.
FockVector tensor_product(const FockVector &first, const FockVector &second);

/// New mode k is old mode order[k].
FockVector permute_modes(const FockVector &state, std::span<const size_t> order);

/// Block of the 50:50 beam splitter with N = n_i + n_j photons. Entry (p, n)
/// is the amplitude of |p, N-p> in U|n, N-n>.
std::vector<std::vector<cdouble>> beamsplitter_block(size_t total_photons);

FockVector apply_beamsplitter_fock(FockVector state, size_t mode_i, size_t mode_j);
FockVector apply_phase_fock(FockVector state, size_t mode, double phi);
/// Beam splitters and phase shifts only; squeezers are prepared with tmsv_fock.
FockVector apply_element_fock(FockVector state, const CircuitElement &element);

/// <(-1)^{N_mode}>.
double mode_parity_fock(const FockVector &state, size_t mode);

struct FockMoments {
    cdouble a_mean{};
    cdouble asq_mean{};
    double n_mean = 0;
    double a2dag_a2_mean = 0;
};

FockMoments mode_moments_fock(const FockVector &state, size_t mode);

struct FockPairMoments {
    cdouble a_i_a_j{};
    cdouble adag_i_a_j{};
};

FockPairMoments pair_moments_fock(const FockVector &state, size_t mode_i, size_t mode_j);

/// P(n_c, n_d) marginalized over every other mode.
class JointCountTable {
   public:
    JointCountTable(size_t max_c, size_t max_d);

    size_t max_c() const {
        return max_c_;
    }
    size_t max_d() const {
        return max_d_;
    }
    double &at(size_t n_c, size_t n_d) {
        return p_[n_c * (max_d_ + 1) + n_d];
    }
    double at(size_t n_c, size_t n_d) const {
        return p_[n_c * (max_d_ + 1) + n_d];
    }
    std::span<const double> probabilities() const {
        return p_;
    }
    double total() const;
    /// E[n_c n_d]
    double mean_product() const;
    /// E[n_c + n_d]
    double mean_sum() const;

   private:
    size_t max_c_;
    size_t max_d_;
    std::vector<double> p_;
};

JointCountTable joint_count_distribution(const FockVector &state, size_t mode_c, size_t mode_d);

struct IdentityCheck {
    double gaussian_side = 0;
    double fock_side = 0;
    double abs_diff = 0;
};

/// Compares W(0,0) of the Gaussian moments extracted from `state` against
/// (2/pi) <(-1)^N> summed directly in the number basis.
IdentityCheck wigner_parity_check(const FockVector &state, size_t mode);

/// [a1, b, a2] input of the proxy interferometer: TMSV in modes 0 and 2, a
/// coherent LO of amplitude beta in mode 1.
FockVector proxy_input_fock(double r, cdouble beta, size_t cutoff, double tail_tolerance = kDefaultTailTolerance);

/// Two-mode interferometer [a1, a2] without LO: TMSV, beam splitter, phase phi
/// on mode 0, beam splitter. Mode 1 then holds a_f.
FockVector mzi_output_fock(double phi, double r, size_t cutoff, double tail_tolerance = kDefaultTailTolerance);

/// The proxy interferometer applied gate by gate in the number basis.
FockVector proxy_output_fock(
    double phi, double theta, double r, double beta_mag, size_t cutoff, double tail_tolerance = kDefaultTailTolerance);

}  // namespace parity

#endif
