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

#include "parity/fock.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "parity/errors.h"

namespace parity {

namespace {


void check_mode(const FockVector &s, size_t mode) {
    if (mode >= s.num_modes()) {
        std::stringstream ss;
        ss << "mode index " << mode << " out of range for " << s.num_modes() << " modes";
        throw std::out_of_range(ss.str());
    }
}

// Flat indices whose occupation is zero in every listed mode.
std::vector<size_t> base_offsets(const FockVector &s, std::initializer_list<size_t> fixed) {
    std::vector<size_t> out;
    for (size_t k = 0; k < s.size(); k++) {
        bool zero = true;
        for (size_t m : fixed) {
            zero &= s.occupation(k, m) == 0;
        }
        if (zero) {
            out.push_back(k);
        }
    }
    return out;
}

}  // namespace

FockVector::FockVector(std::vector<size_t> cutoffs, double tail_tolerance)
    : cutoffs_(std::move(cutoffs)), tail_tolerance_(tail_tolerance) {
    if (cutoffs_.empty()) {
        throw std::invalid_argument("Fock vector needs at least one mode");
    }
    strides_.assign(cutoffs_.size(), 1);
    size_t total = 1;
    for (size_t k = cutoffs_.size(); k-- > 0;) {
        strides_[k] = total;
        total *= cutoffs_[k] + 1;
    }
    amplitudes_.assign(total, 0.0);
}

FockVector FockVector::basis(std::vector<size_t> cutoffs, std::span<const size_t> occupations, double tail_tolerance) {
    FockVector s(std::move(cutoffs), tail_tolerance);
    s.at(occupations) = 1.0;
    return s;
}

size_t FockVector::index(std::span<const size_t> occupations) const {
    if (occupations.size() != cutoffs_.size()) {
        throw std::invalid_argument("occupation list has the wrong number of modes");
    }
    size_t flat = 0;
    for (size_t k = 0; k < cutoffs_.size(); k++) {
        if (occupations[k] > cutoffs_[k]) {
            throw std::out_of_range("occupation exceeds the mode cutoff");
        }
        flat += occupations[k] * strides_[k];
    }
    return flat;
}

double FockVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void FockVector::check_norm(const char *context) const {
    double loss = 1.0 - norm_squared();
    if (loss > tail_tolerance_) {
        std::stringstream ss;
        ss << context << ": truncation lost probability " << loss << " > tail budget " << tail_tolerance_
           << "; increase the cutoff (current per-mode cutoffs:";
        for (size_t c : cutoffs_) {
            ss << ' ' << c;
        }
        ss << ")";
        throw CutoffError(ss.str());
    }
}

size_t suggest_cutoff(double mean, double stddev) {
    return static_cast<size_t>(std::ceil(mean + 10.0 * stddev + 20.0));
}

FockVector tmsv_fock(double r, size_t cutoff, double tail_tolerance) {
    if (r < 0) {
        throw std::invalid_argument("squeezing gain must be nonnegative");
    }
    double t = std::tanh(r);
    double tail = std::pow(t, 2.0 * static_cast<double>(cutoff + 1));
    if (tail > tail_tolerance) {
        double n = std::sinh(r) * std::sinh(r);
        std::stringstream ss;
        ss << "cutoff " << cutoff << " too small for two-mode squeezed vacuum r=" << r << ": tail mass " << tail
           << " > " << tail_tolerance << " (suggested cutoff " << suggest_cutoff(n, std::sqrt(n * (n + 1))) << ")";
        throw CutoffError(ss.str());
    }
    FockVector s({cutoff, cutoff}, tail_tolerance);
    double amp = 1.0 / std::cosh(r);
    for (size_t n = 0; n <= cutoff; n++) {
        size_t occ[2] = {n, n};
        s.at(occ) = amp;
        amp *= t;
    }
    return s;
}

FockVector coherent_fock(cdouble beta, size_t cutoff, double tail_tolerance) {
    double mag = std::abs(beta);
    double needed = mag * mag + 10.0 * mag + 20.0;
    if (static_cast<double>(cutoff) < needed) {
        std::stringstream ss;
        ss << "cutoff " << cutoff << " too small for coherent amplitude |beta|=" << mag << " (need >= "
           << std::ceil(needed) << ")";
        throw CutoffError(ss.str());
    }
    FockVector s({cutoff}, tail_tolerance);
    cdouble amp = std::exp(-mag * mag / 2.0);
    for (size_t n = 0; n <= cutoff; n++) {
        size_t occ[1] = {n};
        s.at(occ) = amp;
        amp *= beta / std::sqrt(static_cast<double>(n + 1));
    }
    s.check_norm("coherent_fock");
    return s;
}

FockVector tensor_product(const FockVector &first, const FockVector &second) {
    std::vector<size_t> cutoffs = first.cutoffs();
    cutoffs.insert(cutoffs.end(), second.cutoffs().begin(), second.cutoffs().end());
    FockVector out(std::move(cutoffs), std::max(first.tail_tolerance(), second.tail_tolerance()));
    auto dst = out.amplitudes();
    auto a = first.amplitudes();
    auto b = second.amplitudes();
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            dst[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

FockVector permute_modes(const FockVector &state, std::span<const size_t> order) {
    const size_t m = state.num_modes();
    if (order.size() != m) {
        throw std::invalid_argument("mode permutation has the wrong length");
    }
    std::vector<size_t> cutoffs(m);
    std::vector<bool> seen(m, false);
    for (size_t k = 0; k < m; k++) {
        if (order[k] >= m || seen[order[k]]) {
            throw std::invalid_argument("mode permutation is not a permutation");
        }
        seen[order[k]] = true;
        cutoffs[k] = state.cutoffs()[order[k]];
    }
    FockVector out(std::move(cutoffs), state.tail_tolerance());
    auto src = state.amplitudes();
    auto dst = out.amplitudes();
    for (size_t flat = 0; flat < src.size(); flat++) {
        size_t target = 0;
        for (size_t k = 0; k < m; k++) {
            target += state.occupation(flat, order[k]) * out.stride(k);
        }
        dst[target] = src[flat];
    }
    return out;
}

namespace {

// Column-major beam-splitter block for N photons: cols[n][p] is the amplitude
// of |p, N-p> in U|n, N-n>.
//
// U = exp(i (pi/4) G) with G = a_i^dag a_j + a_j^dag a_i, which gives
// U a_i^dag U^dag = (a_i^dag + i a_j^dag)/sqrt2. Within the N-photon block G is
// real symmetric tridiagonal with eigenvalues exactly -N, -N+2, ..., N, so U is
// assembled from its eigenvectors. Unlike the creation-operator ladder this
// stays unitary to rounding at large N.
std::vector<std::vector<cdouble>> compute_columns(size_t n_total) {
    const auto dim = static_cast<Eigen::Index>(n_total + 1);
    std::vector<std::vector<cdouble>> cols(n_total + 1, std::vector<cdouble>(n_total + 1, 0.0));
    if (n_total == 0) {
        cols[0][0] = 1.0;
        return cols;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(dim - 1);
    for (Eigen::Index p = 0; p + 1 < dim; p++) {
        sub(p) = std::sqrt(static_cast<double>(p + 1) * static_cast<double>(dim - 1 - p));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd &v = solver.eigenvectors();
    Eigen::VectorXcd phase(dim);
    for (Eigen::Index k = 0; k < dim; k++) {
        double eigenvalue = -static_cast<double>(n_total) + 2.0 * static_cast<double>(k);
        phase(k) = std::polar(1.0, std::numbers::pi / 4 * eigenvalue);
    }
    Eigen::MatrixXcd u = v.cast<cdouble>() * phase.asDiagonal() * v.transpose().cast<cdouble>();
    for (size_t n = 0; n <= n_total; n++) {
        for (size_t p = 0; p <= n_total; p++) {
            cols[n][p] = u(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
        }
    }
    return cols;
}

const std::vector<std::vector<cdouble>> &beamsplitter_columns(size_t n_total) {
    static std::mutex mutex;
    static std::map<size_t, std::vector<std::vector<cdouble>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n_total);
    if (it == cache.end()) {
        it = cache.emplace(n_total, compute_columns(n_total)).first;
    }
    return it->second;
}

}  // namespace

std::vector<std::vector<cdouble>> beamsplitter_block(size_t total_photons) {
    const auto &cols = beamsplitter_columns(total_photons);
    std::vector<std::vector<cdouble>> block(total_photons + 1, std::vector<cdouble>(total_photons + 1));
    for (size_t n = 0; n <= total_photons; n++) {
        for (size_t p = 0; p <= total_photons; p++) {
            block[p][n] = cols[n][p];
        }
    }
    return block;
}

FockVector apply_beamsplitter_fock(FockVector state, size_t mode_i, size_t mode_j) {
    check_mode(state, mode_i);
    check_mode(state, mode_j);
    if (mode_i == mode_j) {
        throw std::invalid_argument("beam splitter needs two distinct modes");
    }
    const size_t ci = state.cutoffs()[mode_i];
    const size_t cj = state.cutoffs()[mode_j];
    const size_t si = state.stride(mode_i);
    const size_t sj = state.stride(mode_j);
    std::vector<const std::vector<std::vector<cdouble>> *> columns;
    for (size_t n_total = 0; n_total <= ci + cj; n_total++) {
        columns.push_back(&beamsplitter_columns(n_total));
    }

    // Photons that would land beyond a cutoff are dropped; check_norm accounts for them.
    auto amps = state.amplitudes();
    std::vector<cdouble> out;
    for (size_t base : base_offsets(state, {mode_i, mode_j})) {
        for (size_t n_total = 0; n_total <= ci + cj; n_total++) {
            size_t lo = n_total > cj ? n_total - cj : 0;
            size_t hi = std::min(n_total, ci);
            const auto &cols = *columns[n_total];
            out.assign(hi - lo + 1, 0.0);
            for (size_t n = lo; n <= hi; n++) {
                cdouble a = amps[base + n * si + (n_total - n) * sj];
                if (a == cdouble{}) {
                    continue;
                }
                const auto &col = cols[n];
                for (size_t p = lo; p <= hi; p++) {
                    out[p - lo] += col[p] * a;
                }
            }
            for (size_t p = lo; p <= hi; p++) {
                amps[base + p * si + (n_total - p) * sj] = out[p - lo];
            }
        }
    }
    state.check_norm("apply_beamsplitter_fock");
    return state;
}

FockVector apply_phase_fock(FockVector state, size_t mode, double phi) {
    check_mode(state, mode);
    std::vector<cdouble> factor(state.cutoffs()[mode] + 1);
    for (size_t n = 0; n < factor.size(); n++) {
        factor[n] = std::polar(1.0, phi * static_cast<double>(n));
    }
    auto amps = state.amplitudes();
    for (size_t k = 0; k < amps.size(); k++) {
        amps[k] *= factor[state.occupation(k, mode)];
    }
    return state;
}

FockVector apply_element_fock(FockVector state, const CircuitElement &element) {
    if (const auto *bs = std::get_if<BeamSplitter>(&element)) {
        return apply_beamsplitter_fock(std::move(state), bs->mode_i, bs->mode_j);
    }
    if (const auto *ps = std::get_if<PhaseShift>(&element)) {
        return apply_phase_fock(std::move(state), ps->mode, ps->phi);
    }
    throw std::invalid_argument("squeezers act only on vacuum in the oracle; prepare them with tmsv_fock");
}

double mode_parity_fock(const FockVector &state, size_t mode) {
    check_mode(state, mode);
    auto amps = state.amplitudes();
    double total = 0;
    for (size_t k = 0; k < amps.size(); k++) {
        double p = std::norm(amps[k]);
        total += state.occupation(k, mode) % 2 == 0 ? p : -p;
    }
    return total;
}

FockMoments mode_moments_fock(const FockVector &state, size_t mode) {
    check_mode(state, mode);
    auto amps = state.amplitudes();
    const size_t s = state.stride(mode);
    const size_t c = state.cutoffs()[mode];
    FockMoments m;
    for (size_t k = 0; k < amps.size(); k++) {
        size_t n = state.occupation(k, mode);
        double nd = static_cast<double>(n);
        double p = std::norm(amps[k]);
        m.n_mean += nd * p;
        m.a2dag_a2_mean += nd * (nd - 1.0) * p;
        // <psi| a |psi> picks amplitude at n+1, a^2 at n+2.
        if (n + 1 <= c) {
            m.a_mean += std::conj(amps[k]) * std::sqrt(nd + 1.0) * amps[k + s];
        }
        if (n + 2 <= c) {
            m.asq_mean += std::conj(amps[k]) * std::sqrt((nd + 1.0) * (nd + 2.0)) * amps[k + 2 * s];
        }
    }
    return m;
}

FockPairMoments pair_moments_fock(const FockVector &state, size_t mode_i, size_t mode_j) {
    check_mode(state, mode_i);
    check_mode(state, mode_j);
    if (mode_i == mode_j) {
        throw std::invalid_argument("pair moments need two distinct modes");
    }
    auto amps = state.amplitudes();
    const size_t si = state.stride(mode_i), sj = state.stride(mode_j);
    const size_t ci = state.cutoffs()[mode_i], cj = state.cutoffs()[mode_j];
    FockPairMoments out;
    for (size_t k = 0; k < amps.size(); k++) {
        size_t ni = state.occupation(k, mode_i);
        size_t nj = state.occupation(k, mode_j);
        double di = static_cast<double>(ni), dj = static_cast<double>(nj);
        if (ni + 1 <= ci && nj + 1 <= cj) {
            out.a_i_a_j += std::conj(amps[k]) * std::sqrt((di + 1.0) * (dj + 1.0)) * amps[k + si + sj];
        }
        // a_i^dag a_j |.., ni, .., nj, ..> = sqrt((ni+1) nj) |.., ni+1, .., nj-1, ..>
        if (ni + 1 <= ci && nj >= 1) {
            out.adag_i_a_j += std::conj(amps[k + si - sj]) * std::sqrt((di + 1.0) * dj) * amps[k];
        }
    }
    return out;
}

JointCountTable::JointCountTable(size_t max_c, size_t max_d)
    : max_c_(max_c), max_d_(max_d), p_((max_c + 1) * (max_d + 1), 0.0) {
}

double JointCountTable::total() const {
    double t = 0;
    for (double p : p_) {
        t += p;
    }
    return t;
}

double JointCountTable::mean_product() const {
    double t = 0;
    for (size_t c = 0; c <= max_c_; c++) {
        for (size_t d = 0; d <= max_d_; d++) {
            t += static_cast<double>(c * d) * at(c, d);
        }
    }
    return t;
}

double JointCountTable::mean_sum() const {
    double t = 0;
    for (size_t c = 0; c <= max_c_; c++) {
        for (size_t d = 0; d <= max_d_; d++) {
            t += static_cast<double>(c + d) * at(c, d);
        }
    }
    return t;
}

JointCountTable joint_count_distribution(const FockVector &state, size_t mode_c, size_t mode_d) {
    check_mode(state, mode_c);
    check_mode(state, mode_d);
    if (mode_c == mode_d) {
        throw std::invalid_argument("joint counts need two distinct modes");
    }
    JointCountTable table(state.cutoffs()[mode_c], state.cutoffs()[mode_d]);
    auto amps = state.amplitudes();
    for (size_t k = 0; k < amps.size(); k++) {
        table.at(state.occupation(k, mode_c), state.occupation(k, mode_d)) += std::norm(amps[k]);
    }
    return table;
}

IdentityCheck wigner_parity_check(const FockVector &state, size_t mode) {
    FockMoments m = mode_moments_fock(state, mode);
    IdentityCheck out;
    out.gaussian_side = wigner_at_origin(moments_from_raw(m.a_mean, m.asq_mean, m.n_mean));
    out.fock_side = 2.0 / std::numbers::pi * mode_parity_fock(state, mode);
    out.abs_diff = std::abs(out.gaussian_side - out.fock_side);
    return out;
}

FockVector proxy_input_fock(double r, cdouble beta, size_t cutoff, double tail_tolerance) {
    FockVector joint = tensor_product(tmsv_fock(r, cutoff, tail_tolerance), coherent_fock(beta, cutoff, tail_tolerance));
    // [a1, a2, b] -> [a1, b, a2]
    const size_t order[3] = {0, 2, 1};
    return permute_modes(joint, order);
}

FockVector mzi_output_fock(double phi, double r, size_t cutoff, double tail_tolerance) {
    FockVector s = tmsv_fock(r, cutoff, tail_tolerance);
    s = apply_beamsplitter_fock(std::move(s), 0, 1);
    s = apply_phase_fock(std::move(s), 0, phi);
    return apply_beamsplitter_fock(std::move(s), 0, 1);
}

FockVector proxy_output_fock(
    double phi, double theta, double r, double beta_mag, size_t cutoff, double tail_tolerance) {
    FockVector s = proxy_input_fock(r, beta_mag, cutoff, tail_tolerance);
    std::vector<CircuitElement> gates = mzi_elements(phi, r);
    gates.erase(gates.begin());  // the OPA is in the prepared input
    for (const auto &e : homodyne_elements(theta)) {
        gates.push_back(e);
    }
    for (const auto &g : gates) {
        s = apply_element_fock(std::move(s), g);
    }
    return s;
}

}  // namespace parity
