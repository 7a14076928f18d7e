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

#include "parity/circuit.h"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace parity {

namespace {

void check_mode(size_t mode, size_t num_modes) {
    if (mode >= num_modes) {
        std::stringstream ss;
        ss << "mode index " << mode << " out of range for " << num_modes << " modes";
        throw std::out_of_range(ss.str());
    }
}

void check_pair(size_t i, size_t j, size_t num_modes) {
    check_mode(i, num_modes);
    check_mode(j, num_modes);
    if (i == j) {
        throw std::invalid_argument("two-mode element needs two distinct modes");
    }
}

// Central contraction <dx dy>, keeping operator order.
cdouble central_pair(const MultiModeMoments &s, Ladder x, Ladder y) {
    if (!x.dagger && !y.dagger) {
        return s.A(x.mode, y.mode);
    }
    if (x.dagger && !y.dagger) {
        return s.B(x.mode, y.mode);
    }
    if (!x.dagger && y.dagger) {
        return s.B(y.mode, x.mode) + (x.mode == y.mode ? 1.0 : 0.0);
    }
    return std::conj(s.A(x.mode, y.mode));
}

cdouble mean_of(const MultiModeMoments &s, Ladder x) {
    cdouble m = s.mean(x.mode);
    return x.dagger ? std::conj(m) : m;
}

cdouble central_moment(const MultiModeMoments &s, std::vector<Ladder> ops) {
    if (ops.empty()) {
        return 1.0;
    }
    if (ops.size() % 2 == 1) {
        return 0.0;
    }
    cdouble total = 0;
    for (size_t j = 1; j < ops.size(); j++) {
        std::vector<Ladder> rest;
        rest.reserve(ops.size() - 2);
        for (size_t k = 1; k < ops.size(); k++) {
            if (k != j) {
                rest.push_back(ops[k]);
            }
        }
        total += central_pair(s, ops[0], ops[j]) * central_moment(s, std::move(rest));
    }
    return total;
}

}  // namespace

Eigen::MatrixXcd commutation_form(size_t num_modes) {
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(2 * num_modes, 2 * num_modes);
    for (size_t m = 0; m < num_modes; m++) {
        k(2 * m, 2 * m + 1) = 1.0;
        k(2 * m + 1, 2 * m) = -1.0;
    }
    return k;
}

BogoliubovTransform::BogoliubovTransform(size_t num_modes)
    : num_modes_(num_modes), matrix_(Eigen::MatrixXcd::Identity(2 * num_modes, 2 * num_modes)) {
}

BogoliubovTransform::BogoliubovTransform(size_t num_modes, Eigen::MatrixXcd matrix)
    : num_modes_(num_modes), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(2 * num_modes);
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument("Bogoliubov matrix must be 2M x 2M");
    }
}

double BogoliubovTransform::commutation_defect() const {
    Eigen::MatrixXcd k = commutation_form(num_modes_);
    return (matrix_ * k * matrix_.transpose() - k).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd BogoliubovTransform::quadrature_matrix() const {
    const size_t n = 2 * num_modes_;
    const double h = 1.0 / std::sqrt(2.0);
    const cdouble I(0, 1);
    Eigen::MatrixXcd to_quad = Eigen::MatrixXcd::Zero(n, n);
    for (size_t m = 0; m < num_modes_; m++) {
        to_quad(2 * m, 2 * m) = h;
        to_quad(2 * m, 2 * m + 1) = h;
        to_quad(2 * m + 1, 2 * m) = -I * h;
        to_quad(2 * m + 1, 2 * m + 1) = I * h;
    }
    return to_quad * matrix_ * to_quad.inverse();
}

double BogoliubovTransform::symplectic_defect() const {
    Eigen::MatrixXcd s = quadrature_matrix();
    Eigen::MatrixXcd k = commutation_form(num_modes_);
    return (s * k * s.adjoint() - k).cwiseAbs().maxCoeff();
}

double BogoliubovTransform::conjugation_defect() const {
    double worst = 0;
    for (size_t i = 0; i < num_modes_; i++) {
        for (size_t k = 0; k < num_modes_; k++) {
            worst = std::max(worst, std::abs(matrix_(2 * i + 1, 2 * k + 1) - std::conj(matrix_(2 * i, 2 * k))));
            worst = std::max(worst, std::abs(matrix_(2 * i + 1, 2 * k) - std::conj(matrix_(2 * i, 2 * k + 1))));
        }
    }
    return worst;
}

bool BogoliubovTransform::is_passive(double tol) const {
    for (size_t i = 0; i < num_modes_; i++) {
        for (size_t k = 0; k < num_modes_; k++) {
            if (std::abs(creation_part(i, k)) > tol) {
                return false;
            }
        }
    }
    return true;
}

BogoliubovTransform BogoliubovTransform::operator*(const BogoliubovTransform &first) const {
    if (first.num_modes_ != num_modes_) {
        throw std::invalid_argument("cannot compose transforms on different mode counts");
    }
    return BogoliubovTransform(num_modes_, matrix_ * first.matrix_);
}

BogoliubovTransform element_matrix(const CircuitElement &element, size_t num_modes) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(2 * num_modes, 2 * num_modes);
    const cdouble I(0, 1);
    if (const auto *bs = std::get_if<BeamSplitter>(&element)) {
        check_pair(bs->mode_i, bs->mode_j, num_modes);
        const double h = 1.0 / std::sqrt(2.0);
        size_t i = bs->mode_i, j = bs->mode_j;
        t(2 * i, 2 * i) = h;
        t(2 * i, 2 * j) = I * h;
        t(2 * i + 1, 2 * i + 1) = h;
        t(2 * i + 1, 2 * j + 1) = -I * h;
        t(2 * j, 2 * j) = h;
        t(2 * j, 2 * i) = I * h;
        t(2 * j + 1, 2 * j + 1) = h;
        t(2 * j + 1, 2 * i + 1) = -I * h;
    } else if (const auto *ps = std::get_if<PhaseShift>(&element)) {
        check_mode(ps->mode, num_modes);
        t(2 * ps->mode, 2 * ps->mode) = std::polar(1.0, ps->phi);
        t(2 * ps->mode + 1, 2 * ps->mode + 1) = std::polar(1.0, -ps->phi);
    } else {
        const auto &sq = std::get<TwoModeSqueezer>(element);
        check_pair(sq.mode_i, sq.mode_j, num_modes);
        const double mu = std::cosh(sq.r);
        const double nu = std::sinh(sq.r);
        size_t i = sq.mode_i, j = sq.mode_j;
        t(2 * i, 2 * i) = mu;
        t(2 * i, 2 * j + 1) = nu;
        t(2 * i + 1, 2 * i + 1) = mu;
        t(2 * i + 1, 2 * j) = nu;
        t(2 * j, 2 * j) = mu;
        t(2 * j, 2 * i + 1) = nu;
        t(2 * j + 1, 2 * j + 1) = mu;
        t(2 * j + 1, 2 * i) = nu;
    }
    return BogoliubovTransform(num_modes, std::move(t));
}

BogoliubovTransform compose(std::span<const CircuitElement> elements, size_t num_modes) {
    if (elements.empty()) {
        throw std::invalid_argument("compose needs at least one element");
    }
    BogoliubovTransform total(num_modes);
    for (const auto &e : elements) {
        total = element_matrix(e, num_modes) * total;
    }
    return total;
}

std::vector<CircuitElement> mzi_elements(double phi, double r) {
    using namespace proxy_layout;
    return {
        TwoModeSqueezer{kSignal1, kSignal2, r},
        BeamSplitter{kSignal1, kSignal2},
        PhaseShift{kSignal1, phi},
        BeamSplitter{kSignal1, kSignal2},
    };
}

std::vector<CircuitElement> homodyne_elements(double theta) {
    using namespace proxy_layout;
    return {
        PhaseShift{kLocalOscillator, theta},
        BeamSplitter{kLocalOscillator, kSignal2},
    };
}

BogoliubovTransform build_proxy_circuit(double phi, double theta, double r) {
    using namespace proxy_layout;
    std::vector<CircuitElement> elements{
        TwoModeSqueezer{kSignal1, kSignal2, r},
        BeamSplitter{kSignal1, kSignal2},
        PhaseShift{kSignal1, phi},
        PhaseShift{kLocalOscillator, theta},
        BeamSplitter{kSignal1, kSignal2},
        BeamSplitter{kLocalOscillator, kSignal2},
    };
    return compose(elements, kNumModes);
}

double MultiModeMoments::intensity(size_t mode) const {
    check_mode(mode, num_modes());
    return B(mode, mode).real() + std::norm(mean(mode));
}

cdouble MultiModeMoments::raw_square(size_t mode) const {
    check_mode(mode, num_modes());
    return A(mode, mode) + mean(mode) * mean(mode);
}

MultiModeMoments vacuum_state(size_t num_modes) {
    auto n = static_cast<Eigen::Index>(num_modes);
    return {Eigen::VectorXcd::Zero(n), Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
}

MultiModeMoments coherent_in_mode(MultiModeMoments state, size_t mode, cdouble beta) {
    check_mode(mode, state.num_modes());
    state.mean(mode) = beta;
    return state;
}

MultiModeMoments propagate(const MultiModeMoments &state, const BogoliubovTransform &transform) {
    const size_t m = state.num_modes();
    if (transform.num_modes() != m) {
        throw std::invalid_argument("transform and state have different mode counts");
    }
    // Stacked ordered second moments G_kl = <dv_k dv_l>.
    Eigen::MatrixXcd g(2 * m, 2 * m);
    Eigen::VectorXcd v(2 * m);
    for (size_t i = 0; i < m; i++) {
        v(2 * i) = state.mean(i);
        v(2 * i + 1) = std::conj(state.mean(i));
        for (size_t j = 0; j < m; j++) {
            g(2 * i, 2 * j) = state.A(i, j);
            g(2 * i, 2 * j + 1) = state.B(j, i) + (i == j ? 1.0 : 0.0);
            g(2 * i + 1, 2 * j) = state.B(i, j);
            g(2 * i + 1, 2 * j + 1) = std::conj(state.A(i, j));
        }
    }
    const Eigen::MatrixXcd &t = transform.matrix();
    Eigen::MatrixXcd g2 = t * g * t.transpose();
    Eigen::VectorXcd v2 = t * v;

    MultiModeMoments out = vacuum_state(m);
    for (size_t i = 0; i < m; i++) {
        out.mean(i) = v2(2 * i);
        for (size_t j = 0; j < m; j++) {
            out.A(i, j) = g2(2 * i, 2 * j);
            out.B(i, j) = g2(2 * i + 1, 2 * j);
        }
    }
    out.A = ((out.A + out.A.transpose()) / 2.0).eval();
    out.B = ((out.B + out.B.adjoint()) / 2.0).eval();
    return out;
}

GaussianMoments reduce_mode(const MultiModeMoments &state, size_t mode) {
    check_mode(mode, state.num_modes());
    return moments_from_raw(state.mean(mode), state.raw_square(mode), state.intensity(mode));
}

cdouble ordered_moment(const MultiModeMoments &state, std::span<const Ladder> ops) {
    const size_t n = ops.size();
    if (n > 16) {
        throw std::invalid_argument("ordered_moment supports at most 16 operators");
    }
    for (const auto &op : ops) {
        check_mode(op.mode, state.num_modes());
    }
    // Expand each operator as mean + fluctuation; odd fluctuation products vanish.
    cdouble total = 0;
    for (uint32_t mask = 0; mask < (1u << n); mask++) {
        if (std::popcount(mask) % 2 == 1) {
            continue;
        }
        cdouble term = 1;
        std::vector<Ladder> fluct;
        for (size_t k = 0; k < n; k++) {
            if (mask & (1u << k)) {
                fluct.push_back(ops[k]);
            } else {
                term *= mean_of(state, ops[k]);
            }
        }
        if (term == cdouble{}) {
            continue;
        }
        total += term * central_moment(state, std::move(fluct));
    }
    return total;
}

}  // namespace parity
