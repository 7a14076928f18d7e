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

#ifndef PARITY_CIRCUIT_H
#define PARITY_CIRCUIT_H

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "parity/gaussian.h"

namespace parity {

// Linear optics acting on mode operators in the Heisenberg picture. A transform
// on M modes is a 2M x 2M complex matrix T mapping the operator vector
//
//     v = (a_1, a_1^dag, a_2, a_2^dag, ..., a_M, a_M^dag)
//
// to v' = T v. Applying T1 and then T2 is the product T2 * T1.

/// 50:50 beam splitter, a_i -> (a_i + i a_j)/sqrt2, a_j -> (a_j + i a_i)/sqrt2.
struct BeamSplitter {
    size_t mode_i;
    size_t mode_j;
};

/// a -> e^{i phi} a.
struct PhaseShift {
    size_t mode;
    double phi;
};

/// Two-mode squeezer with zero pump phase:
/// a_i -> cosh(r) a_i + sinh(r) a_j^dag, a_j -> cosh(r) a_j + sinh(r) a_i^dag.
struct TwoModeSqueezer {
    size_t mode_i;
    size_t mode_j;
    double r;
};

using CircuitElement = std::variant<BeamSplitter, PhaseShift, TwoModeSqueezer>;

/// Block-diagonal commutator matrix K with blocks [[0, 1], [-1, 0]], K_kl = [v_k, v_l].
Eigen::MatrixXcd commutation_form(size_t num_modes);

class BogoliubovTransform {
   public:
    /// Identity on num_modes modes.
    explicit BogoliubovTransform(size_t num_modes);
    BogoliubovTransform(size_t num_modes, Eigen::MatrixXcd matrix);

    size_t num_modes() const {
        return num_modes_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

    /// Row for a_i, column for a_k: coefficient of a_k in a_i'.
    cdouble annihilation_part(size_t i, size_t k) const {
        return matrix_(2 * i, 2 * k);
    }
    /// Coefficient of a_k^dag in a_i'.
    cdouble creation_part(size_t i, size_t k) const {
        return matrix_(2 * i, 2 * k + 1);
    }

    /// max |T K T^T - K|. Zero iff canonical commutators are preserved.
    double commutation_defect() const;

    /// The same map on quadratures (x_1, p_1, ..., x_M, p_M), x = (a + a^dag)/sqrt2,
    /// p = (a - a^dag)/(i sqrt2). Real for every physical transform.
    Eigen::MatrixXcd quadrature_matrix() const;
    /// max |S K S^dag - K| with S = quadrature_matrix(). Since S is real this is
    /// the symplectic condition S K S^T = K.
    double symplectic_defect() const;
    /// max deviation of the a^dag rows from the conjugated, column-swapped a rows.
    double conjugation_defect() const;
    /// True when no a <-> a^dag mixing occurs.
    bool is_passive(double tol = 1e-14) const;

    /// (*this) applied after `first`.
    BogoliubovTransform operator*(const BogoliubovTransform &first) const;

   private:
    size_t num_modes_;
    Eigen::MatrixXcd matrix_;
};

BogoliubovTransform element_matrix(const CircuitElement &element, size_t num_modes);

/// Composes elements listed in the order light meets them: the first element is
/// applied first, so the result is M_n * ... * M_2 * M_1.
BogoliubovTransform compose(std::span<const CircuitElement> elements, size_t num_modes);

/// Canonical three-mode layout of the parity-by-proxy interferometer.
///
/// Inputs are [a1, b, a2]: the two OPA signal modes and the local oscillator.
/// After the full circuit, mode 0 holds the upper MZI output a_u, mode 1 the
/// detector mode d and mode 2 the detector mode c.
namespace proxy_layout {
inline constexpr size_t kNumModes = 3;
inline constexpr size_t kSignal1 = 0;
inline constexpr size_t kLocalOscillator = 1;
inline constexpr size_t kSignal2 = 2;
inline constexpr size_t kUpperOutput = 0;
inline constexpr size_t kDetectorD = 1;
inline constexpr size_t kDetectorC = 2;
}  // namespace proxy_layout

/// OPA, first beam splitter, probe phase phi: the interferometer without the
/// homodyne stage. Mode 2 then holds a_f.
std::vector<CircuitElement> mzi_elements(double phi, double r);
/// LO bias phase theta then the homodyne beam splitter between b and a_f.
std::vector<CircuitElement> homodyne_elements(double theta);
/// The full interferometer, equal to the five-matrix product written out for
/// ordering [a1, a1^dag, b, b^dag, a2, a2^dag].
BogoliubovTransform build_proxy_circuit(double phi, double theta, double r);

/// Gaussian moments on M modes. Second moments are central:
///     A_ij = <a_i a_j> - m_i m_j         (symmetric)
///     B_ij = <a_i^dag a_j> - conj(m_i) m_j  (Hermitian)
struct MultiModeMoments {
    Eigen::VectorXcd mean;
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;

    size_t num_modes() const {
        return static_cast<size_t>(mean.size());
    }
    /// <a_i^dag a_i> including the mean contribution.
    double intensity(size_t mode) const;
    /// <a_i^2> including the mean contribution.
    cdouble raw_square(size_t mode) const;
};

MultiModeMoments vacuum_state(size_t num_modes);
/// Displaces `mode` to mean beta. Fluctuations are unchanged.
MultiModeMoments coherent_in_mode(MultiModeMoments state, size_t mode, cdouble beta);

MultiModeMoments propagate(const MultiModeMoments &state, const BogoliubovTransform &transform);
GaussianMoments reduce_mode(const MultiModeMoments &state, size_t mode);

/// One ladder operator a_mode or a_mode^dag.
struct Ladder {
    size_t mode;
    bool dagger;
};

/// Ordered expectation <x_1 x_2 ... x_n> of a Gaussian
/// state, by Wick's theorem over ordered central pair contractions.
cdouble ordered_moment(const MultiModeMoments &state, std::span<const Ladder> ops);

}  // namespace parity

#endif
