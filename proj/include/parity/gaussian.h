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

#ifndef PARITY_GAUSSIAN_H
#define PARITY_GAUSSIAN_H

#include <complex>

namespace parity {

using cdouble = std::complex<double>;

/// Slack allowed below the vacuum bound tau^2 - 4|u|^2 >= 1/4.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Single-mode Gaussian state in the (alpha0, u, tau) parameterization of its
/// Wigner function:
///
///     <a> = alpha0
///     <a^dag^2> - <a^dag>^2 = -2u
///     <a^dag a + 1/2> - <a^dag><a> = tau
///
/// Equivalently u = -conj(<da^2>)/2 and tau = <da^dag da> + 1/2 for the
/// central fluctuation da = a - alpha0.
struct GaussianMoments {
    cdouble alpha0{};
    cdouble u{};
    double tau = 0.5;

    /// tau^2 - 4|u|^2; equals 1/4 for pure states.
    double determinant() const;
    bool is_physical(double tol = kPhysicalityTolerance) const;

    static GaussianMoments vacuum() { return {}; }
};

/// Builds moments from raw expectations <a>, <a^2>, <a^dag a>.
/// Throws UnphysicalMomentsError if the result is not a physical Gaussian state.
GaussianMoments moments_from_raw(cdouble a_mean, cdouble asq_mean, double n_mean);

/// Gaussian Wigner function W(alpha, alpha*). Strictly positive.
double wigner_value(const GaussianMoments &m, cdouble alpha);

/// W(0,0). Uses the full displaced formula when alpha0 != 0.
double wigner_at_origin(const GaussianMoments &m);

/// <(-1)^N> = (pi/2) W(0,0).
double parity_expectation(const GaussianMoments &m);

}  // namespace parity

#endif
