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

#include "parity/gaussian.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "parity/errors.h"

namespace parity {

double GaussianMoments::determinant() const {
    return tau * tau - 4.0 * std::norm(u);
}

bool GaussianMoments::is_physical(double tol) const {
    return tau >= 0.5 - tol && determinant() >= 0.25 - tol;
}

GaussianMoments moments_from_raw(cdouble a_mean, cdouble asq_mean, double n_mean) {
    GaussianMoments m;
    m.alpha0 = a_mean;
    m.u = -(std::conj(asq_mean) - std::conj(a_mean) * std::conj(a_mean)) / 2.0;
    m.tau = n_mean + 0.5 - std::norm(a_mean);
    if (!m.is_physical()) {
        std::stringstream ss;
        ss << "moments are not a physical Gaussian state: tau=" << m.tau
           << " tau^2-4|u|^2=" << m.determinant() << " (need >= 1/4)";
        throw UnphysicalMomentsError(ss.str());
    }
    return m;
}

double wigner_value(const GaussianMoments &m, cdouble alpha) {
    double det = m.determinant();
    if (!(det > 0)) {
        throw UnphysicalMomentsError("degenerate Wigner function: tau^2-4|u|^2 <= 0");
    }
    cdouble z = alpha - m.alpha0;
    // u z^2 + conj(u z^2) is real.
    double quad = 2.0 * std::real(m.u * z * z) + m.tau * std::norm(z);
    return std::exp(-quad / det) / (std::numbers::pi * std::sqrt(det));
}

double wigner_at_origin(const GaussianMoments &m) {
    if (m.alpha0 == cdouble{}) {
        double det = m.determinant();
        if (!(det > 0)) {
            throw UnphysicalMomentsError("degenerate Wigner function: tau^2-4|u|^2 <= 0");
        }
        return 1.0 / (std::numbers::pi * std::sqrt(det));
    }
    return wigner_value(m, 0.0);
}

double parity_expectation(const GaussianMoments &m) {
    return std::numbers::pi / 2.0 * wigner_at_origin(m);
}

}  // namespace parity
