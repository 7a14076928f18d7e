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

#include "parity/homodyne.h"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "parity/errors.h"

namespace parity {

namespace {

constexpr double kPi = std::numbers::pi;
const cdouble kI(0, 1);

void require_live_lo(double beta_mag) {
    if (!(beta_mag > 0)) {
        throw std::invalid_argument("local oscillator amplitude must be positive");
    }
}

// X depends on theta only through e^{2i theta}.
bool same_bias(double theta, double expected) {
    double d = std::remainder(theta - expected, kPi);
    return std::abs(d) <= 1e-12;
}

void require_setting(const XMeasurement &x, double theta, double beta_mag, const char *name) {
    if (!same_bias(x.theta, theta)) {
        std::stringstream ss;
        ss << name << " measurement taken at theta=" << x.theta << ", expected " << theta;
        throw std::invalid_argument(ss.str());
    }
    if (std::abs(x.beta_mag - beta_mag) > 1e-12 * std::max(1.0, beta_mag)) {
        std::stringstream ss;
        ss << name << " measurement taken at |beta|=" << x.beta_mag << ", expected " << beta_mag;
        throw std::invalid_argument(ss.str());
    }
}

}  // namespace

double y_measurement(const MultiModeMoments &state, double theta, double beta_mag, HomodyneGeometry geometry) {
    if (!(beta_mag > 0)) {
        throw std::invalid_argument("Y measurement is degenerate for a blocked local oscillator");
    }
    cdouble a = state.mean(static_cast<Eigen::Index>(geometry.signal_mode));
    cdouble y = -kI * beta_mag * (std::conj(a) * std::polar(1.0, theta) - a * std::polar(1.0, -theta));
    return y.real();
}

FirstMoments recover_first_moments(double y0, double y_half_pi, double beta_mag) {
    require_live_lo(beta_mag);
    FirstMoments out;
    out.adag_mean = (y_half_pi + kI * y0) / (2.0 * beta_mag);
    out.a_mean = (y_half_pi - kI * y0) / (2.0 * beta_mag);
    return out;
}

DetectorReadout detector_readout(
    const MultiModeMoments &state, double theta, double beta_mag, HomodyneGeometry geometry) {
    if (beta_mag < 0) {
        throw std::invalid_argument("local oscillator amplitude must be nonnegative");
    }
    const size_t d = geometry.lo_mode;
    const size_t c = geometry.signal_mode;
    std::vector<CircuitElement> mixer{PhaseShift{d, theta}, BeamSplitter{d, c}};
    MultiModeMoments out =
        propagate(coherent_in_mode(state, d, beta_mag), compose(mixer, state.num_modes()));

    DetectorReadout r;
    r.d_intensity = out.intensity(d);
    r.c_intensity = out.intensity(c);
    std::array<Ladder, 4> ops{Ladder{d, true}, Ladder{d, false}, Ladder{c, true}, Ladder{c, false}};
    r.x = 4.0 * ordered_moment(out, ops).real();
    return r;
}

XMeasurement x_measurement(const MultiModeMoments &state, double theta, double beta_mag, HomodyneGeometry geometry) {
    return {theta, beta_mag, detector_readout(state, theta, beta_mag, geometry).x};
}

double x_from_moments(double q, cdouble adag_sq, double theta, double beta_mag) {
    double b2 = beta_mag * beta_mag;
    cdouble cross = b2 * std::polar(1.0, 2 * theta) * adag_sq;
    return q + 2.0 * cross.real() + b2 * b2;
}

double gaussian_fourth_moment(const GaussianMoments &m) {
    // Central moments: n = <da^dag da>, s = <da^2>.
    double n = m.tau - 0.5;
    cdouble s = -2.0 * std::conj(m.u);
    cdouble a = m.alpha0;
    double a2 = std::norm(a);
    double cross = 2.0 * (std::conj(s) * a * a).real();
    return a2 * a2 + 4.0 * n * a2 + cross + 2.0 * n * n + std::norm(s);
}

cdouble recover_asq_three(
    const XMeasurement &x_0, const XMeasurement &x_quarter, const XMeasurement &x_blocked, double beta_mag) {
    require_live_lo(beta_mag);
    require_setting(x_0, 0, beta_mag, "theta=0");
    require_setting(x_quarter, kPi / 4, beta_mag, "theta=pi/4");
    if (x_blocked.beta_mag != 0) {
        throw std::invalid_argument("blocked measurement must have |beta| = 0");
    }
    double b2 = beta_mag * beta_mag;
    cdouble num = kI * x_0.value + x_quarter.value - (kI + 1.0) * x_blocked.value - (kI + 1.0) * b2 * b2;
    return num / (2.0 * kI * b2);
}

cdouble recover_asq_four(
    const XMeasurement &x_0,
    const XMeasurement &x_quarter,
    const XMeasurement &x_half,
    const XMeasurement &x_minus_quarter,
    double beta_mag) {
    require_live_lo(beta_mag);
    require_setting(x_0, 0, beta_mag, "theta=0");
    require_setting(x_quarter, kPi / 4, beta_mag, "theta=pi/4");
    require_setting(x_half, kPi / 2, beta_mag, "theta=pi/2");
    require_setting(x_minus_quarter, -kPi / 4, beta_mag, "theta=-pi/4");
    double b2 = beta_mag * beta_mag;
    cdouble num = kI * x_0.value + x_quarter.value - kI * x_half.value - x_minus_quarter.value;
    return num / (4.0 * kI * b2);
}

std::vector<std::pair<double, double>> prescription_settings(Prescription prescription, double beta_mag) {
    if (prescription == Prescription::kThree) {
        return {{0.0, beta_mag}, {kPi / 4, beta_mag}, {0.0, 0.0}};
    }
    return {{0.0, beta_mag}, {kPi / 4, beta_mag}, {kPi / 2, beta_mag}, {-kPi / 4, beta_mag}};
}

cdouble recover_asq(Prescription prescription, std::span<const XMeasurement> xs, double beta_mag) {
    if (prescription == Prescription::kThree) {
        if (xs.size() != 3) {
            throw std::invalid_argument("three-measurement prescription needs 3 X values");
        }
        return recover_asq_three(xs[0], xs[1], xs[2], beta_mag);
    }
    if (xs.size() != 4) {
        throw std::invalid_argument("four-phase prescription needs 4 X values");
    }
    return recover_asq_four(xs[0], xs[1], xs[2], xs[3], beta_mag);
}

double intensity_from_detectors(double d_intensity, double c_intensity, double beta_mag) {
    double n = d_intensity + c_intensity - beta_mag * beta_mag;
    if (n < -1e-9) {
        std::stringstream ss;
        ss << "detector intensities imply negative signal intensity " << n;
        throw std::invalid_argument(ss.str());
    }
    return n;
}

double proxy_signal(double n_f, cdouble asq) {
    double radicand = (n_f + 0.5) * (n_f + 0.5) - std::norm(asq);
    if (!(radicand > 0)) {
        std::stringstream ss;
        ss << "proxy signal radicand (n+1/2)^2-|<a^dag2>|^2 = " << radicand << " is not positive";
        throw UnphysicalMomentsError(ss.str());
    }
    return 1.0 / (2.0 * std::sqrt(radicand));
}

double signal_closed_form(double n_bar, double phi) {
    double s = std::sin(phi);
    return 1.0 / std::sqrt(1.0 + n_bar * (n_bar + 2.0) * s * s);
}

double total_photons(double r) {
    double s = std::sinh(r);
    return 2.0 * s * s;
}

SensitivityEstimate phase_sensitivity(double r, double phi) {
    double n = total_photons(r);
    double k = n * (n + 2.0);
    double s = std::sin(phi);
    double c = std::cos(phi);
    double base = 1.0 + k * s * s;
    double signal = 1.0 / std::sqrt(base);
    double slope = -k * s * c / (base * std::sqrt(base));
    if (std::abs(slope) < 1e-15) {
        std::stringstream ss;
        ss << "signal slope vanishes at phi=" << phi << " (r=" << r << "); sensitivity undefined";
        throw UndefinedSensitivityError(ss.str());
    }
    double noise = std::sqrt(std::max(0.0, 1.0 - signal * signal));
    return {phi, signal, noise / std::abs(slope)};
}

double bias_shift(double phi) {
    return phi + kPi / 2;
}

MultiModeMoments mzi_output(double phi, double r) {
    return propagate(vacuum_state(proxy_layout::kNumModes), compose(mzi_elements(phi, r), proxy_layout::kNumModes));
}

ProxyReadout proxy_readout(double phi, double r, double beta_mag, Prescription prescription) {
    require_live_lo(beta_mag);
    MultiModeMoments state = mzi_output(phi, r);
    ProxyReadout out;
    out.phi = phi;
    double d_int = 0, c_int = 0;
    bool have_live = false;
    for (auto [theta, beta] : prescription_settings(prescription, beta_mag)) {
        DetectorReadout det = detector_readout(state, theta, beta);
        out.x.push_back({theta, beta, det.x});
        if (!have_live && beta > 0) {
            d_int = det.d_intensity;
            c_int = det.c_intensity;
            have_live = true;
        }
    }
    out.asq = recover_asq(prescription, out.x, beta_mag);
    out.n_f = intensity_from_detectors(d_int, c_int, beta_mag);
    out.signal = proxy_signal(out.n_f, out.asq);
    out.parity_gaussian = parity_expectation(reduce_mode(state, proxy_layout::kSignal2));
    return out;
}

}  // namespace parity
