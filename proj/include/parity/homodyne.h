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

#ifndef PARITY_HOMODYNE_H
#define PARITY_HOMODYNE_H

#include <span>
#include <vector>

#include "parity/circuit.h"
#include "parity/gaussian.h"

namespace parity {

/// Which mode carries the unknown light and which the local oscillator. The
/// homodyne beam splitter leaves d = (b + i a)/sqrt2 in the LO slot and
/// c = (a + i b)/sqrt2 in the signal slot.
struct HomodyneGeometry {
    size_t signal_mode = proxy_layout::kSignal2;
    size_t lo_mode = proxy_layout::kLocalOscillator;
};

/// One intensity-correlation measurement X(theta, |beta|) = 4 <d^dag d c^dag c>.
/// beta_mag == 0 means the LO beam is blocked.
struct XMeasurement {
    double theta = 0;
    double beta_mag = 0;
    double value = 0;
};

struct SensitivityEstimate {
    double phi = 0;
    double signal = 1;
    double delta_phi = 0;
};

/// Mean detector intensities and correlations after mixing with the LO.
struct DetectorReadout {
    double d_intensity = 0;
    double c_intensity = 0;
    /// 4 <d^dag d c^dag c>
    double x = 0;
};

enum class Prescription { kThree, kFour };

/// Y(theta) = -i|beta|(<a^dag> e^{i theta} - <a> e^{-i theta}) for the unknown
/// mode of `state`. Requires beta_mag > 0.
double y_measurement(const MultiModeMoments &state, double theta, double beta_mag, HomodyneGeometry geometry = {});

struct FirstMoments {
    cdouble a_mean;
    cdouble adag_mean;
};

/// Inverts Y at theta = 0 and theta = pi/2.
FirstMoments recover_first_moments(double y0, double y_half_pi, double beta_mag);

/// Mixes `state` (LO mode in vacuum) with a coherent LO of amplitude
/// beta_mag e^{i theta} and reads out the detectors with Wick's theorem.
DetectorReadout detector_readout(
    const MultiModeMoments &state, double theta, double beta_mag, HomodyneGeometry geometry = {});

XMeasurement x_measurement(const MultiModeMoments &state, double theta, double beta_mag, HomodyneGeometry geometry = {});

/// The four-term expansion <a^dag2 a^2> + |b|^2 e^{2i theta}<a^dag2> + c.c. + |b|^4,
/// given q = <a^dag2 a^2> and adag_sq = <a^dag2>.
double x_from_moments(double q, cdouble adag_sq, double theta, double beta_mag);

/// <a^dag2 a^2> of a single-mode Gaussian state, means included.
double gaussian_fourth_moment(const GaussianMoments &m);

/// <a^dag2> from X(0,|b|), X(pi/4,|b|) and the blocked X(0,0).
cdouble recover_asq_three(
    const XMeasurement &x_0, const XMeasurement &x_quarter, const XMeasurement &x_blocked, double beta_mag);

/// <a^dag2> from X at theta = 0, pi/4, pi/2, -pi/4; no blocked measurement.
cdouble recover_asq_four(
    const XMeasurement &x_0,
    const XMeasurement &x_quarter,
    const XMeasurement &x_half,
    const XMeasurement &x_minus_quarter,
    double beta_mag);

/// (theta, |beta|) settings, in the order recover_asq expects them.
std::vector<std::pair<double, double>> prescription_settings(Prescription prescription, double beta_mag);
cdouble recover_asq(Prescription prescription, std::span<const XMeasurement> xs, double beta_mag);

/// <a_f^dag a_f> = <d^dag d> + <c^dag c> - |beta|^2.
double intensity_from_detectors(double d_intensity, double c_intensity, double beta_mag);

/// S = 1 / (2 sqrt((n_f + 1/2)^2 - |<a^dag2>|^2)).
double proxy_signal(double n_f, cdouble asq);

/// 1 / sqrt(1 + n (n + 2) sin^2 phi).
double signal_closed_form(double n_bar, double phi);

/// Photons leaving the OPA in both modes, 2 sinh^2 r.
double total_photons(double r);

/// Delta phi = sqrt(1 - S^2) / |dS/dphi| for the closed-form signal with
/// n = total_photons(r). Throws UndefinedSensitivityError where dS/dphi vanishes.
SensitivityEstimate phase_sensitivity(double r, double phi);

/// phi -> phi + pi/2, the bias that turns the circuit signal into the parity fringe.
double bias_shift(double phi);

/// Three-mode state after the interferometer, before the homodyne stage. The LO
/// mode is still vacuum and mode 2 holds a_f.
MultiModeMoments mzi_output(double phi, double r);

/// Everything the post processor derives for one circuit phase.
struct ProxyReadout {
    double phi = 0;
    std::vector<XMeasurement> x;
    cdouble asq{};
    double n_f = 0;
    double signal = 1;
    /// (pi/2) W(0,0) of the reduced a_f moments, independent of the X route.
    double parity_gaussian = 1;
};

/// Runs the moment-level measurement schedule at circuit phase phi (no bias shift).
ProxyReadout proxy_readout(double phi, double r, double beta_mag, Prescription prescription);

}  // namespace parity

#endif
