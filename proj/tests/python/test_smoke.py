# Copyright 2026 The parity-proxy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import parity_proxy as pp


def test_vacuum_parity_is_one():
    assert pp.parity_expectation(pp.GaussianMoments()) == pytest.approx(1.0, abs=1e-15)


def test_thermal_parity():
    g = pp.moments_from_raw(0j, 0j, 1.0)
    assert pp.parity_expectation(g) == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_unphysical_moments_raise():
    with pytest.raises(pp.UnphysicalMomentsError):
        pp.moments_from_raw(0j, 2.0 + 0j, 0.1)


def test_proxy_matches_closed_form():
    r = 0.7
    n_bar = pp.total_photons(r)
    for phi in np.linspace(0.1, 3.0, 7):
        readout = pp.proxy_readout(pp.bias_shift(phi), r, 2.0, pp.Prescription.FOUR)
        assert readout.signal == pytest.approx(pp.signal_closed_form(n_bar, phi), abs=1e-12)
        assert readout.parity_gaussian == pytest.approx(readout.signal, abs=1e-12)


def test_circuit_is_symplectic():
    t = pp.build_proxy_circuit(0.3, 1.1, 0.5)
    assert t.num_modes == 3
    assert t.matrix.shape == (6, 6)
    assert t.commutation_defect() < 1e-12
    assert t.symplectic_defect() < 1e-12
    assert np.allclose(np.imag(t.quadrature_matrix()), 0.0, atol=1e-14)


def test_fock_agrees_with_gaussian():
    r = 0.5
    phi = 0.9
    g = pp.parity_expectation(pp.mzi_output(phi, r).reduce(2))
    assert pp.fock_parity(phi, r, 40) == pytest.approx(g, abs=1e-8)


def test_sweep_table():
    t = pp.sweep(r=0.5, steps=8)
    assert t["columns"][0] == "phi"
    assert len(t["rows"]) == 8
    for row in t["rows"]:
        assert row[1] == pytest.approx(row[2], abs=1e-12)


def test_bad_option_raises():
    with pytest.raises(pp.ConfigError):
        pp.sweep(steps=0)
    with pytest.raises(pp.ConfigError):
        pp.sweep(nonsense=1)


def test_sensitivity_rejects_zero_squeezing():
    with pytest.raises(pp.ConfigError):
        pp.sensitivity(r=0.0)


def test_experiment_within_error():
    r, phi = 0.4, 0.6
    res = pp.run_proxy_experiment(phi, r, beta=1.5, shots=20000, seed=7, cutoff=40)
    assert res["valid"]
    expected = pp.signal_closed_form(pp.total_photons(r), phi)
    assert abs(res["mean"] - expected) < 5 * res["stderr"]


def test_validate_default_passes():
    checks = pp.validate(r=0.5, cutoff=60)
    assert checks
    assert all(c[0] for c in checks.values())


def test_sensitivity_positive():
    assert pp.phase_sensitivity(0.5, 0.2) > 0
    assert math.isfinite(pp.phase_sensitivity(0.5, 0.2))
