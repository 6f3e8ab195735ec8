import cmath
import math

import numpy as np
import pytest

import hankel_lab as hl


def test_measure_and_moments():
    m = hl.validate_measure([(1.0, 0.5), (2.0, 1.0)])
    assert len(m) == 2
    assert m.inverse_moment(2) == pytest.approx(0.75)
    inv2, inv4, verdict = hl.classify_kernel(m)
    assert verdict == "NontrivialKernel"
    assert inv4 == pytest.approx(0.5625)
    with pytest.raises(hl.HankelError):
        hl.validate_measure([(1.0, 2.0)])


def test_golden_roundtrip():
    datum = hl.forward_spectral_map(np.array([1.0, 1.0], dtype=complex), 2)
    golden = (math.sqrt(5.0) + 1.0) / 2.0
    assert datum.rho.support[1] == pytest.approx(golden, abs=1e-12)
    assert datum.rho.inverse_moment(2) == pytest.approx(1.0, abs=1e-12)
    assert datum.psi[0] == pytest.approx(-1.0)
    coeffs, datum2, err = hl.roundtrip(datum)
    assert err <= 1e-9
    assert coeffs[0] == pytest.approx(1.0, abs=1e-10)
    assert coeffs[1] == pytest.approx(1.0, abs=1e-10)


def test_model_identities():
    m = hl.validate_measure([(0.8, 0.3), (1.7, 0.6), (2.4, 0.9)])
    n_pos = hl.count_positive_tilde_atoms(m)
    datum = hl.SpectralDatum(m, np.exp(1j * np.array([0.3, -1.0, 2.2])), np.ones(n_pos, dtype=complex))
    model = hl.build_model(datum)
    rep = hl.stability_report(datum, k_max=64, probes=2)
    assert rep.max_telescoping_residual <= 1e-10
    assert rep.spectral_radius <= 1.0 + 1e-12
    norm, lmax = hl.strict_contraction_check(model)
    assert lmax < 1.0


def test_flow_single_mode():
    modes = hl.integrate_direct(np.array([1.0 + 0j]), 1.0, 4, 1e-3)
    assert abs(modes[0] - cmath.exp(-1j)) <= 1e-9
    datum = hl.forward_spectral_map(np.array([1.0 + 0j]), 2)
    assert hl.hat_u0_of_t(datum, 1.0) == pytest.approx(cmath.exp(-1j), abs=1e-12)


def test_kappa_and_arc():
    dm = hl.DensityMeasure(1.0, 2.0, lambda s: 1.0).with_inv2(0.9)
    k, f0p, f1p, t0, eta_err, f1_pos = hl.kappa(dm, 1.5)
    assert 0.70 < k < 0.72
    assert f1_pos
    rep = hl.halmos_arc_experiment(dm, 1.5, [64])
    assert rep["levels"][0]["inside_inflated"]


def test_ap_average():
    atoms = [(1.7, 0.3 + 0.4j)]
    assert hl.ap_time_average(atoms, 100.0) == pytest.approx(0.25, abs=1e-12)
