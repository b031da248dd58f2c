import math

import numpy as np
import pytest
from scipy.optimize import brentq

from semiwkb import closed
from semiwkb.errors import ConvergenceError, DomainError, NoBoundRegionError, UsageError
from semiwkb.model import PotentialSpec, QuantumNumbers, p_squared_unchecked
from semiwkb.wavefn import (
    expected_small_r_exponent,
    node_count,
    phase_at,
    sample_radii,
    small_r_exponent,
    standing_wave,
    wkb_radial_wavefunction,
    wkb_wavefunction,
)


def coulomb(coupling, alpha):
    return PotentialSpec("coulomb", coupling, mass=1.0, alpha=alpha)


@pytest.fixture(scope="module")
def scalar_ground():
    return wkb_wavefunction(QuantumNumbers(0, 0), coulomb("scalar", 0.5))


def test_phase_zero_at_inner_turning_point(scalar_ground):
    tp = scalar_ground.turning_points
    assert phase_at(tp.inner, scalar_ground)[0] == 0.0
    assert phase_at(tp.outer, scalar_ground)[0] == pytest.approx(0.5 * math.pi, rel=1e-8)


def test_turning_point_value_is_regularized(scalar_ground):
    value = wkb_radial_wavefunction(scalar_ground.turning_points.inner, scalar_ground)
    assert np.isfinite(value) and value > 0.0


def test_normalization_max_abs_one_inside():
    wf = wkb_wavefunction(QuantumNumbers(2, 1), coulomb("vector", 0.3))
    tp = wf.turning_points
    r = np.linspace(tp.inner, tp.outer, 1001)[1:-1]
    assert np.max(np.abs(wkb_radial_wavefunction(r, wf))) == pytest.approx(1.0, rel=1e-3)


def test_vector_coulomb_two_nodes():
    wf = wkb_wavefunction(QuantumNumbers(2, 0), coulomb("vector", 0.3))
    assert node_count(wf) == 2


def test_phase_median_radius():
    wf = wkb_wavefunction(QuantumNumbers(3, 1), coulomb("scalar", 0.3))
    tp = wf.turning_points
    total = math.pi * 3.5
    r_mid = brentq(lambda r: phase_at(r, wf)[0] - 0.5 * total, tp.inner, tp.outer, xtol=1e-14)
    assert phase_at(r_mid, wf)[0] == pytest.approx(0.5 * total, abs=1e-10)
    assert phase_at(tp.outer, wf)[0] == pytest.approx(total, rel=1e-8)


def test_phase_outside_allowed_region_rejected(scalar_ground):
    with pytest.raises(DomainError):
        phase_at(2.0 * scalar_ground.turning_points.outer, scalar_ground)


def test_non_eigenvalue_refused():
    with pytest.raises(ConvergenceError):
        wkb_wavefunction(QuantumNumbers(0, 0), coulomb("scalar", 0.5), energy=0.95)


def test_non_positive_radius_rejected(scalar_ground):
    with pytest.raises(DomainError):
        wkb_radial_wavefunction(0.0, scalar_ground)


def test_tails_decay(scalar_ground):
    tp = scalar_ground.turning_points
    inner = wkb_radial_wavefunction(np.array([tp.inner * 0.5, tp.inner * 0.1]), scalar_ground)
    outer = wkb_radial_wavefunction(np.array([tp.outer * 1.5, tp.outer * 3.0]), scalar_ground)
    assert inner[0] > inner[1] > 0.0
    assert abs(outer[0]) > abs(outer[1]) > 0.0


def test_standing_wave_examples(scalar_ground):
    wf = scalar_ground
    p_n = wf.p_n
    assert p_n == pytest.approx(0.4142136, abs=1e-7)
    assert p_n == pytest.approx(closed.coulomb_scalar_momentum(QuantumNumbers(0, 0), 1.0, 0.5), rel=1e-9)
    assert 2.0 * math.pi / p_n == pytest.approx(15.169, abs=1e-3)
    peak = (wf.chi1 + math.pi / 4.0) / p_n
    zero = (wf.chi1 + 3.0 * math.pi / 4.0) / p_n
    assert standing_wave(peak, wf) == pytest.approx(wf.normalization)
    assert standing_wave(zero, wf) == pytest.approx(0.0, abs=1e-12)


def test_local_wavenumber_matches_constant_momentum():
    wf = wkb_wavefunction(QuantumNumbers(0, 0), coulomb("scalar", 0.5))
    tp = wf.turning_points
    r = np.linspace(tp.inner, tp.outer, 2001)[1:-1]
    p = np.sqrt(p_squared_unchecked(r, wf.energy, wf.spec, 0))
    near = r[np.abs(p / wf.p_n - 1.0) < 0.01]
    assert near.size > 0
    h = 1e-6
    for radius in near[:: max(1, near.size // 5)]:
        k = (phase_at(radius + h, wf)[0] - phase_at(radius - h, wf)[0]) / (2 * h)
        assert k == pytest.approx(wf.p_n, rel=0.011)


def test_p_n_only_for_coulomb():
    wf = wkb_wavefunction(QuantumNumbers(0, 0), PotentialSpec("linear", "scalar", kappa=0.2, two_body=True))
    assert wf.chi1 == 0.0
    with pytest.raises(UsageError):
        wf.p_n


@pytest.mark.parametrize(
    "spec",
    [
        coulomb("vector", 0.3),
        coulomb("scalar", 0.3),
        PotentialSpec("linear", "scalar", kappa=0.2, two_body=True),
        PotentialSpec("linear", "scalar", mass=0.5, kappa=0.2, two_body=True),
        PotentialSpec("funnel", "scalar", alpha=0.39, kappa=0.14, two_body=True),
    ],
    ids=["coulomb-vector", "coulomb-scalar", "linear-massless", "linear-massive", "funnel"],
)
@pytest.mark.parametrize("l", [0, 2])
def test_node_count_equals_n_r(spec, l):
    for n_r in range(6):
        assert node_count(wkb_wavefunction(QuantumNumbers(n_r, l), spec)) == n_r


@pytest.mark.parametrize(
    "coupling, alpha, expected",
    [("scalar", 0.5, 0.2071068), ("vector", 0.3, -0.1)],
)
def test_small_r_exponent_examples(coupling, alpha, expected):
    wf = wkb_wavefunction(QuantumNumbers(0, 0), coulomb(coupling, alpha))
    slope = small_r_exponent(wf)
    assert slope == pytest.approx(expected, abs=1e-3)
    assert slope == pytest.approx(expected_small_r_exponent(wf.spec, 0), abs=1e-3)


@pytest.mark.parametrize("l", [0, 1, 3])
def test_scalar_exponent_positive_vector_s_wave_negative(l):
    scalar = small_r_exponent(wkb_wavefunction(QuantumNumbers(0, l), coulomb("scalar", 0.4)))
    assert scalar > 0.0
    if l == 0:
        assert small_r_exponent(wkb_wavefunction(QuantumNumbers(0, 0), coulomb("vector", 0.4))) < 0.0


def test_free_limit_exponent_is_l():
    for l in range(4):
        assert expected_small_r_exponent(coulomb("scalar", 0.0), l) == pytest.approx(l)
        assert expected_small_r_exponent(coulomb("vector", 0.0), l) == pytest.approx(l)


def test_exponent_needs_inner_barrier():
    wf = wkb_wavefunction(QuantumNumbers(0, 0), coulomb("vector", 0.5))
    with pytest.raises(NoBoundRegionError):
        small_r_exponent(wf)


def test_exponent_needs_coulomb():
    wf = wkb_wavefunction(QuantumNumbers(0, 0), PotentialSpec("linear", "scalar", kappa=0.2, two_body=True))
    with pytest.raises(UsageError):
        small_r_exponent(wf)


def test_sample_radii_cover_both_tails(scalar_ground):
    r = sample_radii(scalar_ground, 800)
    tp = scalar_ground.turning_points
    assert r.min() < tp.inner and r.max() > tp.outer
    assert np.all(np.diff(r) > 0.0)
