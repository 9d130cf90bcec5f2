import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekit.builtin import (
    ConditionalUnitarySpec,
    conditional_unitary,
    depolarizing,
    phase_gate,
    phase_gate_dilation,
    randomizing,
)
from phasekit.channel import Dilation, dilate, extract_kraus, identity_dilation, make_kraus_set, unitary_dilation
from phasekit.errors import IndexOutOfRange, NotUnitary
from phasekit.matcore import SIGMA_X, BlochVector, DensityMatrix, PureState, basis_state, bloch_to_density
from phasekit.phase import (
    PhaseResult,
    ancilla_phase,
    circular_distance,
    cp_phase,
    cp_phase_mu,
    effective_operator,
    effective_operator_from_kraus,
    fringe,
    fringe_grid,
    in_phase,
    mixed_unitary_phase,
    pancharatnam,
    wrap_angle,
)
from phasekit.sampling import random_density, random_dilation, random_pure_state, random_unitary

seeds = st.integers(0, 2**32 - 1)
PLUS = PureState.normalized([1, 1])


@given(st.floats(-50, 50))
def test_wrap_angle_range(x):
    w = wrap_angle(x)
    assert -math.pi < w <= math.pi
    assert abs(math.sin(w) - math.sin(x)) < 1e-9 and abs(math.cos(w) - math.cos(x)) < 1e-9


def test_wrap_angle_boundary():
    assert wrap_angle(-math.pi) == math.pi
    assert wrap_angle(math.pi) == math.pi
    assert circular_distance(math.pi - 1e-3, -math.pi + 1e-3) == pytest.approx(2e-3)


def test_undefined_phase_result():
    pr = PhaseResult.from_amplitude(1e-13 + 1e-13j)
    assert not pr.defined and pr.phase == 0.0


def test_pancharatnam_examples():
    pr = pancharatnam(basis_state(2, 0), PLUS)
    assert pr.phase == 0 and pr.visibility == pytest.approx(1 / math.sqrt(2), abs=1e-15)

    psi = random_pure_state(np.random.default_rng(3), 3)
    for alpha in (0.3, 2.5, -3.0, 4.0):
        pr = pancharatnam(psi, PureState(np.exp(1j * alpha) * psi.amplitudes))
        assert circular_distance(pr.phase, alpha) < 1e-12 and pr.visibility == pytest.approx(1)

    assert not pancharatnam(basis_state(2, 0), basis_state(2, 1)).defined


def test_mixed_unitary_phase_examples():
    theta = 1.2
    pr = mixed_unitary_phase(DensityMatrix.maximally_mixed(2), phase_gate(theta))
    assert pr.phase == pytest.approx(theta / 2, abs=1e-14)
    assert pr.visibility == pytest.approx(abs(math.cos(theta / 2)), abs=1e-14)
    assert not mixed_unitary_phase(DensityMatrix.maximally_mixed(2), SIGMA_X).defined
    with pytest.raises(NotUnitary):
        mixed_unitary_phase(DensityMatrix.maximally_mixed(2), [[1, 1], [0, 1]])


@settings(max_examples=50)
@given(seeds, st.integers(2, 4))
def test_reduction_chain(seed, dim):
    rng = np.random.default_rng(seed)
    psi = random_pure_state(rng, dim)
    u = random_unitary(rng, dim)
    a = pancharatnam(psi, PureState(u @ psi.amplitudes))
    b = mixed_unitary_phase(psi.projector(), u)
    c = cp_phase(make_kraus_set([u]), psi.projector())
    assert circular_distance(a.phase, b.phase) <= 1e-10 and circular_distance(b.phase, c.phase) <= 1e-10
    assert abs(a.visibility - c.visibility) <= 1e-10


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.75, 0.9])
def test_cp_phase_depolarizing(rng, p):
    rho = random_density(rng, 2)
    pr = cp_phase(depolarizing(p), rho)
    assert pr.phase == 0.0
    assert pr.visibility == pytest.approx(math.sqrt(1 - p), abs=1e-12)


def test_cp_phase_identity(rng):
    pr = cp_phase(make_kraus_set([np.eye(3)]), random_density(rng, 3))
    assert pr.phase == 0 and pr.visibility == pytest.approx(1)


def test_cp_phase_mu_examples(rng):
    p, z = 0.3, 0.6
    rho = bloch_to_density(BlochVector(0, 0, z))
    pr = cp_phase_mu(depolarizing(p), rho, 3)
    assert pr.phase == 0 and pr.visibility == pytest.approx(math.sqrt(p / 3) * z, abs=1e-14)

    assert not cp_phase_mu(depolarizing(p), DensityMatrix.maximally_mixed(2), 1).defined

    k = extract_kraus(random_dilation(rng, 2, 3), random_pure_state(rng, 3))
    rho = random_density(rng, 2)
    assert cp_phase_mu(k, rho, 0) == cp_phase(k, rho)
    with pytest.raises(IndexOutOfRange):
        cp_phase_mu(k, rho, 3)


def test_effective_operator_examples(rng):
    a = random_pure_state(rng, 3)
    np.testing.assert_allclose(effective_operator(identity_dilation(2, 3), a), np.eye(2), atol=1e-15)

    _, d, a = randomizing()
    np.testing.assert_allclose(effective_operator(d, a), [[0.5, 0.5], [0, 0]], atol=1e-15)


def test_effective_operator_conditional_unitary(rng):
    us = [random_unitary(rng, 3) for _ in range(2)]
    a = random_pure_state(rng, 3)
    n = effective_operator(conditional_unitary(ConditionalUnitarySpec(tuple(us))), a)
    expected = np.diag([np.vdot(a.amplitudes, u @ a.amplitudes) for u in us])
    np.testing.assert_allclose(n, expected, atol=1e-14)


@settings(max_examples=60)
@given(seeds, st.integers(2, 4), st.integers(1, 4))
def test_effective_operator_two_routes(seed, dim, anc):
    rng = np.random.default_rng(seed)
    d = random_dilation(rng, dim, anc)
    a = random_pure_state(rng, anc)
    assert np.max(np.abs(effective_operator(d, a) - effective_operator_from_kraus(d, a))) <= 1e-12
    rho = random_density(rng, dim)
    direct = ancilla_phase(d, a, rho)
    via_kraus = sum(np.conj(c) * np.trace(f @ rho.matrix) for c, f in zip(a.amplitudes, extract_kraus(d, a)))
    assert abs(direct.amplitude - via_kraus) <= 1e-12
    if direct.visibility > 1e-6:
        assert circular_distance(direct.phase, np.angle(via_kraus)) <= 1e-10


@settings(max_examples=40)
@given(seeds, st.integers(2, 4), st.integers(1, 4))
def test_ancilla_phase_basis_state_matches_cp_phase(seed, dim, anc):
    rng = np.random.default_rng(seed)
    d = random_dilation(rng, dim, anc)
    rho = random_density(rng, dim)
    zero = basis_state(anc, 0)
    a = ancilla_phase(d, zero, rho)
    b = cp_phase(extract_kraus(d, zero), rho)
    assert abs(a.amplitude - b.amplitude) <= 1e-10


def test_ancilla_phase_examples(rng):
    p = 0.4
    pr = ancilla_phase(dilate(depolarizing(p)), basis_state(4), random_density(rng, 2))
    assert abs(pr.phase) <= 1e-12 and pr.visibility == pytest.approx(math.sqrt(1 - p), abs=1e-12)

    _, d, a = randomizing()
    pr = ancilla_phase(d, a, PureState.normalized([1, 1j]).projector())
    assert pr.phase == pytest.approx(math.pi / 4, abs=1e-12)
    assert pr.visibility == pytest.approx(math.sqrt(2) / 4, abs=1e-12)

    u = random_unitary(rng, 3)
    anc = random_pure_state(rng, 3)
    d = Dilation(2, 3, np.kron(np.eye(2), u))
    expected = np.angle(np.vdot(anc.amplitudes, u @ anc.amplitudes))
    for _ in range(3):
        pr = ancilla_phase(d, anc, random_density(rng, 2))
        assert circular_distance(pr.phase, expected) <= 1e-12


def test_ancilla_dependence_of_phase(rng):
    # the same joint unitary gives different phases for different ancilla preparations
    d = random_dilation(rng, 2, 2)
    rho = random_density(rng, 2)
    a = ancilla_phase(d, basis_state(2, 0), rho)
    b = ancilla_phase(d, PureState.normalized([1, 1j]), rho)
    assert circular_distance(a.phase, b.phase) > 1e-3


def test_phase_scales_with_mixing(rng):
    d = random_dilation(rng, 2, 2)
    a = random_pure_state(rng, 2)
    rho = random_density(rng, 2)
    base = ancilla_phase(d, a, rho)
    for lam in (0.25, 0.5, 0.9):
        mixed = DensityMatrix.from_operator(lam * rho.matrix + (1 - lam) * rho.matrix)
        pr = ancilla_phase(d, a, mixed)
        assert circular_distance(pr.phase, base.phase) <= 1e-12
    # amplitude is linear in the state
    other = random_density(rng, 2)
    combo = DensityMatrix.from_operator(0.3 * rho.matrix + 0.7 * other.matrix)
    lin = 0.3 * base.amplitude + 0.7 * ancilla_phase(d, a, other).amplitude
    assert abs(ancilla_phase(d, a, combo).amplitude - lin) <= 1e-12


def test_in_phase_examples(rng):
    d = dilate(depolarizing(0.3))
    for _ in range(5):
        assert in_phase(d, basis_state(4), random_density(rng, 2), 1e-9)

    c, s = math.cos(0.3), math.sin(0.3)
    spec = ConditionalUnitarySpec(((np.array([[c, -s], [s, c]])), SIGMA_X))
    anc = PureState.normalized([1, 1])
    assert in_phase(conditional_unitary(spec), anc, random_density(rng, 2), 1e-9)

    gate = phase_gate_dilation(math.pi / 2, anc_dim=2)
    assert not in_phase(gate, basis_state(2), PLUS.projector(), 1e-9)
    pr = ancilla_phase(gate, basis_state(2), PLUS.projector())
    assert pr.phase == pytest.approx(math.pi / 4, abs=1e-12)


def test_in_phase_rejects_negative_real():
    d = unitary_dilation(-np.eye(2))
    assert not in_phase(d, basis_state(1), PLUS.projector())


def test_fringe_examples():
    chi = fringe_grid(16)
    assert all(v == 1.0 for _, v in fringe(PhaseResult(0.0, 0.0, False), chi))
    assert fringe(PhaseResult(0.0, 1.0, True), [0.0]) == [(0.0, 2.0)]
    rows = fringe(PhaseResult(0.0, 1.0, True), fringe_grid(4))
    np.testing.assert_allclose(rows, [(0, 2), (math.pi / 2, 1), (math.pi, 0), (3 * math.pi / 2, 1)], atol=1e-15)


def test_fringe_depolarizing_contrast(rng):
    pr = cp_phase(depolarizing(0.75), random_density(rng, 2))
    vals = np.array([v for _, v in fringe(pr, fringe_grid(10_000))])
    assert vals.max() - vals.min() == pytest.approx(1.0, abs=1e-6)


@settings(max_examples=30)
@given(st.floats(-math.pi, math.pi), st.floats(0.01, 1.0))
def test_fringe_argmax_tracks_phase(phase, vis):
    pr = PhaseResult(wrap_angle(phase), vis, True)
    n = 10_000
    rows = fringe(pr, fringe_grid(n))
    chi_max = max(rows, key=lambda r: r[1])[0]
    assert circular_distance(chi_max, pr.phase) <= 2 * math.pi / n
