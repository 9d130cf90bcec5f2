import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekit.builtin import bloch_shrink_factor, depolarizing, pauli_rotation, phase_gate_dilation
from phasekit.channel import apply_kraus, choi, dilate, extract_kraus, unitary_dilation
from phasekit.compose import (
    bargmann3,
    compose_dilations,
    compose_kraus,
    product_ancilla,
    sequence_phases_from_traces,
    sequence_report,
)
from phasekit.errors import DimensionMismatch
from phasekit.matcore import BlochVector, DensityMatrix, PureState, basis_state, bloch_to_density, density_to_bloch
from phasekit.phase import circular_distance
from phasekit.sampling import random_density, random_dilation, random_kraus, random_pure_state

seeds = st.integers(0, 2**32 - 1)
PLUS = PureState.normalized([1, 1])
PLUS_I = PureState.normalized([1, 1j])


def _apply_twice(first, second, rho):
    return apply_kraus(second, apply_kraus(first, rho))


def test_compose_kraus_count_and_order(rng):
    e, f = random_kraus(rng, 2, 2), random_kraus(rng, 2, 3)
    g = compose_kraus(e, f)
    assert len(g) == 6
    np.testing.assert_allclose(g[1 * 2 + 1], f[1] @ e[1], atol=1e-15)


@pytest.mark.parametrize("p1, p2", [(0.1, 0.2), (0.5, 0.3), (0.75, 0.9)])
def test_compose_depolarizing_shrink(p1, p2):
    g = compose_kraus(depolarizing(p1), depolarizing(p2))
    r = BlochVector(0.3, -0.2, 0.6)
    out = density_to_bloch(apply_kraus(g, bloch_to_density(r))).as_array()
    np.testing.assert_allclose(out, bloch_shrink_factor(p1) * bloch_shrink_factor(p2) * r.as_array(), atol=1e-14)


@settings(max_examples=40)
@given(seeds, st.integers(2, 3))
def test_compose_kraus_matches_sequential(seed, dim):
    rng = np.random.default_rng(seed)
    e, f = random_kraus(rng, dim, 2), random_kraus(rng, dim, 2)
    g = compose_kraus(e, f)
    rho = random_density(rng, dim)
    assert np.max(np.abs(apply_kraus(g, rho).matrix - _apply_twice(e, f, rho).matrix)) <= 1e-12
    # the Choi matrix of the composite, built column by column through the sequence
    basis = np.eye(dim)
    cols = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            eij = np.outer(basis[i], basis[j])
            out = sum(fv @ (sum(em @ eij @ em.conj().T for em in e)) @ fv.conj().T for fv in f)
            cols += np.kron(out, eij)
    assert np.max(np.abs(choi(g) - cols)) <= 1e-12


def test_compose_kraus_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        compose_kraus(random_kraus(rng, 2, 1), random_kraus(rng, 3, 1))


@settings(max_examples=30)
@given(seeds)
def test_compose_dilations_matches_compose_kraus(seed):
    rng = np.random.default_rng(seed)
    d1, d2 = random_dilation(rng, 2, 2), random_dilation(rng, 2, 3)
    a1, a2 = random_pure_state(rng, 2), random_pure_state(rng, 3)
    direct = extract_kraus(compose_dilations(d1, d2), product_ancilla(a1, a2))
    composed = compose_kraus(extract_kraus(d1, a1), extract_kraus(d2, a2))
    # dilation outcomes run (μ1 slow, μ2 fast); composed Kraus runs (μ2 slow, μ1 fast)
    for m1 in range(2):
        for m2 in range(3):
            assert np.max(np.abs(direct[m1 * 3 + m2] - composed[m2 * 2 + m1])) <= 1e-12


def test_bargmann3_examples(rng):
    delta = bargmann3(basis_state(2, 0), PLUS, PLUS_I)
    assert np.angle(delta) == pytest.approx(math.pi / 4, abs=1e-14)
    assert abs(delta) == pytest.approx(0.5 * math.sqrt(0.5), abs=1e-14)
    assert bargmann3(basis_state(2, 0), basis_state(2, 1), PLUS) == 0


@settings(max_examples=30)
@given(seeds, st.floats(-4, 4), st.floats(-4, 4), st.floats(-4, 4))
def test_bargmann3_gauge_invariant(seed, x, y, z):
    rng = np.random.default_rng(seed)
    v = [random_pure_state(rng, 3) for _ in range(3)]
    w = [PureState(np.exp(1j * t) * s.amplitudes) for t, s in zip((x, y, z), v)]
    assert abs(bargmann3(*v) - bargmann3(*w)) <= 1e-12


def test_sequence_depolarizing_is_additive(rng):
    d = dilate(depolarizing(0.3))
    rep = sequence_report(random_density(rng, 2), d, basis_state(4), d, basis_state(4))
    for pr in (rep.phi_12, rep.phi_23, rep.phi_13):
        assert abs(pr.phase) <= 1e-12
    assert abs(rep.mismatch) <= 1e-12


def test_sequence_commuting_phase_gates():
    rho = DensityMatrix.maximally_mixed(2)
    rep = sequence_report(rho, phase_gate_dilation(0.7), basis_state(1), phase_gate_dilation(1.1), basis_state(1))
    assert rep.phi_12.phase == pytest.approx(0.35, abs=1e-12)
    assert rep.phi_23.phase == pytest.approx(0.55, abs=1e-12)
    assert rep.phi_13.phase == pytest.approx(0.9, abs=1e-12)
    assert abs(rep.mismatch) <= 1e-12


def test_sequence_rotations_mismatch_is_bargmann():
    rho = basis_state(2, 0).projector()
    rep = sequence_report(
        rho,
        unitary_dilation(pauli_rotation("x", math.pi / 8)),
        basis_state(1),
        unitary_dilation(pauli_rotation("z", math.pi / 4)),
        basis_state(1),
    )
    assert rep.defined
    assert abs(rep.mismatch) > 0.1
    assert circular_distance(rep.mismatch, rep.bargmann_phase.phase) <= 1e-10


@settings(max_examples=60)
@given(seeds, st.integers(2, 3), st.integers(1, 3), st.integers(1, 3))
def test_mismatch_equals_bargmann_phase(seed, dim, k1, k2):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, dim)
    d1, d2 = random_dilation(rng, dim, k1), random_dilation(rng, dim, k2)
    a1, a2 = random_pure_state(rng, k1), random_pure_state(rng, k2)
    rep = sequence_report(rho, d1, a1, d2, a2)
    if rep.defined and abs(rep.bargmann) > 1e-6:
        assert circular_distance(rep.mismatch, rep.bargmann_phase.phase) <= 1e-10
    assert abs(rep.trace_product - rep.bargmann) <= 1e-12
    traced = sequence_phases_from_traces(rho, d1, a1, d2, a2)
    for a, b in zip((rep.phi_12, rep.phi_23, rep.phi_13), traced):
        assert abs(a.amplitude - b.amplitude) <= 1e-12


@settings(max_examples=40)
@given(seeds, st.integers(1, 3))
def test_shared_ancilla_mismatch_equals_bargmann(seed, k):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 2)
    d1, d2 = random_dilation(rng, 2, k), random_dilation(rng, 2, k)
    rep = sequence_report(rho, d1, random_pure_state(rng, k), d2, basis_state(k), shared_ancilla=True)
    if rep.defined and abs(rep.bargmann) > 1e-6:
        assert circular_distance(rep.mismatch, rep.bargmann_phase.phase) <= 1e-10
    assert abs(rep.trace_product - rep.bargmann) <= 1e-12


def test_shared_ancilla_dimension_check(rng):
    with pytest.raises(DimensionMismatch):
        sequence_report(
            random_density(rng, 2),
            random_dilation(rng, 2, 2),
            basis_state(2),
            random_dilation(rng, 2, 3),
            basis_state(3),
            shared_ancilla=True,
        )


def test_sequence_output_states(rng):
    rho = random_density(rng, 2)
    k1, k2 = depolarizing(0.2), depolarizing(0.5)
    rep = sequence_report(rho, dilate(k1), basis_state(4), dilate(k2), basis_state(4))
    np.testing.assert_allclose(rep.rho_1.matrix, apply_kraus(k1, rho).matrix, atol=1e-12)
    np.testing.assert_allclose(rep.rho_2.matrix, _apply_twice(k1, k2, rho).matrix, atol=1e-12)
