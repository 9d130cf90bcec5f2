"""Sequences of two operations and the non-additivity of relative phase.

For ``ρ → ρ' = E(ρ) → ρ'' = F(ρ')`` the three relative phases ``Φ12``,
``Φ23`` and ``Φ13`` are overlaps of purified vectors ``Ψ``, ``Ψ'`` and
``Ψ''``, so ``Φ12 + Φ23 - Φ13 = Arg Δ`` with ``Δ`` the three-point
Bargmann invariant of those vectors.

By default each operation gets its own ancilla register (``a1`` for the
first dilation, ``a2`` for the second).  Then ``Φ23`` depends only on
``ρ'`` and the second dilation, and the direct map is the product unitary
on ``system ⊗ a1 ⊗ a2`` with ancilla ``|A1⟩|A2⟩``.  With
``shared_ancilla=True`` both unitaries act on one register prepared in
``|A1⟩``, as when one apparatus is reused; ``Φ23`` is then a property of
the joint state, not of ``ρ'`` alone.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import Dilation, KrausSet, apply_dilation, extract_kraus, make_kraus_set
from .errors import DimensionMismatch
from .matcore import DensityMatrix, PureState
from .phase import PhaseResult, ancilla_phase, effective_operator, wrap_angle
from .purify import purify


def compose_kraus(first: KrausSet, second: KrausSet) -> KrausSet:
    """Kraus set of ``second ∘ first``: ``G[ν*K1 + μ] = F_ν E_μ``."""
    if first.sys_dim != second.sys_dim:
        raise DimensionMismatch(f"channels act on dimensions {first.sys_dim} and {second.sys_dim}")
    return make_kraus_set([f @ e for f in second for e in first], warn_redundant=False)


def bargmann3(v1: PureState, v2: PureState, v3: PureState) -> complex:
    """``⟨v1|v2⟩⟨v2|v3⟩⟨v3|v1⟩``; unchanged by re-phasing any of the vectors."""
    if not v1.dim == v2.dim == v3.dim:
        raise DimensionMismatch("Bargmann invariant needs three vectors of equal dimension")
    a, b, c = v1.amplitudes, v2.amplitudes, v3.amplitudes
    return complex(np.vdot(a, b) * np.vdot(b, c) * np.vdot(c, a))


def _embed_second(d2: Dilation, k1: int) -> np.ndarray:
    """``V`` acting on ``(s, a2)`` lifted to ``(s, a1, a2)``."""
    d, k2 = d2.sys_dim, d2.anc_dim
    v = d2.blocks()
    w = np.einsum("sbtc,ae->sabtec", v, np.eye(k1))
    n = d * k1 * k2
    return w.reshape(n, n)


def compose_dilations(d1: Dilation, d2: Dilation) -> Dilation:
    """Dilation of ``d2 ∘ d1`` on the ancilla ``a1 ⊗ a2`` (a1 slow)."""
    if d1.sys_dim != d2.sys_dim:
        raise DimensionMismatch(f"dilations act on dimensions {d1.sys_dim} and {d2.sys_dim}")
    first = np.kron(d1.unitary, np.eye(d2.anc_dim))
    second = _embed_second(d2, d1.anc_dim)
    return Dilation(d1.sys_dim, d1.anc_dim * d2.anc_dim, second @ first)


def product_ancilla(a1: PureState, a2: PureState) -> PureState:
    return PureState.normalized(np.kron(a1.amplitudes, a2.amplitudes))


@dataclass(frozen=True, eq=False)
class SequenceReport:
    phi_12: PhaseResult
    phi_23: PhaseResult
    phi_13: PhaseResult
    mismatch: float
    bargmann: complex
    # Tr(ρN1) Tr(ρ'N2) conj(Tr(ρN13)) from effective operators; equals bargmann
    trace_product: complex
    # Tr(ρE0) Tr(ρ'F0) Tr(ρ''G0) with G0 = F0 E0, index-0 Kraus elements only
    naive_kraus_product: complex
    rho_1: DensityMatrix
    rho_2: DensityMatrix
    shared_ancilla: bool = False

    @property
    def defined(self) -> bool:
        return self.phi_12.defined and self.phi_23.defined and self.phi_13.defined

    @property
    def bargmann_phase(self) -> PhaseResult:
        return PhaseResult.from_amplitude(self.bargmann)

    @property
    def naive_kraus_phase(self) -> PhaseResult:
        return PhaseResult.from_amplitude(self.naive_kraus_product)


def _overlap_phase(x: np.ndarray, y: np.ndarray) -> PhaseResult:
    return PhaseResult.from_amplitude(np.vdot(x, y))


def sequence_report(
    rho: DensityMatrix,
    d1: Dilation,
    a1: PureState,
    d2: Dilation,
    a2: PureState,
    *,
    shared_ancilla: bool = False,
) -> SequenceReport:
    """Phases along ``ρ → ρ' → ρ''`` and directly ``ρ → ρ''``.

    In shared mode ``a2`` is ignored and the two dilations must have the
    same ancilla dimension.
    """
    if d1.sys_dim != d2.sys_dim or rho.dim != d1.sys_dim:
        raise DimensionMismatch("state and both dilations must share the system dimension")
    if shared_ancilla:
        if d1.anc_dim != d2.anc_dim:
            raise DimensionMismatch(
                f"shared ancilla needs equal ancilla dimensions, got {d1.anc_dim} and {d2.anc_dim}"
            )
        joint_anc = a1
        u_first = d1.unitary
        u_second = d2.unitary
        direct = Dilation(d1.sys_dim, d1.anc_dim, d2.unitary @ d1.unitary)
    else:
        joint_anc = product_ancilla(a1, a2)
        u_first = np.kron(d1.unitary, np.eye(d2.anc_dim))
        u_second = _embed_second(d2, d1.anc_dim)
        direct = Dilation(d1.sys_dim, d1.anc_dim * d2.anc_dim, u_second @ u_first)

    p = purify(rho, joint_anc)
    t = p.vector.amplitudes.reshape(p.sys_dim * p.anc_dim, p.aux_dim)
    psi = t.reshape(-1)
    psi1 = (u_first @ t).reshape(-1)
    psi2 = (u_second @ u_first @ t).reshape(-1)

    phi_12 = _overlap_phase(psi, psi1)
    phi_23 = _overlap_phase(psi1, psi2)
    phi_13 = _overlap_phase(psi, psi2)
    bargmann = complex(np.vdot(psi, psi1) * np.vdot(psi1, psi2) * np.vdot(psi2, psi))

    rho_1 = apply_dilation(d1, a1, rho)
    rho_2 = apply_dilation(direct, joint_anc, rho)

    z1 = np.trace(rho.matrix @ effective_operator(d1, a1))
    z13 = np.trace(rho.matrix @ effective_operator(direct, joint_anc))
    if shared_ancilla:
        z2 = np.vdot(psi1, psi2)
    else:
        z2 = np.trace(rho_1.matrix @ effective_operator(d2, a2))
    trace_product = complex(z1 * z2 * np.conj(z13))

    e0 = extract_kraus(d1, a1)[0]
    f0 = extract_kraus(d2, a1 if shared_ancilla else a2)[0]
    naive = complex(
        np.trace(rho.matrix @ e0) * np.trace(rho_1.matrix @ f0) * np.trace(rho_2.matrix @ (f0 @ e0))
    )

    if phi_12.defined and phi_23.defined and phi_13.defined:
        mismatch = wrap_angle(phi_12.phase + phi_23.phase - phi_13.phase)
    else:
        mismatch = 0.0
    return SequenceReport(
        phi_12, phi_23, phi_13, mismatch, bargmann, trace_product, naive, rho_1, rho_2, shared_ancilla
    )


def sequence_phases_from_traces(rho: DensityMatrix, d1, a1, d2, a2) -> tuple[PhaseResult, PhaseResult, PhaseResult]:
    """``Φ12, Φ23, Φ13`` from effective-operator traces alone (separate registers)."""
    rho_1 = apply_dilation(d1, a1, rho)
    direct = compose_dilations(d1, d2)
    return (
        ancilla_phase(d1, a1, rho),
        ancilla_phase(d2, a2, rho_1),
        ancilla_phase(direct, product_ancilla(a1, a2), rho),
    )

