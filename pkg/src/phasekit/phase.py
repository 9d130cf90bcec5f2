"""Relative phases, visibilities and interference fringes.

Every phase here is the argument of a complex interference amplitude:
an overlap ``⟨ψ1|ψ2⟩``, a trace ``Tr(ρU)`` or ``Tr(ρ N_s)``.  The modulus of
that amplitude is the fringe visibility.  When it vanishes the phase is
not defined; this is reported through ``PhaseResult.defined`` rather than
raised, so batch runs and fringe sweeps keep going.

When a bare :class:`~phasekit.channel.KrausSet` is given, the operator at
index 0 carries the interference amplitude.  Different Kraus
representations of the same channel (or different ancilla preparations of
the same dilation) generally give different phases; that dependence is
physical, not an artefact of this code.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import Dilation, KrausSet, extract_kraus
from .errors import DimensionMismatch, IndexOutOfRange, NotUnitary
from .matcore import EQ_TOL, DensityMatrix, PureState, as_square, unitarity_defect

VISIBILITY_FLOOR = 1e-12


def wrap_angle(x: float) -> float:
    """Map an angle to the half-open interval (-π, π]."""
    r = math.remainder(float(x), 2 * math.pi)
    if r <= -math.pi:
        r += 2 * math.pi
    return r


def circular_distance(a: float, b: float) -> float:
    return abs(wrap_angle(a - b))


@dataclass(frozen=True)
class PhaseResult:
    phase: float
    visibility: float
    defined: bool
    amplitude: complex = 0j

    @classmethod
    def from_amplitude(cls, z: complex) -> PhaseResult:
        z = complex(z)
        vis = abs(z)
        if vis > VISIBILITY_FLOOR:
            return cls(wrap_angle(math.atan2(z.imag, z.real)), vis, True, z)
        return cls(0.0, vis, False, z)


def pancharatnam(psi1: PureState, psi2: PureState) -> PhaseResult:
    """Phase of ``ψ2`` relative to ``ψ1``: ``Arg⟨ψ1|ψ2⟩``."""
    if psi1.dim != psi2.dim:
        raise DimensionMismatch(f"states have dimensions {psi1.dim} and {psi2.dim}")
    return PhaseResult.from_amplitude(np.vdot(psi1.amplitudes, psi2.amplitudes))


def mixed_unitary_phase(rho: DensityMatrix, u) -> PhaseResult:
    u = as_square(u, "unitary")
    if u.shape[0] != rho.dim:
        raise DimensionMismatch(f"unitary has size {u.shape[0]}, state has dimension {rho.dim}")
    defect = unitarity_defect(u)
    if defect > EQ_TOL:
        raise NotUnitary(f"operator is not unitary (defect {defect:.6g})", defect=defect)
    return PhaseResult.from_amplitude(np.trace(rho.matrix @ u))


def _kraus_trace(k: KrausSet, rho: DensityMatrix, mu: int) -> complex:
    if rho.dim != k.sys_dim:
        raise DimensionMismatch(f"state has dimension {rho.dim}, channel acts on dimension {k.sys_dim}")
    if not 0 <= mu < len(k):
        raise IndexOutOfRange(f"Kraus index {mu} out of range for {len(k)} operators")
    return complex(np.trace(k[mu] @ rho.matrix))


def cp_phase(k: KrausSet, rho: DensityMatrix) -> PhaseResult:
    """``Arg Tr(E_0 ρ)``: phase shift with the ancilla prepared in ``|0⟩``."""
    return PhaseResult.from_amplitude(_kraus_trace(k, rho, 0))


def cp_phase_mu(k: KrausSet, rho: DensityMatrix, mu: int) -> PhaseResult:
    """``Arg Tr(E_μ ρ)``: the amplitude revealed when the reference ancilla is flipped to ``|μ⟩``."""
    return PhaseResult.from_amplitude(_kraus_trace(k, rho, mu))


def effective_operator(d: Dilation, a: PureState) -> np.ndarray:
    """``N_s = ⟨A|U|A⟩``, the (generally non-unitary) system operator of a dilation."""
    if a.dim != d.anc_dim:
        raise DimensionMismatch(f"ancilla state has dimension {a.dim}, dilation expects {d.anc_dim}")
    amps = a.amplitudes
    return np.einsum("a,samb,b->sm", np.conj(amps), d.blocks(), amps)


def effective_operator_from_kraus(d: Dilation, a: PureState) -> np.ndarray:
    """``Σ_μ a_μ* F_μ`` with ``F_μ = ⟨μ|U|A⟩``; agrees with :func:`effective_operator`."""
    ops = extract_kraus(d, a)
    return sum(np.conj(c) * f for c, f in zip(a.amplitudes, ops))


def _state_dim_check(d: Dilation, rho: DensityMatrix):
    if rho.dim != d.sys_dim:
        raise DimensionMismatch(f"state has dimension {rho.dim}, dilation acts on dimension {d.sys_dim}")


def ancilla_phase(d: Dilation, a: PureState, rho: DensityMatrix) -> PhaseResult:
    """``Arg Tr(ρ ⟨A|U|A⟩)`` for an arbitrary ancilla preparation ``|A⟩``."""
    _state_dim_check(d, rho)
    return PhaseResult.from_amplitude(np.trace(rho.matrix @ effective_operator(d, a)))


def in_phase(d: Dilation, a: PureState, rho: DensityMatrix, tol: float = EQ_TOL) -> bool:
    """Whether ``Tr(ρ⟨A|U|A⟩)`` is real and positive for this particular ``|A⟩``."""
    _state_dim_check(d, rho)
    z = complex(np.trace(rho.matrix @ effective_operator(d, a)))
    return abs(z.imag) <= tol * max(1.0, abs(z)) and z.real > tol


def fringe_intensity(pr: PhaseResult, chi) -> np.ndarray:
    chi = np.asarray(chi, dtype=float)
    return 1.0 + pr.visibility * np.cos(chi - pr.phase)


def fringe(pr: PhaseResult, chi_samples) -> list[tuple[float, float]]:
    """Output intensity ``1 + ν cos(χ - Φ)`` of an interferometer with reference phase ``χ``."""
    if not (math.isfinite(pr.phase) and math.isfinite(pr.visibility)):
        raise ValueError("phase result must be finite")
    chi = np.asarray(list(chi_samples), dtype=float)
    return list(zip(chi.tolist(), fringe_intensity(pr, chi).tolist()))


def fringe_grid(samples: int) -> np.ndarray:
    """``samples`` reference phases spread uniformly over [0, 2π)."""
    if samples < 2:
        raise ValueError("need at least two fringe samples")
    return 2 * np.pi * np.arange(samples) / samples
