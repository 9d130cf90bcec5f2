"""Purification route to the phases of :mod:`phasekit.phase`.

The mixed state ``ρ = Σ_k w_k |k⟩⟨k|`` is lifted to
``|Ψ⟩ = Σ_k √w_k |k⟩_s |A⟩_a |k⟩_s'`` on ``system ⊗ ancilla ⊗ auxiliary``.
The target beam applies the dilation, the reference beam turns the ancilla
preparation into ``|μ⟩``; the Pancharatnam phase between the two pure
vectors must agree with ``Arg Tr(F_μ ρ)``.  Nothing here calls into the
trace formulas, so the two routes stay independent.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import Dilation
from .errors import DimensionMismatch, IndexOutOfRange
from .matcore import DensityMatrix, PureState
from .phase import PhaseResult, pancharatnam


@dataclass(frozen=True, eq=False)
class Purification:
    sys_dim: int
    anc_dim: int
    aux_dim: int
    vector: PureState  # ordered (s, a, s')

    def tensor(self) -> np.ndarray:
        return self.vector.amplitudes.reshape(self.sys_dim, self.anc_dim, self.aux_dim)

    def reduced_system(self) -> np.ndarray:
        t = self.tensor()
        return np.einsum("iax,jax->ij", t, np.conj(t))


def sorted_eigensystem(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors (columns) with a deterministic gauge.

    Each eigenvector is rotated so that its first non-negligible entry is
    real and positive.  Equal eigenvalues are ordered by descending
    lexicographic (Re, Im) entries, so a degenerate canonical basis keeps
    its natural order.
    """
    w, v = np.linalg.eigh(rho.matrix)
    w = np.clip(w, 0.0, None)
    cols = []
    for j in range(v.shape[1]):
        col = v[:, j]
        lead = col[np.argmax(np.abs(col) > 1e-8)]
        cols.append(col * (abs(lead) / lead))

    def key(j):
        entries = tuple(x for z in cols[j] for x in (-round(z.real, 9), -round(z.imag, 9)))
        return (-round(float(w[j]), 12), entries)

    order = sorted(range(len(w)), key=key)
    return w[order], np.column_stack([cols[j] for j in order])


def purify(rho: DensityMatrix, a: PureState) -> Purification:
    w, v = sorted_eigensystem(rho)
    d, k = rho.dim, a.dim
    # Ψ[s, a, s'] = Σ_k √w_k v_k[s] A[a] δ(k, s')
    t = np.einsum("sk,a->sak", v * np.sqrt(w), a.amplitudes)
    return Purification(d, k, d, PureState.normalized(t.reshape(-1)))


def reference_flip(anc_dim: int, mu: int) -> np.ndarray:
    """Permutation exchanging ancilla basis states ``|0⟩`` and ``|μ⟩``; involutive."""
    if not 0 <= mu < anc_dim:
        raise IndexOutOfRange(f"ancilla index {mu} out of range for dimension {anc_dim}")
    f = np.eye(anc_dim, dtype=complex)
    f[[0, mu]] = f[[mu, 0]]
    return f


def _rotation_to_zero(a: PureState) -> np.ndarray:
    """Unitary ``R`` with ``R|A⟩ = |0⟩``; exactly the identity when ``|A⟩ = |0⟩``."""
    x = a.amplitudes
    n = x.size
    lead = x[0]
    phase = lead / abs(lead) if abs(lead) > 0 else 1.0
    w = x.copy()
    w[0] -= phase
    norm_sq = float(np.vdot(w, w).real)
    h = np.eye(n, dtype=complex)
    if norm_sq > 1e-30:
        h = h - 2.0 * np.outer(w, np.conj(w)) / norm_sq
    return np.conj(phase) * h


def reference_operator(a: PureState, mu: int) -> np.ndarray:
    """Ancilla unitary of the reference beam, taking ``|A⟩`` to ``|μ⟩``.

    For ``|A⟩ = |0⟩`` this is the plain ``0 ↔ μ`` transposition.
    """
    return reference_flip(a.dim, mu) @ _rotation_to_zero(a)


def _apply_on_sa(op_sa: np.ndarray, p: Purification) -> np.ndarray:
    t = p.vector.amplitudes.reshape(p.sys_dim * p.anc_dim, p.aux_dim)
    return (op_sa @ t).reshape(-1)


def purified_vectors(d: Dilation, rho: DensityMatrix, a: PureState, mu: int = 0):
    """Reference and target vectors of the two interferometer arms."""
    if rho.dim != d.sys_dim or a.dim != d.anc_dim:
        raise DimensionMismatch(
            f"state/ancilla dimensions ({rho.dim}, {a.dim}) do not fit dilation ({d.sys_dim}, {d.anc_dim})"
        )
    p = purify(rho, a)
    target = _apply_on_sa(d.unitary, p)
    ref_op = np.kron(np.eye(d.sys_dim), reference_operator(a, mu))
    reference = _apply_on_sa(ref_op, p)
    return PureState.normalized(reference), PureState.normalized(target)


def purified_phase(d: Dilation, rho: DensityMatrix, a: PureState, mu: int = 0) -> PhaseResult:
    """Pancharatnam phase between the reference and target purified vectors."""
    reference, target = purified_vectors(d, rho, a, mu)
    return pancharatnam(reference, target)


def check_purification(p: Purification, rho: DensityMatrix) -> float:
    """Largest entry of ``|Tr_{a,s'}|Ψ⟩⟨Ψ| - ρ|``."""
    return float(np.max(np.abs(p.reduced_system() - rho.matrix)))


__all__ = [
    "Purification",
    "check_purification",
    "purified_phase",
    "purified_vectors",
    "purify",
    "reference_flip",
    "reference_operator",
    "sorted_eigensystem",
]
