"""Kraus sets, unitary dilations and channel equality.

A dilation ``U`` acts on ``system ⊗ ancilla`` (system slow, ancilla fast).
Preparing the ancilla in ``|A⟩`` and tracing it out afterwards realises the
channel with Kraus operators ``F_μ = ⟨μ|U|A⟩``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CompletenessViolation, DimensionMismatch, NotUnitary, RedundantKrausWarning
from .matcore import (
    EQ_TOL,
    DensityMatrix,
    PureState,
    as_square,
    basis_state,
    dagger,
    partial_trace_ancilla,
    unitarity_defect,
)

AncillaState = PureState


def completeness_defect(operators) -> tuple[float, float]:
    """Return ``(frobenius, operator_norm)`` of ``Σ E†E - I``."""
    d = operators[0].shape[1]
    diff = sum(dagger(e) @ e for e in operators) - np.eye(d)
    return float(np.linalg.norm(diff)), float(np.linalg.norm(diff, 2))


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Ordered, complete list of Kraus operators.

    Index 0 is the element that carries the interference amplitude when no
    dilation is given, so the order is significant and always preserved.
    """

    sys_dim: int
    operators: tuple

    def __len__(self):
        return len(self.operators)

    def __getitem__(self, mu):
        return self.operators[mu]

    def __iter__(self):
        return iter(self.operators)


def make_kraus_set(ops, *, warn_redundant: bool = True) -> KrausSet:
    ops = list(ops)
    if not ops:
        raise DimensionMismatch("a Kraus set needs at least one operator")
    mats = [as_square(op, f"Kraus operator {i}") for i, op in enumerate(ops)]
    d = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (d, d):
            raise DimensionMismatch(f"Kraus operator {i} has shape {m.shape}, expected {(d, d)}")
    fro, op_norm = completeness_defect(mats)
    if fro > EQ_TOL:
        raise CompletenessViolation(
            f"completeness defect {op_norm:.6g} (operator norm; Frobenius {fro:.6g})",
            defect=fro,
        )
    if warn_redundant and len(mats) > d * d:
        warnings.warn(
            f"{len(mats)} Kraus operators for dimension {d}; at most {d * d} are ever needed",
            RedundantKrausWarning,
            stacklevel=2,
        )
    frozen = []
    for m in mats:
        m = m.copy()
        m.setflags(write=False)
        frozen.append(m)
    return KrausSet(d, tuple(frozen))


@dataclass(frozen=True, eq=False)
class Dilation:
    sys_dim: int
    anc_dim: int
    unitary: np.ndarray

    def __post_init__(self):
        u = as_square(self.unitary, "unitary")
        n = self.sys_dim * self.anc_dim
        if u.shape[0] != n:
            raise DimensionMismatch(
                f"unitary has size {u.shape[0]}, expected {self.sys_dim} x {self.anc_dim} = {n}"
            )
        defect = unitarity_defect(u)
        if defect > EQ_TOL:
            raise NotUnitary(f"dilation is not unitary (defect {defect:.6g})", defect=defect)
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "unitary", u)

    def blocks(self) -> np.ndarray:
        """The unitary as a rank-4 tensor indexed ``[s, a, s', a']``."""
        d, k = self.sys_dim, self.anc_dim
        return self.unitary.reshape(d, k, d, k)


def _check_ancilla(d: Dilation, a: PureState):
    if a.dim != d.anc_dim:
        raise DimensionMismatch(f"ancilla state has dimension {a.dim}, dilation expects {d.anc_dim}")


def _check_state(sys_dim: int, rho: DensityMatrix):
    if rho.dim != sys_dim:
        raise DimensionMismatch(f"state has dimension {rho.dim}, channel acts on dimension {sys_dim}")


def apply_kraus(k: KrausSet, rho: DensityMatrix) -> DensityMatrix:
    _check_state(k.sys_dim, rho)
    out = sum(e @ rho.matrix @ dagger(e) for e in k.operators)
    return DensityMatrix.from_operator(out)


def _complete_to_unitary(isometry: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the complement of ``isometry``'s range.

    Canonical basis vectors are visited in order and kept whenever their
    residual exceeds ``0.5/sqrt(n)``; some vector always clears that bar
    while the complement is non-trivial, so a single pass suffices.
    """
    n, m = isometry.shape
    basis = [isometry[:, j] for j in range(m)]
    extra = []
    threshold = 0.5 / np.sqrt(n)
    for j in range(n):
        if len(extra) == n - m:
            break
        v = np.zeros(n, dtype=complex)
        v[j] = 1.0
        for _ in range(2):
            for b in basis:
                v = v - b * np.vdot(b, v)
        norm = np.linalg.norm(v)
        if norm > threshold:
            v = v / norm
            basis.append(v)
            extra.append(v)
    return np.column_stack(extra) if extra else np.zeros((n, 0), dtype=complex)


def dilate(k: KrausSet) -> Dilation:
    """Unitary dilation whose ancilla-``|0⟩`` block column is the stacked Kraus set."""
    d, kk = k.sys_dim, len(k)
    # isometry V with rows (s, μ) and columns s': V[(s, μ), s'] = E_μ[s, s']
    iso = np.stack(k.operators, axis=1).reshape(d * kk, d)
    extra = _complete_to_unitary(iso)
    u = np.zeros((d * kk, d * kk), dtype=complex)
    u[:, 0::kk] = iso
    other = [c for c in range(d * kk) if c % kk != 0]
    u[:, other] = extra
    return Dilation(d, kk, u)


def extract_kraus(d: Dilation, a: PureState) -> KrausSet:
    """``F_μ = ⟨μ|U|A⟩`` for each ancilla basis state ``|μ⟩``."""
    _check_ancilla(d, a)
    ops = np.einsum("samb,b->asm", d.blocks(), a.amplitudes)
    # an ancilla larger than d² is the caller's choice, not a malformed set
    return make_kraus_set(list(ops), warn_redundant=False)


def apply_dilation(d: Dilation, a: PureState, rho: DensityMatrix) -> DensityMatrix:
    """``Tr_a[U (ρ ⊗ |A⟩⟨A|) U†]``, computed on the joint space."""
    _check_ancilla(d, a)
    _check_state(d.sys_dim, rho)
    joint = np.kron(rho.matrix, np.outer(a.amplitudes, np.conj(a.amplitudes)))
    evolved = d.unitary @ joint @ dagger(d.unitary)
    return DensityMatrix.from_operator(partial_trace_ancilla(evolved, d.sys_dim, d.anc_dim))


def identity_dilation(sys_dim: int, anc_dim: int = 1) -> Dilation:
    return Dilation(sys_dim, anc_dim, np.eye(sys_dim * anc_dim, dtype=complex))


def unitary_dilation(u) -> Dilation:
    """A unitary channel seen as a dilation with a one-dimensional ancilla."""
    u = as_square(u, "unitary")
    return Dilation(u.shape[0], 1, u)


def choi(k: KrausSet) -> np.ndarray:
    """``Σ_μ (E_μ ⊗ I)|Ω⟩⟨Ω|(E_μ ⊗ I)†`` with ``|Ω⟩ = Σ_i |i⟩|i⟩`` unnormalised."""
    # (E ⊗ I)|Ω⟩ has component E[j, i] at joint index j*d + i, i.e. E flattened row-major
    vecs = np.stack([e.reshape(-1) for e in k.operators], axis=1)
    return vecs @ dagger(vecs)


def choi_distance(a: KrausSet, b: KrausSet) -> float:
    if a.sys_dim != b.sys_dim:
        raise DimensionMismatch(f"channels act on dimensions {a.sys_dim} and {b.sys_dim}")
    return float(np.max(np.abs(choi(a) - choi(b))))


def channels_equal(a: KrausSet, b: KrausSet, tol: float = EQ_TOL) -> bool:
    """Whether two Kraus sets describe the same channel (equal Choi matrices)."""
    return choi_distance(a, b) <= tol


__all__ = [
    "AncillaState",
    "Dilation",
    "KrausSet",
    "apply_dilation",
    "apply_kraus",
    "basis_state",
    "channels_equal",
    "choi",
    "choi_distance",
    "completeness_defect",
    "dilate",
    "extract_kraus",
    "identity_dilation",
    "make_kraus_set",
    "unitary_dilation",
]
