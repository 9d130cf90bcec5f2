"""Named channels with closed-form phases.

Includes the qubit depolarizing channel, complete randomization of a qubit
and conditional-unitary dilations ``U = Σ_i |i⟩⟨i| ⊗ u_i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import Dilation, KrausSet, make_kraus_set, unitary_dilation
from .errors import DimensionMismatch, NormInvalid, NotUnitary, ParamOutOfRange, WeightSumInvalid
from .matcore import EQ_TOL, PAULIS, SIGMA_X, SIGMA_Y, SIGMA_Z, DensityMatrix, PureState, as_square, unitarity_defect
from .phase import PhaseResult

I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class DepolarizingParams:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParamOutOfRange(f"depolarizing probability must lie in [0, 1], got {self.p}")


def depolarizing(p: float) -> KrausSet:
    """``{√(1-p) I, √(p/3) σx, √(p/3) σy, √(p/3) σz}``.

    All four operators are kept even at ``p = 0`` so that Kraus indices are
    stable across a parameter sweep.
    """
    p = DepolarizingParams(float(p)).p
    s = math.sqrt(p / 3)
    return make_kraus_set([math.sqrt(1 - p) * I2, s * SIGMA_X, s * SIGMA_Y, s * SIGMA_Z])


def bloch_shrink_factor(p: float) -> float:
    """Signed factor by which depolarizing scales the Bloch vector."""
    return 1 - 4 * p / 3


def dephasing_mixture(q: float = 0.5) -> KrausSet:
    """Phase damping as a Pauli mixture ``{√(1-q) I, √q σz}``."""
    return make_kraus_set([math.sqrt(1 - q) * I2, math.sqrt(q) * SIGMA_Z])


def dephasing_projective() -> KrausSet:
    """Total dephasing as measurement in the computational basis."""
    return make_kraus_set([np.diag([1, 0]).astype(complex), np.diag([0, 1]).astype(complex)])


def randomizing_ancilla() -> PureState:
    return PureState(np.full(4, 0.5, dtype=complex))


def randomizing_unitary() -> np.ndarray:
    """``I⊗P0 + σx⊗P1 + iσy⊗P2 + σz⊗P3`` on qubit ⊗ 4-level ancilla."""
    blocks = (I2, SIGMA_X, 1j * SIGMA_Y, SIGMA_Z)
    u = np.zeros((8, 8), dtype=complex)
    for mu, b in enumerate(blocks):
        proj = np.zeros((4, 4), dtype=complex)
        proj[mu, mu] = 1
        u += np.kron(b, proj)
    return u


def randomizing() -> tuple[KrausSet, Dilation, PureState]:
    """Complete randomization of a qubit: every input is sent to ``I/2``.

    Returns the Kraus set ``{I/2, σx/2, iσy/2, σz/2}``, its conditional
    dilation and the uniform ancilla preparation that induces that set.
    """
    kraus = make_kraus_set([I2 / 2, SIGMA_X / 2, 1j * SIGMA_Y / 2, SIGMA_Z / 2])
    return kraus, Dilation(2, 4, randomizing_unitary()), randomizing_ancilla()


def randomization_amplitude(alpha: complex, beta: complex) -> complex:
    """``Tr(ρ⟨A|U|A⟩)`` for ``|ψ⟩ = α|0⟩ + β|1⟩`` under randomization.

    Closed form ``¼[1 + 2Re(α*β) + |α|² - |β|²] + (i/4)·2Im(α*β)``, which
    equals ``½(|α|² + α*β)`` since ``⟨A|U|A⟩ = ½[[1, 1], [0, 0]]``.
    """
    alpha, beta = complex(alpha), complex(beta)
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1) > EQ_TOL:
        raise NormInvalid(f"|alpha|^2 + |beta|^2 = {norm:.12g}, expected 1")
    c = np.conj(alpha) * beta
    real = 0.25 * (1 + 2 * c.real + abs(alpha) ** 2 - abs(beta) ** 2)
    imag = 0.25 * 2 * c.imag
    return complex(real, imag)


def randomization_phase(alpha: complex, beta: complex) -> PhaseResult:
    return PhaseResult.from_amplitude(randomization_amplitude(alpha, beta))


def randomization_phase_tan_form(alpha: complex, beta: complex) -> float:
    """Arctangent formula ``atan[(1 + 2Im(αβ*)) / (1 + 2Re(αβ*) + |α|² - |β|²)]``.

    Kept as a regression reference only: it does not agree with the direct
    evaluation in :func:`randomization_phase` (for ``α = 1, β = 0`` it gives
    ``atan(1/2)`` while the direct trace is ``1/2``, phase 0).
    """
    c = complex(alpha) * np.conj(complex(beta))
    num = 1 + 2 * c.imag
    den = 1 + 2 * c.real + abs(alpha) ** 2 - abs(beta) ** 2
    return math.atan(num / den)


@dataclass(frozen=True, eq=False)
class ConditionalUnitarySpec:
    """Ancilla unitaries ``u_i``, one per system basis state ``|i⟩``."""

    unitaries: tuple

    def __post_init__(self):
        mats = []
        for i, u in enumerate(self.unitaries):
            u = as_square(u, f"u_{i}")
            defect = unitarity_defect(u)
            if defect > EQ_TOL:
                raise NotUnitary(f"u_{i} is not unitary (defect {defect:.6g})", defect=defect)
            mats.append(u)
        if not mats:
            raise DimensionMismatch("need at least one conditional unitary")
        if len({m.shape for m in mats}) != 1:
            raise DimensionMismatch("conditional unitaries must share one ancilla dimension")
        object.__setattr__(self, "unitaries", tuple(mats))

    @property
    def sys_dim(self) -> int:
        return len(self.unitaries)

    @property
    def anc_dim(self) -> int:
        return self.unitaries[0].shape[0]


def conditional_unitary(spec: ConditionalUnitarySpec) -> Dilation:
    """Block-diagonal dilation ``Σ_i P_i ⊗ u_i``."""
    d, k = spec.sys_dim, spec.anc_dim
    u = np.zeros((d * k, d * k), dtype=complex)
    for i, ui in enumerate(spec.unitaries):
        u[i * k:(i + 1) * k, i * k:(i + 1) * k] = ui
    return Dilation(d, k, u)


def conditional_kraus(spec: ConditionalUnitarySpec, a: PureState) -> KrausSet:
    """``F_μ = Σ_i P_i ⟨μ|u_i|A⟩`` in closed form."""
    if a.dim != spec.anc_dim:
        raise DimensionMismatch(f"ancilla state has dimension {a.dim}, expected {spec.anc_dim}")
    columns = np.stack([u @ a.amplitudes for u in spec.unitaries])  # [i, μ]
    return make_kraus_set([np.diag(columns[:, mu]) for mu in range(spec.anc_dim)])


def conditional_phase(weights, spec: ConditionalUnitarySpec, a: PureState) -> PhaseResult:
    """Phase for the ensemble ``{p_k, |ψ_k⟩}`` under a conditional unitary.

    ``weights`` is a sequence of ``(p_k, ψ_k)`` pairs.  The amplitude is
    ``Σ_k p_k Σ_i |c_i^(k)|² ⟨A|u_i|A⟩`` and its quadrant is kept, unlike a
    plain ratio of imaginary to real part.
    """
    weights = list(weights)
    total = sum(p for p, _ in weights)
    if abs(total - 1) > EQ_TOL or any(p < 0 for p, _ in weights):
        raise WeightSumInvalid(f"ensemble weights must be non-negative and sum to 1, got {total:.12g}")
    if a.dim != spec.anc_dim:
        raise DimensionMismatch(f"ancilla state has dimension {a.dim}, expected {spec.anc_dim}")
    diag = np.array([np.vdot(a.amplitudes, u @ a.amplitudes) for u in spec.unitaries])
    re = im = 0.0
    for p, psi in weights:
        if psi.dim != spec.sys_dim:
            raise DimensionMismatch(f"ensemble state has dimension {psi.dim}, expected {spec.sys_dim}")
        pops = np.abs(psi.amplitudes) ** 2
        re += p * float(np.sum(pops * diag.real))
        im += p * float(np.sum(pops * diag.imag))
    return PhaseResult.from_amplitude(complex(re, im))


def ensemble_density(weights) -> DensityMatrix:
    ps, states = zip(*weights)
    return DensityMatrix.mixture(ps, list(states))


def phase_gate(theta: float, dim: int = 2) -> np.ndarray:
    """``diag(1, ..., 1, e^{iθ})``."""
    diag = np.ones(dim, dtype=complex)
    diag[-1] = np.exp(1j * theta)
    return np.diag(diag)


def pauli_rotation(axis: str, theta: float) -> np.ndarray:
    """``exp(-iθσ) = cos θ I - i sin θ σ`` for ``σ`` in {x, y, z}."""
    sigma = dict(zip("xyz", PAULIS))[axis]
    return math.cos(theta) * I2 - 1j * math.sin(theta) * sigma


def phase_gate_dilation(theta: float, anc_dim: int = 1) -> Dilation:
    """Phase gate on the system with the ancilla left untouched."""
    if anc_dim == 1:
        return unitary_dilation(phase_gate(theta))
    return Dilation(2, anc_dim, np.kron(phase_gate(theta), np.eye(anc_dim)))
