"""Dense complex-matrix primitives and validated state types.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The state
types below copy their input and freeze it, so every value handed around
the library is immutable.

Tensor-product ordering: in ``system ⊗ ancilla`` the system index is the
slow (left) factor and the ancilla index the fast (right) factor, so the
joint index of ``|s⟩|a⟩`` is ``s * anc_dim + a``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BlochOutOfBall, DimensionMismatch, InvalidState

EQ_TOL = 1e-9
ORACLE_TOL = 1e-9
EXACT_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.setflags(write=False)
    return array


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-d complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or 0 in arr.shape:
        raise DimensionMismatch(f"{name} must be a non-empty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidState(f"{name} has non-finite entries")
    return arr


def as_square(m, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(m, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def unitarity_defect(u: np.ndarray) -> float:
    """Frobenius norm of ``U†U - I``."""
    return float(np.linalg.norm(dagger(u) @ u - np.eye(u.shape[1])))


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entry of ``|M - M†|``."""
    return float(np.max(np.abs(m - dagger(m))))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise DimensionMismatch(f"amplitudes must be a non-empty vector, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise InvalidState("amplitudes have non-finite entries")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > EQ_TOL:
            raise InvalidState(f"state is not normalised: squared norm {norm!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def normalized(cls, amplitudes) -> PureState:
        """Build a state from an arbitrary non-zero vector by rescaling it."""
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise InvalidState("cannot normalise the zero vector")
        return cls(amps / norm)

    def projector(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, np.conj(self.amplitudes)))


# The ancilla preparation |A⟩ is an ordinary pure state of the ancilla space.
AncillaState = PureState


def basis_state(dim: int, index: int = 0) -> PureState:
    if not 0 <= index < dim:
        raise DimensionMismatch(f"basis index {index} out of range for dimension {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return PureState(amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_square(self.matrix, "density matrix")
        herm = hermiticity_defect(m)
        if herm > EQ_TOL:
            raise InvalidState(f"density matrix is not Hermitian (defect {herm:.3g})")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > EQ_TOL:
            raise InvalidState(f"density matrix trace is {trace.real:.12g}, expected 1")
        min_eig = float(np.linalg.eigvalsh((m + dagger(m)) / 2)[0])
        if min_eig < -EQ_TOL:
            raise InvalidState(f"density matrix is not positive semidefinite (min eigenvalue {min_eig:.3g})")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_operator(cls, m) -> DensityMatrix:
        """Validate after symmetrising away round-off in the anti-Hermitian part."""
        m = np.asarray(m, dtype=complex)
        return cls((m + dagger(m)) / 2)

    @classmethod
    def mixture(cls, weights, states) -> DensityMatrix:
        """``Σ_k p_k |ψ_k⟩⟨ψ_k|`` for pure states ``ψ_k``."""
        weights = np.asarray(weights, dtype=float)
        if len(weights) != len(states) or len(states) == 0:
            raise DimensionMismatch("weights and states must be non-empty and of equal length")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatch(f"ensemble states have differing dimensions {sorted(dims)}")
        m = sum(w * np.outer(s.amplitudes, np.conj(s.amplitudes)) for w, s in zip(weights, states))
        return cls.from_operator(m)

    @classmethod
    def maximally_mixed(cls, dim: int) -> DensityMatrix:
        return cls(np.eye(dim, dtype=complex) / dim)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidState(f"Bloch component {name} is not finite")
            object.__setattr__(self, name, value)

    @property
    def length(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def bloch_to_density(r: BlochVector) -> DensityMatrix:
    if r.length > 1 + EQ_TOL:
        raise BlochOutOfBall(f"Bloch vector length {r.length:.12g} exceeds 1")
    m = 0.5 * (np.eye(2) + r.x * SIGMA_X + r.y * SIGMA_Y + r.z * SIGMA_Z)
    return DensityMatrix(m)


def density_to_bloch(rho: DensityMatrix) -> BlochVector:
    if rho.dim != 2:
        raise DimensionMismatch(f"Bloch vectors exist only for qubits, got dimension {rho.dim}")
    x, y, z = (float(np.trace(rho.matrix @ s).real) for s in PAULIS)
    return BlochVector(x, y, z)


def tensor(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the slow factor."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def partial_trace_ancilla(m, sys_dim: int, anc_dim: int) -> np.ndarray:
    """Trace out the fast (ancilla) factor of a ``sys_dim*anc_dim`` square matrix."""
    m = as_square(m)
    n = sys_dim * anc_dim
    if m.shape[0] != n:
        raise DimensionMismatch(f"matrix of size {m.shape[0]} cannot be split as {sys_dim} x {anc_dim}")
    return np.einsum("iaja->ij", m.reshape(sys_dim, anc_dim, sys_dim, anc_dim))
