"""Random states, unitaries and channels for property checks.

All functions take a ``numpy.random.Generator`` so callers control seeding.
"""
from __future__ import annotations

import numpy as np

from .channel import Dilation, KrausSet, make_kraus_set
from .matcore import DensityMatrix, PureState


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with the phases of R's diagonal removed."""
    q, r = np.linalg.qr(ginibre(rng, n, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(rng, rows, cols))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure_state(rng: np.random.Generator, dim: int) -> PureState:
    return PureState.normalized(ginibre(rng, dim, 1)[:, 0])


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> DensityMatrix:
    """Induced-measure mixed state; ``rank`` defaults to full."""
    g = ginibre(rng, dim, rank or dim)
    m = g @ g.conj().T
    return DensityMatrix.from_operator(m / np.trace(m).real)


def random_kraus(rng: np.random.Generator, dim: int, count: int) -> KrausSet:
    """``count`` Kraus operators cut from a random ``(dim*count) x dim`` isometry."""
    iso = random_isometry(rng, dim * count, dim).reshape(dim, count, dim)
    return make_kraus_set([iso[:, mu, :] for mu in range(count)])


def random_dilation(rng: np.random.Generator, sys_dim: int, anc_dim: int) -> Dilation:
    return Dilation(sys_dim, anc_dim, random_unitary(rng, sys_dim * anc_dim))


def random_bloch(rng: np.random.Generator, max_length: float = 1.0) -> np.ndarray:
    """Point drawn uniformly from the ball of radius ``max_length``."""
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return v * max_length * rng.random() ** (1 / 3)
