"""Hermite functions and coefficient-space representations of signals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid1D, Signal


class UnresolvedDegreeError(ValueError):
    def __init__(self, degree, grid):
        super().__init__(
            f"unresolved degree {degree} on grid (L={grid.half_width}, N={grid.size})"
        )


def max_resolved_degree(grid: Grid1D) -> int:
    """Largest ``k`` with ``L >= sqrt(2k+1)+4`` and ``dx <= pi/sqrt(2(2k+1))``."""
    by_extent = ((grid.half_width - 4.0) ** 2 - 1.0) / 2.0 if grid.half_width > 4 else -1
    by_spacing = ((math.pi / grid.spacing) ** 2 / 2.0 - 1.0) / 2.0
    return int(math.floor(min(by_extent, by_spacing) + 1e-12))


def check_resolved(degree: int, grid: Grid1D):
    if degree > max_resolved_degree(grid):
        raise UnresolvedDegreeError(degree, grid)


def hermite_functions(count: int, grid: Grid1D) -> np.ndarray:
    """Samples of ``h_0 .. h_{count-1}`` as rows of a ``(count, N)`` array.

    Uses the normalized three-term recurrence, which stays bounded where
    the explicit polynomial formula would overflow.
    """
    if count < 1:
        raise ValueError("count must be positive")
    check_resolved(count - 1, grid)
    x = grid.nodes
    out = np.empty((count, grid.size))
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if count > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(2, count):
        out[k] = math.sqrt(2.0 / k) * x * out[k - 1] - math.sqrt((k - 1) / k) * out[k - 2]
    return out


def hermite_function(k: int, grid: Grid1D) -> Signal:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return Signal(grid, hermite_functions(k + 1, grid)[k])


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Coefficients ``a_k = <f, h_k>`` for ``k < K``."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.coeffs, dtype=complex).reshape(-1)
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @property
    def truncation(self) -> int:
        return self.coeffs.size

    @property
    def squared_norm(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    @classmethod
    def basis(cls, k: int, truncation: int) -> "CoeffVector":
        a = np.zeros(truncation, dtype=complex)
        a[k] = 1.0
        return cls(a)


def analyze(f: Signal, K: int) -> CoeffVector:
    """Project ``f`` onto ``h_0 .. h_{K-1}``."""
    basis = hermite_functions(K, f.grid)
    return CoeffVector(f.grid.spacing * (basis @ f.samples))


def synthesize(a, grid: Grid1D) -> Signal:
    """``sum_k a_k h_k`` sampled on ``grid``."""
    coeffs = a.coeffs if isinstance(a, CoeffVector) else np.asarray(a, dtype=complex)
    basis = hermite_functions(coeffs.size, grid)
    return Signal(grid, coeffs @ basis)


@dataclass(frozen=True, eq=False)
class OrthonormalFamily:
    """A finite orthonormal family stored as columns of a ``(K, count)`` matrix
    of Hermite coefficients."""

    matrix: np.ndarray = field(repr=False)
    tolerance: float = 1e-8

    def __post_init__(self):
        v = np.array(self.matrix, dtype=complex)
        if v.ndim != 2 or v.shape[1] > v.shape[0]:
            raise ValueError("family larger than truncation")
        dev = gram_deviation(v)
        if dev > self.tolerance:
            raise ValueError(f"family is not orthonormal (Gram deviation {dev:.3e})")
        v.setflags(write=False)
        object.__setattr__(self, "matrix", v)

    @property
    def K(self) -> int:
        return self.matrix.shape[0]

    @property
    def count(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self):
        return [CoeffVector(self.matrix[:, k]) for k in range(self.count)]

    def __len__(self):
        return self.count

    def __getitem__(self, k) -> CoeffVector:
        return CoeffVector(self.matrix[:, k])

    def gram(self) -> np.ndarray:
        return self.matrix.conj().T @ self.matrix

    def signals(self, grid: Grid1D):
        basis = hermite_functions(self.K, grid)
        return [Signal(grid, self.matrix[:, k] @ basis) for k in range(self.count)]


def gram_deviation(matrix) -> float:
    m = np.asarray(matrix)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[1])), initial=0.0))


def random_orthonormal_family(K: int, count: int, seed: int) -> OrthonormalFamily:
    """Orthonormalized complex Gaussian ``K x count`` matrix.

    Entries are ``(X + iY)/sqrt(2)`` with ``X, Y`` standard normal drawn from
    ``numpy.random.default_rng(seed)`` (PCG64), real block first; the family
    is the Q factor of a reduced QR with the phases of ``diag(R)`` absorbed,
    which makes it Haar distributed.
    """
    if count > K:
        raise ValueError("family larger than truncation")
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((K, count)) + 1j * rng.standard_normal((K, count))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return OrthonormalFamily(q)


def hermite_family(K: int, count: int | None = None, phases=None) -> OrthonormalFamily:
    """``e^{i theta_k} h_k`` for ``k < count`` in a ``K``-truncation."""
    count = K if count is None else count
    if count > K:
        raise ValueError("family larger than truncation")
    v = np.eye(K, count, dtype=complex)
    if phases is not None:
        theta = np.asarray(phases, dtype=float)
        if theta.shape != (count,):
            raise ValueError("need one phase per family member")
        v = v * np.exp(1j * theta)
    return OrthonormalFamily(v)


def position_matrix(K: int) -> np.ndarray:
    """``X[j, k] = <M h_k, h_j>`` on the ``K``-truncation."""
    k = np.arange(1, K)
    off = np.sqrt(k / 2.0)
    return np.diag(off, -1) + np.diag(off, 1)


def momentum_matrix(K: int) -> np.ndarray:
    """``P[j, k] = <D h_k, h_j>`` on the ``K``-truncation, ``D = -i d/dt``."""
    k = np.arange(1, K)
    off = np.sqrt(k / 2.0)
    return -1j * (np.diag(off, 1) - np.diag(off, -1))


def random_unit_vector(K: int, seed: int) -> CoeffVector:
    return random_orthonormal_family(K, 1, seed)[0]
