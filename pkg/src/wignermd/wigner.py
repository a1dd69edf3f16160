"""Discrete cross-Wigner transform, its two-variable form and Moyal products.

The lag variable runs over ``t = 2 q dx`` so that both ``x +- t/2`` stay on
the signal lattice; the frequency axis then has spacing ``pi/(N dx)`` and
``N`` samples centered at zero. With that choice the lag sum is a rectangle
rule and is spectrally accurate for decaying, grid-resolved signals.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .grid import (
    SQRT_2PI,
    Grid1D,
    GridMismatchError,
    Signal,
    angular_frequencies,
    check_same_grid,
    edge_energy_fraction,
    fourier_transform,
)

EDGE_ENERGY_LIMIT = 1e-6


class QualityWarning(UserWarning):
    """A signal carries noticeable energy near the grid boundary."""


@dataclass(frozen=True)
class Grid2D:
    """Product lattice ``axis0 x axis1``."""

    axis0: Grid1D
    axis1: Grid1D

    @property
    def shape(self):
        return (self.axis0.size, self.axis1.size)

    @property
    def cell_area(self) -> float:
        return self.axis0.spacing * self.axis1.spacing

    def mesh(self):
        return np.meshgrid(self.axis0.nodes, self.axis1.nodes, indexing="ij")


def wigner_axis(grid: Grid1D) -> Grid1D:
    """Frequency axis of the discrete Wigner transform: spacing ``pi/(N dx)``."""
    return Grid1D(math.pi / (2.0 * grid.spacing), grid.size)


def wigner_grid(grid: Grid1D) -> Grid2D:
    return Grid2D(grid, wigner_axis(grid))


def tensor_grid(grid: Grid1D) -> Grid2D:
    return Grid2D(grid, grid)


@dataclass(frozen=True, eq=False)
class Field2D:
    """Complex samples of a function of two variables on a :class:`Grid2D`.

    Phase-space fields (``W(f, g)`` and friends) live on :func:`wigner_grid`;
    two-variable signals ``u(x, y)`` live on :func:`tensor_grid`.
    """

    grid: Grid2D
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.shape != self.grid.shape:
            raise ValueError(f"expected shape {self.grid.shape}, got {s.shape}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def squared_norm(self) -> float:
        return float(self.grid.cell_area * np.sum(np.abs(self.samples) ** 2))

    @property
    def norm(self) -> float:
        return math.sqrt(self.squared_norm)

    def with_samples(self, samples) -> "Field2D":
        return Field2D(self.grid, samples)

    def __add__(self, other):
        _check_same_grid2d(self.grid, other.grid)
        return Field2D(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        _check_same_grid2d(self.grid, other.grid)
        return Field2D(self.grid, self.samples - other.samples)

    def __mul__(self, scalar):
        return Field2D(self.grid, self.samples * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return Field2D(self.grid, -self.samples)


def _check_same_grid2d(a: Grid2D, b: Grid2D):
    if a.axis0 != b.axis0 or a.axis1 != b.axis1:
        raise GridMismatchError()


def field_distance(F: Field2D, G: Field2D) -> float:
    """``L^2`` norm of ``F - G``."""
    return (F - G).norm


def outer(f: Signal, g: Signal) -> Field2D:
    """``u(x, y) = f(x) conj(g(y))`` on the tensor grid."""
    check_same_grid(f.grid, g.grid)
    return Field2D(tensor_grid(f.grid), np.outer(f.samples, np.conj(g.samples)))


def check_edge_energy(*signals: Signal, stacklevel: int = 3):
    """Warn when a signal has more than 1e-6 relative energy in the outer 10%."""
    worst = max(edge_energy_fraction(s) for s in signals)
    if worst > EDGE_ENERGY_LIMIT:
        warnings.warn(
            f"relative edge energy {worst:.2e} exceeds {EDGE_ENERGY_LIMIT:g}; "
            "results may be contaminated by the grid boundary",
            QualityWarning,
            stacklevel=stacklevel,
        )
    return worst


@lru_cache(maxsize=8)
def _lag_tables(N: int):
    """Flat index arrays for all on-grid pairs ``(n + q, n - q)``.

    Returns ``(rows, lag_cols, plus, minus)`` where ``rows = n`` and
    ``lag_cols = q mod N``; the arrays are read-only and shared.
    """
    n = np.arange(N)[:, None]
    q = np.arange(-(N // 2) + 1, N // 2)[None, :]
    plus, minus = n + q, n - q
    valid = (plus >= 0) & (plus < N) & (minus >= 0) & (minus < N)
    rows = np.broadcast_to(n, valid.shape)[valid]
    cols = np.broadcast_to(q, valid.shape)[valid] % N
    out = (rows, cols, plus[valid], minus[valid])
    for a in out:
        a.setflags(write=False)
    return out


def _lag_to_wigner(lagged: np.ndarray, grid: Grid1D) -> np.ndarray:
    """FFT over the lag index with the sign flip that centers the frequency axis."""
    N = grid.size
    sign = 1 - 2 * (np.arange(N) % 2)
    return (2.0 * grid.spacing / SQRT_2PI) * np.fft.fft(lagged * sign, axis=1)


def _wigner_to_lag(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    N = grid.size
    sign = 1 - 2 * (np.arange(N) % 2)
    return np.fft.ifft(values, axis=1) * sign * (SQRT_2PI / (2.0 * grid.spacing))


def wig_transform(u: Field2D) -> Field2D:
    """Partial Fourier transform in the lag of ``u(x + t/2, x - t/2)``."""
    g = u.grid.axis0
    if u.grid.axis1 != g:
        raise GridMismatchError()
    N = g.size
    rows, cols, plus, minus = _lag_tables(N)
    lagged = np.zeros((N, N), dtype=complex)
    lagged[rows, cols] = u.samples[plus, minus]
    return Field2D(wigner_grid(g), _lag_to_wigner(lagged, g))


def cross_wigner(f: Signal, g: Signal) -> Field2D:
    """``W(f, g)(x, xi) = (2 pi)^(-1/2) int f(x+t/2) conj(g(x-t/2)) e^{-i t xi} dt``."""
    grid = check_same_grid(f.grid, g.grid)
    N = grid.size
    rows, cols, plus, minus = _lag_tables(N)
    lagged = np.zeros((N, N), dtype=complex)
    lagged[rows, cols] = f.samples[plus] * np.conj(g.samples[minus])
    return Field2D(wigner_grid(grid), _lag_to_wigner(lagged, grid))


def wigner_basis(signals, partners=None):
    """All ``W(f_j, g_k)`` as a dict keyed by ``(j, k)``."""
    partners = signals if partners is None else partners
    return {
        (j, k): cross_wigner(f, g)
        for j, f in enumerate(signals)
        for k, g in enumerate(partners)
    }


def wig_inverse(F: Field2D) -> Field2D:
    """Recover ``u`` on the tensor grid from ``F = wig_transform(u)``.

    Index pairs ``(a, b)`` with ``a + b`` even come straight from the inverse
    lag transform at ``x_{(a+b)/2}``. The odd pairs need the field at the
    half-shifted abscissa ``x + dx/2``, which is obtained by Fourier
    interpolation along the first axis; the lag then runs over odd multiples
    of ``dx`` and a phase ``e^{i dx xi}`` brings it back to the even case.
    """
    g = F.grid.axis0
    if F.grid.axis1 != wigner_axis(g):
        raise GridMismatchError()
    N = g.size
    u = np.zeros((N, N), dtype=complex)
    rows, cols, plus, minus = _lag_tables(N)

    even = _wigner_to_lag(F.samples, g)
    u[plus, minus] = even[rows, cols]

    shift = np.exp(0.5j * g.spacing * angular_frequencies(N, g.spacing))
    shifted = np.fft.ifft(np.fft.fft(F.samples, axis=0) * shift[:, None], axis=0)
    xi = wigner_axis(g).nodes
    odd = _wigner_to_lag(shifted * np.exp(1j * g.spacing * xi)[None, :], g)
    keep = plus + 1 < N
    u[plus[keep] + 1, minus[keep]] = odd[rows[keep], cols[keep]]
    return Field2D(tensor_grid(g), u)


def moyal_product(F: Field2D, G: Field2D) -> complex:
    """``<F, G> = int F conj(G)`` over the common grid."""
    _check_same_grid2d(F.grid, G.grid)
    return complex(F.grid.cell_area * np.vdot(G.samples, F.samples))


def zero_pad(f: Signal, factor: int = 2) -> Signal:
    """Embed ``f`` in a grid of the same spacing and ``factor`` times the extent."""
    big = f.grid.padded(factor)
    out = np.zeros(big.size, dtype=complex)
    start = (big.size - f.grid.size) // 2
    out[start:start + f.grid.size] = f.samples
    return Signal(big, out)


def _matching_indices(coords: np.ndarray, axis: Grid1D):
    pos = (coords - axis.nodes[0]) / axis.spacing
    idx = np.rint(pos).astype(int)
    ok = (np.abs(pos - idx) < 1e-6) & (idx >= 0) & (idx < axis.size)
    return idx, ok


def fourier_rotation_check(f: Signal, g: Signal) -> float:
    """Largest deviation from ``W(f^, g^)(x, xi) = W(f, g)(-xi, x)``.

    Both sides are evaluated on twice-padded copies of the inputs, so the
    frequency range of the transformed Wigner field covers the full support;
    comparison is restricted to lattice points that both fields sample.
    """
    check_same_grid(f.grid, g.grid)
    fp, gp = zero_pad(f), zero_pad(g)
    direct = cross_wigner(fp, gp)
    rotated = cross_wigner(fourier_transform(fp), fourier_transform(gp))
    # rotated(x', xi') is compared with direct(-xi', x')
    rows, row_ok = _matching_indices(-rotated.grid.axis1.nodes, direct.grid.axis0)
    cols, col_ok = _matching_indices(rotated.grid.axis0.nodes, direct.grid.axis1)
    a = np.flatnonzero(col_ok)
    b = np.flatnonzero(row_ok)
    if a.size == 0 or b.size == 0:
        raise ValueError("no common lattice points")
    lhs = rotated.samples[np.ix_(a, b)]
    rhs = direct.samples[np.ix_(rows[b], cols[a])].T
    return float(np.max(np.abs(lhs - rhs)))
