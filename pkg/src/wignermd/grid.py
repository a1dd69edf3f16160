"""Uniform grids, sampled signals and the unitary Fourier transform.

The Fourier transform is normalized as

    f^(xi) = (2 pi)^(-1/2) * integral f(t) exp(-i t xi) dt,

and is evaluated on sampled data by a phase-corrected FFT, so that the
symmetric lattice ``x_n = -L + n*dx`` reproduces the continuous transform
rather than the index-space DFT.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)


class GridMismatchError(ValueError):
    """Raised when two objects that must share a grid do not."""

    def __init__(self, message="grid mismatch"):
        super().__init__(message)


def _is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform lattice ``x_n = -L + n*dx`` with ``dx = 2L/N``.

    Parameters
    ----------
    half_width : float
        Half length ``L`` of the sampled interval ``[-L, L)``.
    size : int
        Number of samples ``N``; a power of two, at least 8.
    """

    half_width: float = 12.0
    size: int = 512

    def __post_init__(self):
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")
        if int(self.size) != self.size or not _is_power_of_two(int(self.size)) or self.size < 8:
            raise ValueError(f"size must be a power of two >= 8, got {self.size!r}")
        object.__setattr__(self, "size", int(self.size))
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.size

    @cached_property
    def nodes(self) -> np.ndarray:
        x = -self.half_width + self.spacing * np.arange(self.size)
        x.setflags(write=False)
        return x

    def dual(self) -> "Grid1D":
        """Frequency lattice of spacing ``2 pi/(N dx)`` covering ``[-pi/dx, pi/dx)``."""
        return Grid1D(math.pi / self.spacing, self.size)

    def padded(self, factor: int) -> "Grid1D":
        """Same spacing, ``factor`` times the extent."""
        if factor < 1 or not _is_power_of_two(int(factor)):
            raise ValueError(f"padding factor must be a power of two, got {factor!r}")
        return Grid1D(self.half_width * factor, self.size * int(factor))

    def __eq__(self, other):
        if not isinstance(other, Grid1D):
            return NotImplemented
        return self.size == other.size and math.isclose(
            self.half_width, other.half_width, rel_tol=1e-12
        )

    def __hash__(self):
        # half_width only compares approximately, so it stays out of the hash
        return hash(self.size)


def check_same_grid(*grids):
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError()
    return first


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex samples of a function on a :class:`Grid1D`."""

    grid: Grid1D
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.shape != (self.grid.size,):
            raise ValueError(
                f"expected {self.grid.size} samples, got array of shape {s.shape}"
            )
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_function(cls, func, grid: Grid1D) -> "Signal":
        return cls(grid, func(grid.nodes))

    @classmethod
    def zeros(cls, grid: Grid1D) -> "Signal":
        return cls(grid, np.zeros(grid.size, dtype=complex))

    @property
    def squared_norm(self) -> float:
        return float(self.grid.spacing * np.sum(np.abs(self.samples) ** 2))

    @property
    def norm(self) -> float:
        return math.sqrt(self.squared_norm)

    def normalized(self) -> "Signal":
        nrm = self.norm
        if nrm == 0:
            raise ValueError("zero signal")
        return Signal(self.grid, self.samples / nrm)

    def __add__(self, other):
        check_same_grid(self.grid, other.grid)
        return Signal(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        check_same_grid(self.grid, other.grid)
        return Signal(self.grid, self.samples - other.samples)

    def __mul__(self, scalar):
        return Signal(self.grid, self.samples * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Signal(self.grid, self.samples / scalar)

    def __neg__(self):
        return Signal(self.grid, -self.samples)


def _fourier_phases(grid: Grid1D):
    x0 = grid.nodes[0]
    dual = grid.dual()
    w0 = dual.nodes[0]
    n = np.arange(grid.size)
    pre = np.exp(-1j * n * grid.spacing * w0)
    post = np.exp(-1j * (x0 * w0 + x0 * dual.spacing * n))
    return pre, post


def _along(vec, ndim, axis):
    shape = [1] * ndim
    shape[axis] = vec.size
    return vec.reshape(shape)


def fourier_transform_array(values, grid: Grid1D, axis: int = -1, inverse: bool = False):
    """Unitary transform of ``values`` sampled on ``grid`` along one axis.

    The output is sampled on ``grid.dual()``. Forward evaluates
    ``(dx/sqrt(2 pi)) * sum_n v(x_n) exp(-i x_n xi_m)``; ``inverse=True`` uses
    ``exp(+i x_n xi_m)``, so it undoes the forward transform from the dual side.
    """
    values = np.asarray(values, dtype=complex)
    axis = axis % values.ndim
    pre, post = _fourier_phases(grid)
    scale = grid.spacing / SQRT_2PI
    if inverse:
        pre, post = np.conj(pre), np.conj(post)
        out = np.fft.ifft(values * _along(pre, values.ndim, axis), axis=axis) * grid.size
    else:
        out = np.fft.fft(values * _along(pre, values.ndim, axis), axis=axis)
    return scale * out * _along(post, values.ndim, axis)


def fourier_transform(f: Signal) -> Signal:
    """Unitary Fourier transform of ``f``, sampled on ``f.grid.dual()``."""
    return Signal(f.grid.dual(), fourier_transform_array(f.samples, f.grid))


def inverse_fourier_transform(F: Signal) -> Signal:
    """Inverse of :func:`fourier_transform`; ``F`` lives on a dual grid."""
    return Signal(F.grid.dual(), fourier_transform_array(F.samples, F.grid, inverse=True))


def inner_product(f: Signal, g: Signal) -> complex:
    """``<f, g> = integral f * conj(g)``, conjugate-linear in ``g``."""
    check_same_grid(f.grid, g.grid)
    return complex(f.grid.spacing * np.vdot(g.samples, f.samples))


def angular_frequencies(size: int, spacing: float) -> np.ndarray:
    """FFT-ordered angular frequencies with the Nyquist bin zeroed.

    A zero symbol at Nyquist keeps every spectral derivative Hermitian for
    the rectangle-rule inner product, including odd orders.
    """
    w = 2.0 * np.pi * np.fft.fftfreq(size, d=spacing)
    w[size // 2] = 0.0
    return w


def spectral_derivative(values: np.ndarray, spacing: float, axis: int = -1) -> np.ndarray:
    """Apply ``D = -i d/dx`` along ``axis`` as the Fourier multiplier ``omega``."""
    n = values.shape[axis]
    w = angular_frequencies(n, spacing)
    shape = [1] * values.ndim
    shape[axis] = n
    spec = np.fft.fft(values, axis=axis)
    spec *= w.reshape(shape)
    return np.fft.ifft(spec, axis=axis)


def apply_position(f: Signal) -> Signal:
    """``(M f)(t) = t f(t)``."""
    return Signal(f.grid, f.grid.nodes * f.samples)


def apply_momentum(f: Signal) -> Signal:
    """``(D f)(t) = -i f'(t)``; accurate while ``f`` vanishes at the grid ends."""
    return Signal(f.grid, spectral_derivative(f.samples, f.grid.spacing))


def gaussian(grid: Grid1D, shift: float = 0.0, modulation: float = 0.0) -> Signal:
    """Unit-norm ``pi^(-1/4) exp(-(t-a)^2/2) exp(i b t)``."""
    x = grid.nodes
    return Signal(
        grid,
        np.pi ** -0.25 * np.exp(-0.5 * (x - shift) ** 2) * np.exp(1j * modulation * x),
    )


def edge_energy_fraction(f: Signal, fraction: float = 0.1) -> float:
    """Relative energy of ``f`` in the outer ``fraction`` of the grid."""
    total = np.sum(np.abs(f.samples) ** 2)
    if total == 0:
        return 0.0
    x = np.abs(f.grid.nodes)
    edge = x >= (1.0 - fraction) * f.grid.half_width
    return float(np.sum(np.abs(f.samples[edge]) ** 2) / total)
