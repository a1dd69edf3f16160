"""Cohen-class representations with unimodular polynomial-phase kernels.

``Q(f, g)`` is obtained from ``W(f, g)`` by the Fourier multiplier
``exp(-i P(omega_1, omega_2))`` with ``P`` a real polynomial, i.e.
``Q = exp(-i P(D1, D2)) W``. Since the multiplier has modulus one the map is
an isometry on the sampled lattice, and a frequency component ``omega`` is
displaced by ``grad P(omega)`` in the plane. The phase-plane canvas is
therefore zero-padded until the displaced field still fits.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .expressions import evaluate
from .grid import Signal, angular_frequencies, check_same_grid, inner_product
from .hermite import OrthonormalFamily
from .operators import (
    D1,
    D2,
    M1,
    M2,
    PolyOpSpec,
    apply_op,
    energy_moment_spectral,
    phase_oscillator_form_spectral,
    moyal_product,
)
from .wigner import Field2D, Grid2D, cross_wigner, outer, wig_transform

DEFAULT_DEGREE_CAP = 4
#: largest canvas (number of samples) a padded field may occupy
MAX_CANVAS = 1 << 22
SIGNIFICANT = 1e-10


class KernelPoly:
    """Real polynomial ``P(xi, eta)`` stored as ``{(i, j): coefficient}``."""

    __slots__ = ("_coeffs", "degree_cap")

    def __init__(self, coeffs=None, degree_cap: int = DEFAULT_DEGREE_CAP):
        clean = {}
        for (i, j), c in dict(coeffs or {}).items():
            c = complex(c)
            if abs(c.imag) > 0:
                raise ValueError("kernel not real")
            if c.real != 0:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0.0) + c.real
        self._coeffs = {k: v for k, v in clean.items() if v != 0}
        self.degree_cap = degree_cap
        if self.degree > degree_cap:
            raise ValueError(f"kernel degree {self.degree} exceeds the cap {degree_cap}")

    @classmethod
    def parse(cls, text: str, degree_cap: int = DEFAULT_DEGREE_CAP) -> "KernelPoly":
        """Parse e.g. ``"0.5*xi*eta + eta^2"``."""
        names = {"xi": _Poly({(1, 0): 1.0}), "eta": _Poly({(0, 1): 1.0})}
        value = evaluate(text, names)
        if isinstance(value, numbers.Number):
            value = _Poly({(0, 0): value})
        return cls(value.coeffs, degree_cap=degree_cap)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __call__(self, xi, eta):
        xi, eta = np.asarray(xi, dtype=float), np.asarray(eta, dtype=float)
        out = np.zeros(np.broadcast(xi, eta).shape)
        for (i, j), c in self._coeffs.items():
            out = out + c * xi ** i * eta ** j
        return out

    def partial(self, axis: int) -> "KernelPoly":
        out = {}
        for (i, j), c in self._coeffs.items():
            p = (i, j)[axis]
            if p:
                key = (i - 1, j) if axis == 0 else (i, j - 1)
                out[key] = out.get(key, 0.0) + c * p
        return KernelPoly(out, degree_cap=self.degree_cap)

    def to_operator(self, first: PolyOpSpec, second: PolyOpSpec) -> PolyOpSpec:
        """``P(first, second)``; the two arguments must commute for this to be unambiguous."""
        out = PolyOpSpec()
        for (i, j), c in sorted(self._coeffs.items()):
            out = out + c * (first ** i) * (second ** j)
        return out

    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self._coeffs.items()):
            factors = [repr(c)] + ["xi"] * i + ["eta"] * j
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"KernelPoly({self.to_text()!r})"

    def __eq__(self, other):
        if not isinstance(other, KernelPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))


class _Poly:
    """Commutative polynomial arithmetic used while parsing kernels."""

    def __init__(self, coeffs):
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}

    @staticmethod
    def lift(v):
        return v if isinstance(v, _Poly) else _Poly({(0, 0): v})

    def __add__(self, other):
        other = _Poly.lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return _Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return _Poly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_Poly.lift(other))

    def __rsub__(self, other):
        return _Poly.lift(other) - self

    def __mul__(self, other):
        other = _Poly.lift(other)
        out = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return _Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1.0 / other)

    def __pow__(self, k):
        out = _Poly({(0, 0): 1.0})
        for _ in range(k):
            out = out * self
        return out

    def __pos__(self):
        return self


def as_kernel(P) -> KernelPoly:
    if isinstance(P, KernelPoly):
        return P
    if isinstance(P, str):
        return KernelPoly.parse(P)
    if isinstance(P, dict):
        return KernelPoly(P)
    raise TypeError("kernel must be a KernelPoly, its text form or a coefficient dict")


@dataclass(frozen=True)
class DerivedOps:
    """Operators attached to a kernel ``P``.

    ``shift_x``/``shift_xi`` are the partial derivatives of ``P`` evaluated at
    ``(D1, D2)``; the starred versions are evaluated at ``(D1 + D2, M2 - M1)``.
    """

    kernel: KernelPoly
    shift_x: PolyOpSpec
    shift_xi: PolyOpSpec
    shift_x_dual: PolyOpSpec
    shift_xi_dual: PolyOpSpec
    kernel_oscillator: PolyOpSpec
    kernel_moment_operator: PolyOpSpec


def derive_ops(P) -> DerivedOps:
    """Form the kernel's shift operators and the two modified oscillators.

    With ``D = -i d``, ``(i d_1 P)(D1, D2)`` is the ordinary partial derivative
    of the symbol evaluated at ``(D1, D2)``.
    """
    P = as_kernel(P)
    dx, dxi = P.partial(0), P.partial(1)
    p1 = dx.to_operator(D1, D2)
    p2 = dxi.to_operator(D1, D2)
    p1s = dx.to_operator(D1 + D2, M2 - M1)
    p2s = dxi.to_operator(D1 + D2, M2 - M1)
    kernel_oscillator = (M1 + 0.5 * D2 - p1) ** 2 + (0.5 * D1 - M2 + p2) ** 2
    kernel_moment_operator = (M1 - p1) ** 2 + (M2 - p2) ** 2
    return DerivedOps(P, p1, p2, p1s, p2s, kernel_oscillator, kernel_moment_operator)


def cohen_substitution_after(ops: DerivedOps) -> dict:
    """Substitution carrying an operator through ``u -> Q[u]`` from the right."""
    return {
        "M1": M1 - 0.5 * D2 - ops.shift_x,
        "M2": M1 + 0.5 * D2 - ops.shift_x,
        "D1": 0.5 * D1 + M2 - ops.shift_xi,
        "D2": 0.5 * D1 - M2 + ops.shift_xi,
    }


def cohen_substitution_before(ops: DerivedOps) -> dict:
    """Substitution carrying an operator on ``Q[u]`` back to one on ``u``."""
    return {
        "M1": 0.5 * (M1 + M2) + ops.shift_x_dual,
        "M2": 0.5 * (D1 - D2) + ops.shift_xi_dual,
        "D1": D1 + D2,
        "D2": M2 - M1,
    }


def kernel_multiplier(P, grid: Grid2D) -> np.ndarray:
    """``exp(-i P(omega_1, omega_2))`` on the FFT-ordered frequency lattice of ``grid``."""
    P = as_kernel(P)
    w1 = angular_frequencies(grid.axis0.size, grid.axis0.spacing)
    w2 = angular_frequencies(grid.axis1.size, grid.axis1.spacing)
    return np.exp(-1j * P(w1[:, None], w2[None, :]))


def pad_field(F: Field2D, pad) -> Field2D:
    """Center ``F`` on a canvas ``pad = (p0, p1)`` times larger, same spacings."""
    p0, p1 = pad
    if (p0, p1) == (1, 1):
        return F
    grid = Grid2D(F.grid.axis0.padded(p0), F.grid.axis1.padded(p1))
    out = np.zeros(grid.shape, dtype=complex)
    n0, n1 = F.grid.shape
    s0, s1 = (grid.shape[0] - n0) // 2, (grid.shape[1] - n1) // 2
    out[s0:s0 + n0, s1:s1 + n1] = F.samples
    return Field2D(grid, out)


def _next_pow2(x: float) -> int:
    return 1 if x <= 1 else 1 << int(math.ceil(math.log2(x) - 1e-12))


def cohen_padding(P, *fields: Field2D, margin: float = 1.0, threshold: float = SIGNIFICANT):
    """Padding factors that keep every field on the canvas after the kernel shift.

    The displacement of the frequency component ``omega`` is ``grad P(omega)``;
    it is bounded over the frequencies where the field's spectrum exceeds
    ``threshold`` times its peak, and added to the extent of the field's own
    significant support.
    """
    P = as_kernel(P)
    if P.is_zero():
        return (1, 1)
    dx, dxi = P.partial(0), P.partial(1)
    need0 = need1 = 0.0
    for F in fields:
        grid = F.grid
        mag = np.abs(F.samples)
        peak = mag.max()
        if peak == 0:
            continue
        rows = np.flatnonzero(mag.max(axis=1) > threshold * peak)
        cols = np.flatnonzero(mag.max(axis=0) > threshold * peak)
        ext0 = np.max(np.abs(grid.axis0.nodes[rows]))
        ext1 = np.max(np.abs(grid.axis1.nodes[cols]))
        spec = np.abs(np.fft.fft2(F.samples))
        sig = spec > threshold * spec.max()
        w1 = angular_frequencies(grid.axis0.size, grid.axis0.spacing)
        w2 = angular_frequencies(grid.axis1.size, grid.axis1.spacing)
        W1, W2 = np.meshgrid(w1, w2, indexing="ij")
        s0 = float(np.max(np.abs(dx(W1[sig], W2[sig])), initial=0.0))
        s1 = float(np.max(np.abs(dxi(W1[sig], W2[sig])), initial=0.0))
        need0 = max(need0, (ext0 + s0 + margin) / grid.axis0.half_width)
        need1 = max(need1, (ext1 + s1 + margin) / grid.axis1.half_width)
    pad = (_next_pow2(need0), _next_pow2(need1))
    if fields:
        size = fields[0].grid.shape[0] * pad[0] * fields[0].grid.shape[1] * pad[1]
        if size > MAX_CANVAS:
            raise ValueError(
                f"kernel shift needs a {pad[0]}x{pad[1]} padded canvas "
                f"({size} samples > {MAX_CANVAS}); use a coarser base grid"
            )
    return pad


def apply_kernel(P, F: Field2D, pad=None) -> Field2D:
    """``exp(-i P(D1, D2)) F`` on a (padded) canvas."""
    P = as_kernel(P)
    if pad is None:
        pad = cohen_padding(P, F)
    Fp = pad_field(F, pad)
    if P.is_zero():
        return Fp
    mult = kernel_multiplier(P, Fp.grid)
    return Field2D(Fp.grid, np.fft.ifft2(mult * np.fft.fft2(Fp.samples)))


def cohen_transform(f: Signal, g: Signal, P, pad=None) -> Field2D:
    """``Q(f, g)``: the kernel multiplier applied to ``W(f, g)``."""
    check_same_grid(f.grid, g.grid)
    return apply_kernel(P, cross_wigner(f, g), pad)


def cohen_of(u: Field2D, P, pad=None) -> Field2D:
    """``Q[u]`` for a two-variable signal ``u``."""
    return apply_kernel(P, wig_transform(u), pad)


def _as_tensor(w):
    return w if isinstance(w, Field2D) else outer(*w)


def cohen_intertwine_check(B, P, w, pad=None):
    """Residuals of the two transport rules for an operator ``B`` through ``Q``.

    ``residual_i = || Q[B w] - B(after) Q[w] ||`` and
    ``residual_ii = || B Q[w] - Q[B(before) w] ||``.
    """
    B = PolyOpSpec.parse(B) if isinstance(B, str) else B
    P = as_kernel(P)
    w = _as_tensor(w)
    ops = derive_ops(P)
    after = B.substitute(cohen_substitution_after(ops))
    before = B.substitute(cohen_substitution_before(ops))
    Ww = wig_transform(w)
    WBw = wig_transform(apply_op(B, w))
    Wbefore = wig_transform(apply_op(before, w))
    if pad is None:
        pad = cohen_padding(P, Ww, WBw, Wbefore)
    Qw = apply_kernel(P, Ww, pad)
    res_i = (apply_kernel(P, WBw, pad) - apply_op(after, Qw)).norm
    res_ii = (apply_op(B, Qw) - apply_kernel(P, Wbefore, pad)).norm
    return res_i, res_ii


def cohen_transport_residuals(words, P, w, pad=None) -> dict:
    """:func:`cohen_intertwine_check` for many operators sharing one ``P`` and ``w``.

    The padding and ``Q[w]`` are computed once; the result maps each entry of
    ``words`` to its ``(residual_i, residual_ii)`` pair.
    """
    P = as_kernel(P)
    w = _as_tensor(w)
    ops = derive_ops(P)
    after_map, before_map = cohen_substitution_after(ops), cohen_substitution_before(ops)
    Ww = wig_transform(w)
    prepared = []
    for word in words:
        B = PolyOpSpec.parse(word) if isinstance(word, str) else word
        WBw = wig_transform(apply_op(B, w))
        Wbefore = wig_transform(apply_op(B.substitute(before_map), w))
        prepared.append((word, B, WBw, Wbefore))
    if pad is None:
        pad = cohen_padding(P, Ww, *[f for item in prepared for f in item[2:]])
    Qw = apply_kernel(P, Ww, pad)
    out = {}
    for word, B, WBw, Wbefore in prepared:
        after = B.substitute(after_map)
        res_i = (apply_kernel(P, WBw, pad) - apply_op(after, Qw)).norm
        res_ii = (apply_op(B, Qw) - apply_kernel(P, Wbefore, pad)).norm
        out[word] = (res_i, res_ii)
    return out


@dataclass(frozen=True)
class CohenSumReport:
    kernel: str
    variant: str
    path: str
    n: int
    terms: np.ndarray
    partial_sums: np.ndarray
    bounds: np.ndarray
    pad: tuple

    @property
    def margins(self) -> np.ndarray:
        return self.partial_sums - self.bounds

    @property
    def min_margin(self) -> float:
        return float(np.min(self.margins))


def _family_signals(family, grid):
    if isinstance(family, OrthonormalFamily):
        return family.signals(grid)
    return list(family)


def _family_coeffs(family):
    return [family[k].coeffs for k in range(family.count)]


def cohen_md_sum(family_f, family_g, P, n: int, j: int = 0, variant: str = "oscillator",
                 path: str = "grid", grid=None, pad=None) -> CohenSumReport:
    """Partial sums of ``<L Q, Q>`` against the bound for the chosen operator.

    ``variant="oscillator"`` sums ``<kernel_oscillator Q(f_j, g_k), Q(f_j, g_k)>``
    over ``k <= n``
    against ``(n + 1)^2``; ``variant="moment"`` sums ``<kernel_moment_operator Q(g_k), Q(g_k)>``
    against ``(n + 1)^2 / 2`` and ignores ``family_f``.

    The spectral path uses the isometry of ``Q`` and the exact Hermite
    coordinates; the grid path evaluates the quadratic forms on the canvas.
    """
    if variant not in ("oscillator", "moment"):
        raise ValueError("variant must be 'oscillator' or 'moment'")
    count = family_g.count if isinstance(family_g, OrthonormalFamily) else len(family_g)
    if not 0 <= n < count:
        raise ValueError(f"n={n} out of range for a family of {count}")
    P = as_kernel(P)
    ops = derive_ops(P)
    if path == "spectral":
        gs = _family_coeffs(family_g)[: n + 1]
        if variant == "oscillator":
            a = _family_coeffs(family_f)[j]
            terms = np.array([phase_oscillator_form_spectral(a, b) for b in gs])
        else:
            terms = np.array([energy_moment_spectral(b) for b in gs])
        used_pad = (0, 0)
    elif path == "grid":
        if grid is None:
            raise ValueError("the grid path needs a signal grid")
        g_sig = _family_signals(family_g, grid)[: n + 1]
        if variant == "oscillator":
            f = _family_signals(family_f, grid)[j]
            fields = [cross_wigner(f, g) for g in g_sig]
            op = ops.kernel_oscillator
        else:
            fields = [cross_wigner(g, g) for g in g_sig]
            op = ops.kernel_moment_operator
        used_pad = pad if pad is not None else cohen_padding(P, *fields)
        terms = []
        for W in fields:
            Q = apply_kernel(P, W, used_pad)
            terms.append(moyal_product(apply_op(op, Q), Q).real)
        terms = np.array(terms)
    else:
        raise ValueError("path must be 'grid' or 'spectral'")
    k = np.arange(n + 1)
    bounds = (k + 1.0) ** 2 if variant == "oscillator" else (k + 1.0) ** 2 / 2
    return CohenSumReport(P.to_text(), variant, path, n, terms, np.cumsum(terms), bounds,
                          tuple(used_pad))


def isometry_error(pairs_a, pairs_b, P, pad) -> float:
    """``|<Q(f1, g1), Q(f2, g2)> - <f1, f2> conj(<g1, g2>)|`` for two signal pairs."""
    (f1, g1), (f2, g2) = pairs_a, pairs_b
    lhs = moyal_product(cohen_transform(f1, g1, P, pad), cohen_transform(f2, g2, P, pad))
    rhs = inner_product(f1, f2) * np.conj(inner_product(g1, g2))
    return abs(lhs - rhs)


__all__ = [
    "CohenSumReport",
    "DerivedOps",
    "KernelPoly",
    "apply_kernel",
    "cohen_intertwine_check",
    "cohen_transport_residuals",
    "cohen_md_sum",
    "cohen_of",
    "cohen_padding",
    "cohen_transform",
    "derive_ops",
    "isometry_error",
    "kernel_multiplier",
    "pad_field",
]
