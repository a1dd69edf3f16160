"""Polynomial differential operators on the plane and their action on fields.

An operator is a finite sum of words in the four generators

    M1: multiply by the first coordinate      D1 = -i d/d(first coordinate)
    M2: multiply by the second coordinate     D2 = -i d/d(second coordinate)

Words are stored as tuples and compose right to left, so ``("M1", "D1")``
means "differentiate, then multiply". No normal ordering is ever applied.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass, field

import numpy as np

from .expressions import evaluate
from .grid import (
    SQRT_2PI,
    Signal,
    apply_momentum,
    apply_position,
    fourier_transform_array,
    spectral_derivative,
)
from .hermite import CoeffVector, hermite_functions, momentum_matrix, position_matrix
from .wigner import (
    Field2D,
    Grid2D,
    cross_wigner,
    moyal_product,
    outer,
    wig_inverse,
    wig_transform,
    _check_same_grid2d,
)

GENERATORS = ("M1", "M2", "D1", "D2")
_DROP = 1e-15


class PolyOpSpec:
    """Non-commutative polynomial in ``M1, M2, D1, D2`` with complex coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for word, coeff in dict(terms or {}).items():
            word = tuple(word)
            bad = [w for w in word if w not in GENERATORS]
            if bad:
                raise ValueError(f"unknown generator(s) {bad}")
            c = complex(coeff)
            if abs(c) > _DROP:
                clean[word] = clean.get(word, 0) + c
        self._terms = {w: c for w, c in clean.items() if abs(c) > _DROP}

    @classmethod
    def identity(cls):
        return cls({(): 1.0})

    @classmethod
    def generator(cls, name):
        return cls({(name,): 1.0})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def parse(cls, text: str) -> "PolyOpSpec":
        """Parse e.g. ``"(M1 + 0.5*D2)^2 + (0.5*D1 - M2)^2"``; ``I`` is the identity."""
        names = {g: cls.generator(g) for g in GENERATORS}
        names["I"] = cls.identity()
        return _as_op(evaluate(text, names))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def monomials(self):
        """``(coefficient, word)`` pairs in a stable order."""
        return [(c, w) for w, c in sorted(self._terms.items(), key=_word_key)]

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        other = _as_op(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return PolyOpSpec(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyOpSpec({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_op(other))

    def __rsub__(self, other):
        return _as_op(other) - self

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return PolyOpSpec({w: c * other for w, c in self._terms.items()})
        other = _as_op(other)
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return PolyOpSpec(out)

    def __rmul__(self, other):
        return _as_op(other) * self

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __pow__(self, k):
        if not isinstance(k, numbers.Integral) or k < 0:
            raise ValueError("operator powers must be nonnegative integers")
        out = PolyOpSpec.identity()
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, mapping) -> "PolyOpSpec":
        """Replace every generator by the operator ``mapping[name]`` (order kept)."""
        out = PolyOpSpec()
        for word, c in self._terms.items():
            term = PolyOpSpec.identity() * c
            for g in word:
                term = term * _as_op(mapping.get(g, PolyOpSpec.generator(g)))
            out = out + term
        return out

    def adjoint(self) -> "PolyOpSpec":
        """Formal adjoint: every generator is symmetric, so words reverse."""
        return PolyOpSpec({w[::-1]: np.conj(c) for w, c in self._terms.items()})

    def close_to(self, other, tol=1e-12) -> bool:
        diff = self - _as_op(other)
        return all(abs(c) <= tol for c in diff._terms.values())

    def _key(self):
        return tuple(sorted(((w, c.real, c.imag) for w, c in self._terms.items()), key=_word_key))

    def __eq__(self, other):
        if isinstance(other, (PolyOpSpec, numbers.Number)):
            return self.close_to(other, tol=0.0)
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PolyOpSpec({self.to_text()!r})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, word in self.monomials:
            coeff = _format_coeff(c)
            body = "*".join(word) if word else "I"
            parts.append(f"{coeff}*{body}")
        return " + ".join(parts)


def _word_key(item):
    w = item[0]
    return (len(w), w)


def _format_coeff(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}j"
    return f"({c.real!r}{c.imag:+}j)"


def _as_op(value) -> PolyOpSpec:
    if isinstance(value, PolyOpSpec):
        return value
    if isinstance(value, numbers.Number):
        return PolyOpSpec.identity() * value
    raise TypeError(f"cannot use {type(value).__name__} as an operator")


M1, M2, D1, D2 = (PolyOpSpec.generator(g) for g in GENERATORS)
IDENTITY = PolyOpSpec.identity()

#: ``(M1 + D2/2)^2 + (D1/2 - M2)^2``, diagonal on the Wigner products of Hermite functions
PHASE_OSCILLATOR = (M1 + 0.5 * D2) ** 2 + (0.5 * D1 - M2) ** 2
#: ``(D1 - M2/2)^2 + (D2 + M1/2)^2``, acting on inverse Fourier transforms of those products
TWISTED_LAPLACIAN = (D1 - 0.5 * M2) ** 2 + (D2 + 0.5 * M1) ** 2
#: ``(D1^2 + D2^2)/4 + M1^2 + M2^2``
ALT_OPERATOR = 0.25 * (D1 ** 2 + D2 ** 2) + (M1 ** 2 + M2 ** 2)


def _apply_generator(name: str, values: np.ndarray, grid: Grid2D) -> np.ndarray:
    if name == "M1":
        return values * grid.axis0.nodes[:, None]
    if name == "M2":
        return values * grid.axis1.nodes[None, :]
    if name == "D1":
        return spectral_derivative(values, grid.axis0.spacing, axis=0)
    return spectral_derivative(values, grid.axis1.spacing, axis=1)


def _apply(op: PolyOpSpec, values, grid, cache):
    key = op._key()
    if key in cache:
        return cache[key]
    if not op._terms:
        return np.zeros_like(values)
    # factor the leading coefficient out so rescaled sub-operators share work
    lead = op.monomials[0][0]
    unit = op * (1.0 / lead)
    ukey = unit._key()
    if ukey in cache:
        return lead * cache[ukey]
    groups = {}
    result = np.zeros_like(values)
    for word, c in unit._terms.items():
        if not word:
            result = result + c * values
        else:
            groups.setdefault(word[0], {})[word[1:]] = c
    for g in GENERATORS:
        if g in groups:
            inner = _apply(PolyOpSpec(groups[g]), values, grid, cache)
            result = result + _apply_generator(g, inner, grid)
    cache[ukey] = result
    return lead * result


def apply_op(op, F: Field2D) -> Field2D:
    """Apply ``op`` (a :class:`PolyOpSpec` or its text form) to ``F``.

    Monomials sharing an outermost generator are grouped, so a generator is
    applied once per distinct (rescaled) inner operator.
    """
    if isinstance(op, str):
        op = PolyOpSpec.parse(op)
    values = F.samples.astype(complex)
    return Field2D(F.grid, _apply(_as_op(op), values, F.grid, {}))


def quadratic_form(op, F: Field2D) -> complex:
    """``<op F, F>``."""
    return moyal_product(apply_op(op, F), F)


#: symmetric first-order factors with ``PHASE_OSCILLATOR = A^2 + B^2``
PHASE_OSCILLATOR_FACTORS = (M1 + 0.5 * D2, 0.5 * D1 - M2)


def phase_oscillator_form(F: Field2D) -> float:
    """``<PHASE_OSCILLATOR F, F> = ||A F||^2 + ||B F||^2`` for the two factors of ``PHASE_OSCILLATOR``.

    Each factor is symmetric for the lattice inner product (multiplication
    and the Nyquist-free spectral derivative both are), so this equals
    :func:`quadratic_form` up to rounding while needing half the transforms.
    """
    return sum(apply_op(A, F).squared_norm for A in PHASE_OSCILLATOR_FACTORS)


@dataclass(frozen=True, eq=False)
class CoeffMatrix:
    """Coefficients ``c[j, k] = <F, W(h_j, h_k)>`` of a phase-space field."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 2:
            raise ValueError("coefficient matrix must be two-dimensional")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @classmethod
    def unit(cls, j, k, shape):
        c = np.zeros(shape, dtype=complex)
        c[j, k] = 1.0
        return cls(c)


def _coeff_array(a):
    return a.coeffs if isinstance(a, (CoeffVector, CoeffMatrix)) else np.asarray(a, dtype=complex)


def wigner_coefficients(a, b) -> CoeffMatrix:
    """Coefficients of ``W(f, g)`` from those of ``f`` and ``g``: ``a_j conj(b_k)``."""
    return CoeffMatrix(np.outer(_coeff_array(a), np.conj(_coeff_array(b))))


def field_coefficients(F: Field2D, K: int) -> CoeffMatrix:
    """Project a phase-space field onto ``W(h_j, h_k)``, ``j, k < K``.

    Uses that the two-variable Wigner map is unitary and sends
    ``h_j (x) h_k`` to ``W(h_j, h_k)``, so the projection is a separable
    Hermite analysis of the preimage.
    """
    u = wig_inverse(F)
    x = u.grid.axis0
    h = hermite_functions(K, x)
    return CoeffMatrix(x.spacing ** 2 * (h @ u.samples @ h.T))


def coefficient_oscillator_form(c) -> float:
    """``sum_{j,k} |c[j, k]|^2 (2k + 1)``.

    A finite truncation can only give a lower estimate of the full series.
    """
    m = _coeff_array(c)
    weights = 2 * np.arange(m.shape[1]) + 1
    return float(np.sum(np.abs(m) ** 2 * weights[None, :]))


def oscillator_energy(b) -> float:
    """``<(M^2 + D^2) g, g> = sum_l |b_l|^2 (2l + 1)`` for ``g`` with coefficients ``b``."""
    b = _coeff_array(b)
    return float(np.sum(np.abs(b) ** 2 * (2 * np.arange(b.size) + 1)))


def phase_oscillator_form_spectral(a, b) -> float:
    """``<PHASE_OSCILLATOR W(f, g), W(f, g)> = ||a||^2 sum_l |b_l|^2 (2l + 1)``."""
    a = _coeff_array(a)
    return float(np.vdot(a, a).real) * oscillator_energy(b)


def energy_moment_spectral(b) -> float:
    """``<(M1^2 + M2^2) W(g), W(g)>`` from the Hermite coefficients of ``g``.

    Equals ``||g||^2 <(M^2 + D^2) g, g>/2 + (<M g, g>^2 + <D g, g>^2)/2``.
    """
    b = _coeff_array(b)
    K = b.size
    mean_x = np.vdot(b, position_matrix(K) @ b).real
    mean_xi = np.vdot(b, momentum_matrix(K) @ b).real
    norm2 = np.vdot(b, b).real
    return float(0.5 * norm2 * oscillator_energy(b) + 0.5 * (mean_x ** 2 + mean_xi ** 2))


# substitutions turning an operator on the plane into one on the other side of
# the two-variable Wigner map
LEFT_SUBSTITUTION = {
    "M1": 0.5 * (M1 + M2),
    "M2": 0.5 * (D1 - D2),
    "D1": D1 + D2,
    "D2": M2 - M1,
}
RIGHT_SUBSTITUTION = {
    "M1": M1 - 0.5 * D2,
    "M2": M1 + 0.5 * D2,
    "D1": 0.5 * D1 + M2,
    "D2": 0.5 * D1 - M2,
}


def _as_field(u) -> Field2D:
    # a pair (f, g) stands for f (x) conj(g)
    return u if isinstance(u, Field2D) else outer(*u)


def intertwine_left(op, u) -> float:
    """``|| op Wig[u] - Wig[op(substituted) u] ||`` for a two-variable ``u``."""
    op = PolyOpSpec.parse(op) if isinstance(op, str) else op
    u = _as_field(u)
    lhs = apply_op(op, wig_transform(u))
    rhs = wig_transform(apply_op(op.substitute(LEFT_SUBSTITUTION), u))
    return (lhs - rhs).norm


def intertwine_right(op, u) -> float:
    """``|| Wig[op u] - op(substituted) Wig[u] ||`` for a two-variable ``u``."""
    op = PolyOpSpec.parse(op) if isinstance(op, str) else op
    u = _as_field(u)
    lhs = wig_transform(apply_op(op, u))
    rhs = apply_op(op.substitute(RIGHT_SUBSTITUTION), wig_transform(u))
    return (lhs - rhs).norm


def oscillator(g: Signal) -> Signal:
    """``(M^2 + D^2) g``."""
    return apply_position(apply_position(g)) + apply_momentum(apply_momentum(g))


def oscillator_transfer_residual(f: Signal, g: Signal) -> float:
    """``|| PHASE_OSCILLATOR W(f, g) - W(f, (M^2 + D^2) g) ||``."""
    lhs = apply_op(PHASE_OSCILLATOR, cross_wigner(f, g))
    rhs = cross_wigner(f, oscillator(g))
    return (lhs - rhs).norm


def eigen_residual(j: int, k: int, grid) -> float:
    """``|| PHASE_OSCILLATOR W(h_j, h_k) - (2k + 1) W(h_j, h_k) ||``."""
    h = hermite_functions(max(j, k) + 1, grid)
    W = cross_wigner(Signal(grid, h[j]), Signal(grid, h[k]))
    return (apply_op(PHASE_OSCILLATOR, W) - (2 * k + 1) * W).norm


def inverse_fourier_field(F: Field2D) -> Field2D:
    """Two-dimensional inverse Fourier transform of a field, on the dual axes."""
    a0, a1 = F.grid.axis0, F.grid.axis1
    v = fourier_transform_array(F.samples, a0, axis=0, inverse=True)
    v = fourier_transform_array(v, a1, axis=1, inverse=True)
    return Field2D(Grid2D(a0.dual(), a1.dual()), v)


def weyl_matrix_element(F: Field2D, phi: Signal, psi: Signal) -> complex:
    """``(2 pi)^(-1/2) int F W(phi, psi)``, with no conjugation on the Wigner factor."""
    W = cross_wigner(phi, psi)
    _check_same_grid2d(F.grid, W.grid)
    return complex(F.grid.cell_area * np.sum(F.samples * W.samples) / SQRT_2PI)


def commutator(a: PolyOpSpec, b: PolyOpSpec) -> PolyOpSpec:
    return a * b - b * a


__all__ = [
    "ALT_OPERATOR",
    "CoeffMatrix",
    "D1",
    "D2",
    "GENERATORS",
    "IDENTITY",
    "PHASE_OSCILLATOR",
    "PHASE_OSCILLATOR_FACTORS",
    "LEFT_SUBSTITUTION",
    "M1",
    "M2",
    "PolyOpSpec",
    "RIGHT_SUBSTITUTION",
    "TWISTED_LAPLACIAN",
    "apply_op",
    "commutator",
    "eigen_residual",
    "energy_moment_spectral",
    "field_coefficients",
    "intertwine_left",
    "intertwine_right",
    "inverse_fourier_field",
    "phase_oscillator_form_spectral",
    "phase_oscillator_form",
    "oscillator_transfer_residual",
    "oscillator",
    "oscillator_energy",
    "quadratic_form",
    "coefficient_oscillator_form",
    "weyl_matrix_element",
    "wigner_coefficients",
]
