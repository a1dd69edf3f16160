"""Bracket identities linking Wigner quadratic forms to signal moments."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Signal, apply_momentum, apply_position, inner_product
from .moments import moments
from .operators import D1, D2, M1, M2, quadratic_form
from .wigner import cross_wigner

NORM_TOLERANCE = 1e-8


@dataclass(frozen=True)
class IdentityCheck:
    item: str
    bracket: str
    lhs: complex
    rhs: complex

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_dict(self):
        return {
            "item": self.item,
            "bracket": self.bracket,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "residual": self.residual,
        }


def bracket_identity_report(f: Signal):
    """All fourteen bracket identities for a unit-norm signal.

    Returns a list of :class:`IdentityCheck`, one per bracket, covering the
    signal-side second moments, the first and second phase-space moments of
    ``W(f)`` and the four mixed position-momentum words.
    """
    if abs(f.norm - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"not normalized (norm {f.norm:.12g})")
    m = moments(f)
    W = cross_wigner(f, f)
    Mf, Df = apply_position(f), apply_momentum(f)

    def q(op):
        return quadratic_form(op, W)

    rows = [
        ("a", "<M^2 f, f>", inner_product(apply_position(Mf), f), m.mean ** 2 + m.variance),
        ("b", "<D^2 f, f>", inner_product(apply_momentum(Df), f), m.freq_mean ** 2 + m.freq_variance),
        ("c", "<M1 W, W>", q(M1), m.mean),
        ("d", "<M2 W, W>", q(M2), m.freq_mean),
        ("e", "<D1 W, W>", q(D1), 0.0),
        ("f", "<D2 W, W>", q(D2), 0.0),
        ("g", "<D1^2 W, W>", q(D1 * D1), 2 * m.freq_variance),
        ("h", "<D2^2 W, W>", q(D2 * D2), 2 * m.variance),
        ("i", "<M1 D1 W, W>", q(M1 * D1), 0.5j),
        ("i", "<D1 M1 W, W>", q(D1 * M1), -0.5j),
        ("j", "<M2 D2 W, W>", q(M2 * D2), 0.5j),
        ("j", "<D2 M2 W, W>", q(D2 * M2), -0.5j),
        ("k", "<M1^2 W, W>", q(M1 * M1), m.mean ** 2 + 0.5 * m.variance),
        ("l", "<M2^2 W, W>", q(M2 * M2), m.freq_mean ** 2 + 0.5 * m.freq_variance),
    ]
    return [IdentityCheck(item, br, complex(lhs), complex(rhs)) for item, br, lhs, rhs in rows]


def max_residual(checks) -> float:
    return float(np.max([c.residual for c in checks]))
