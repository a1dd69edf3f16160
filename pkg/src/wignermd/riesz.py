"""Riesz families given as invertible images of the Hermite basis.

A family is described by a ``K x K`` matrix ``V`` whose column ``k`` holds the
Hermite coefficients of ``u_k``. The operator sending ``u_k`` to ``h_k`` then
has norm ``1/sigma_min(V)`` and its inverse has norm ``sigma_max(V)``; on a
finite truncation these are estimates of the true operator norms.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .hermite import CoeffVector

SINGULAR_TOLERANCE = 1e-12
FLOOR_GUARD = 1e-12
CONVERGENCE_CHANGE = 0.01


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Hermite-coordinate matrix of the map ``h_k -> u_k``."""

    matrix: np.ndarray = field(repr=False)
    label: str = "custom"

    def __post_init__(self):
        v = np.array(self.matrix, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("operator matrix must be square")
        s = np.linalg.svd(v, compute_uv=False)
        if s[-1] <= SINGULAR_TOLERANCE * max(s[0], 1.0):
            raise ValueError("not a Riesz family (singular matrix)")
        v.setflags(write=False)
        object.__setattr__(self, "matrix", v)
        object.__setattr__(self, "_singular", s)

    @property
    def K(self) -> int:
        return self.matrix.shape[0]

    @property
    def sigma_max(self) -> float:
        return float(self._singular[0])

    @property
    def sigma_min(self) -> float:
        return float(self._singular[-1])

    @property
    def inverse_norm(self) -> float:
        """Norm of ``h_k -> u_k``."""
        return self.sigma_max

    @property
    def norm(self) -> float:
        """Norm of ``u_k -> h_k``."""
        return 1.0 / self.sigma_min

    @property
    def condition_squared(self) -> float:
        return (self.sigma_max / self.sigma_min) ** 2

    def truncated(self, K: int) -> "OperatorMatrix":
        return OperatorMatrix(self.matrix[:K, :K], label=f"{self.label}[:{K}]")

    def norms_converged(self):
        """Relative change of both norm estimates between ``K`` and ``K/2``."""
        if self.K < 2:
            return True, 0.0
        half = self.truncated(self.K // 2)
        change = max(
            abs(self.inverse_norm - half.inverse_norm) / self.inverse_norm,
            abs(self.norm - half.norm) / self.norm,
        )
        return change <= CONVERGENCE_CHANGE, float(change)

    # generators
    @classmethod
    def identity(cls, K: int) -> "OperatorMatrix":
        return cls(np.eye(K), label="identity")

    @classmethod
    def diagonal(cls, values, K: int) -> "OperatorMatrix":
        vals = np.resize(np.asarray(values, dtype=complex), K)
        text = ",".join(f"{v.real:g}" if v.imag == 0 else f"{v}" for v in np.asarray(values, complex))
        return cls(np.diag(vals), label=f"diag:{text}")

    @classmethod
    def shift(cls, K: int, weight: float = 0.1) -> "OperatorMatrix":
        """``I + weight * S`` with ``S`` the upper shift (ones on the superdiagonal)."""
        return cls(np.eye(K) + weight * np.eye(K, k=1), label=f"shift:{weight:g}")

    @classmethod
    def random(cls, K: int, cond: float = 2.0, seed: int = 0) -> "OperatorMatrix":
        """``Q1 diag(s) Q2^*`` with Haar unitaries and ``s`` log-spaced at random in
        ``[cond^-1/2, cond^1/2]``; both endpoints occur, so the condition number is
        exactly ``cond``."""
        if cond < 1:
            raise ValueError("condition number must be at least 1")
        rng = np.random.default_rng(seed)

        def haar():
            z = rng.standard_normal((K, K)) + 1j * rng.standard_normal((K, K))
            q, r = np.linalg.qr(z)
            d = np.diag(r)
            return q * (d / np.abs(d))

        q1, q2 = haar(), haar()
        t = rng.uniform(0.0, 1.0, K)
        if K > 1:
            t[0], t[1] = 0.0, 1.0
        s = cond ** (t - 0.5)
        return cls(q1 @ np.diag(s) @ q2.conj().T, label=f"random:cond={cond:g},seed={seed}")

    @classmethod
    def from_csv(cls, path, K: int | None = None) -> "OperatorMatrix":
        """Rows of ``re, im`` pairs, one matrix row per line (row-major)."""
        rows = []
        with open(path, newline="") as fh:
            for rec in csv.reader(fh):
                rec = [r.strip() for r in rec if r.strip()]
                if not rec or rec[0].startswith("#"):
                    continue
                vals = [float(r) for r in rec]
                if len(vals) % 2:
                    raise ValueError("each CSV row needs (re, im) pairs")
                rows.append(np.array(vals[0::2]) + 1j * np.array(vals[1::2]))
        m = np.array(rows)
        if K is not None and m.shape[0] != K:
            raise ValueError(f"CSV matrix has size {m.shape[0]}, expected {K}")
        return cls(m, label=f"csv:{os.path.basename(str(path))}")

    @classmethod
    def from_source(cls, source: str, K: int) -> "OperatorMatrix":
        """Build from ``identity``, ``diag:a,b,..``, ``shift[:w]``,
        ``random:cond=c,seed=s`` or a CSV file path."""
        text = source.strip()
        if text == "identity":
            return cls.identity(K)
        if text.startswith("diag:"):
            return cls.diagonal([complex(v) for v in text[5:].split(",") if v.strip()], K)
        if text == "shift" or text.startswith("shift:"):
            w = float(text.split(":", 1)[1]) if ":" in text else 0.1
            return cls.shift(K, w)
        if text.startswith("random"):
            params = {"cond": "2", "seed": "0"}
            if ":" in text:
                for item in text.split(":", 1)[1].split(","):
                    if item.strip():
                        key, _, value = item.partition("=")
                        params[key.strip()] = value.strip()
            unknown = set(params) - {"cond", "seed"}
            if unknown:
                raise ValueError(f"unknown random-matrix parameter(s) {sorted(unknown)}")
            return cls.random(K, float(params["cond"]), int(params["seed"]))
        if os.path.exists(text):
            return cls.from_csv(text, K)
        raise ValueError(f"unrecognized matrix source {source!r}")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for row in self.matrix:
                w.writerow([repr(float(x)) for z in row for x in (z.real, z.imag)])


def riesz_family(V: OperatorMatrix):
    """The family ``u_k`` as coefficient vectors (the columns of ``V``)."""
    return [CoeffVector(V.matrix[:, k]) for k in range(V.K)]


def integer_part(x: float) -> int:
    """``floor`` with a small relative guard so exact integers survive rounding."""
    return int(math.floor(x + FLOOR_GUARD * max(1.0, abs(x))))


def _column_energies(V: np.ndarray) -> np.ndarray:
    """``sum_l |V[l, k]|^2 (2l + 1)`` for every column ``k``."""
    weights = 2 * np.arange(V.shape[0]) + 1
    return (np.abs(V) ** 2 * weights[:, None]).sum(axis=0)


@dataclass(frozen=True)
class RieszBoundReport:
    n: int
    lhs: float
    rhs: float
    m: int
    K: int
    sigma_max_u: float
    sigma_min_u: float
    sigma_max_v: float
    sigma_min_v: float
    norms_converged: bool
    index: int = 0

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def to_dict(self):
        return {
            "n": self.n,
            "index": self.index,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "m": self.m,
            "K": self.K,
            "truncated_estimates": {
                "sigma_max_u": self.sigma_max_u,
                "sigma_min_u": self.sigma_min_u,
                "sigma_max_v": self.sigma_max_v,
                "sigma_min_v": self.sigma_min_v,
            },
            "norms_converged": self.norms_converged,
        }


def _check_n(n, K):
    if not 0 <= n < K:
        raise ValueError(f"n={n} out of range for truncation {K}")


def riesz_bound(V_u: OperatorMatrix, V_v: OperatorMatrix, n: int, index: int = 0) -> RieszBoundReport:
    """Sum of ``<PHASE_OSCILLATOR W(u_i, v_k), W(u_i, v_k)>`` over ``k <= n`` against the
    operator-norm bound.

    The sum is evaluated exactly in Hermite coordinates as
    ``||u_i||^2 sum_l alpha_l (2l + 1)`` with ``alpha_l = sum_{k<=n} |<v_k, h_l>|^2``.
    The bound is ``(B / ||U1||^2) [ (n+1) / (B ||U2||^2) ]^2`` with
    ``B = ||U2^-1||^2``.
    """
    if V_u.K != V_v.K:
        raise ValueError("both families need the same truncation")
    _check_n(n, V_v.K)
    if not 0 <= index < V_u.K:
        raise ValueError("index out of range")
    u = V_u.matrix[:, index]
    alpha = np.sum(np.abs(V_v.matrix[:, : n + 1]) ** 2, axis=1)
    lhs = float(np.vdot(u, u).real * np.sum(alpha * (2 * np.arange(V_v.K) + 1)))
    B = V_v.inverse_norm ** 2
    ratio = (n + 1) / (B * V_v.norm ** 2)
    floor = integer_part(ratio)
    rhs = B / V_u.norm ** 2 * floor ** 2
    conv = V_u.norms_converged()[0] and V_v.norms_converged()[0]
    return RieszBoundReport(n, lhs, float(rhs), floor - 1, V_u.K, V_u.sigma_max, V_u.sigma_min,
                            V_v.sigma_max, V_v.sigma_min, conv, index)


def riesz_md_bound(V: OperatorMatrix, n: int) -> RieszBoundReport:
    """Sum over ``k <= n`` of the mean-dispersion sum of ``u_k`` against
    ``(1/kappa) [ (n+1)/kappa ]^2`` with ``kappa = ||U^-1||^2 ||U||^2``.

    Each term is ``<PHASE_OSCILLATOR W(u_k), W(u_k)> / ||u_k||^4``, evaluated in Hermite
    coordinates.
    """
    _check_n(n, V.K)
    cols = V.matrix[:, : n + 1]
    norms2 = np.sum(np.abs(cols) ** 2, axis=0)
    lhs = float(np.sum(_column_energies(cols) / norms2))
    kappa = (V.inverse_norm * V.norm) ** 2
    floor = integer_part((n + 1) / kappa)
    rhs = floor ** 2 / kappa
    conv = V.norms_converged()[0]
    return RieszBoundReport(n, lhs, float(rhs), floor - 1, V.K, V.sigma_max, V.sigma_min,
                            V.sigma_max, V.sigma_min, conv, 0)


def norm_sandwich(V: OperatorMatrix):
    """``(1/||U||^2, min ||u_k||^2, max ||u_k||^2, ||U^-1||^2)``."""
    norms2 = np.sum(np.abs(V.matrix) ** 2, axis=0)
    return 1.0 / V.norm ** 2, float(norms2.min()), float(norms2.max()), V.inverse_norm ** 2


def bessel_sum(V: OperatorMatrix, v) -> float:
    """``sum_k |<v, u_k>|^2`` for a coefficient vector ``v``."""
    v = v.coeffs if isinstance(v, CoeffVector) else np.asarray(v, dtype=complex)
    return float(np.sum(np.abs(V.matrix.conj().T @ v) ** 2))
