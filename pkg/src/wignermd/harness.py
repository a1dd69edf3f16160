"""Verification suites for the mean-dispersion inequalities.

Every suite returns a :class:`SuiteResult` made of named cases, each with a
left side, a right side, a margin, the tolerance used and a pass flag. The
same structure is serialized by :mod:`wignermd.reports`.
"""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field

import numpy as np

from .grid import Grid1D, Signal, apply_momentum, apply_position, gaussian, inner_product
from .hermite import (
    CoeffVector,
    hermite_functions,
    OrthonormalFamily,
    analyze,
    hermite_family,
    max_resolved_degree,
    random_orthonormal_family,
    random_unit_vector,
    synthesize,
)
from .moments import covariance
from .operators import (
    ALT_OPERATOR,
    PHASE_OSCILLATOR,
    PHASE_OSCILLATOR_FACTORS,
    D1,
    D2,
    M1,
    M2,
    apply_op,
    eigen_residual,
    energy_moment_spectral,
    intertwine_left,
    intertwine_right,
    phase_oscillator_form_spectral,
    phase_oscillator_form,
    oscillator_energy,
    quadratic_form,
)
from .wigner import check_edge_energy, cross_wigner, outer, wigner_axis

DEFAULT_TOLERANCES = {
    "grid": 1e-6,
    "spectral": 1e-10,
    "bound": 1e-6,
    "equality": 1e-6,
    "hermite_sum": 1e-5,
}
OUTPUT_ENV = "WIGNERMD_OUTPUT_DIR"
SUITES = ("mean-dispersion", "covariance", "identities", "cohen", "riesz")
NORM_TOLERANCE = 1e-8
ZERO_REMAINDER = 1e-13
#: seed offset separating the random first argument from the family draw
RANDOM_F_OFFSET = 100_000


@dataclass
class RunConfig:
    """Validated run parameters, echoed verbatim into every report."""

    N: int = 512
    L: float = 12.0
    K: int = 32
    seed: int = 0
    seeds: int = 50
    n: int = 8
    family: str = "hermite"
    signal: str = "h0"
    kernel: str = "0.5*xi*eta"
    matrix: str = "identity"
    tolerances: dict = field(default_factory=dict)
    output_dir: str = "reports"
    suites: list = field(default_factory=lambda: ["mean-dispersion"])
    heatmap: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in ("N", "K", "seed", "seeds", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ValueError(f"{name} must be an integer, got {value!r}")
        if not isinstance(self.L, (int, float)) or isinstance(self.L, bool):
            raise ValueError(f"L must be a number, got {self.L!r}")
        grid = Grid1D(float(self.L), int(self.N))
        if self.K < 1:
            raise ValueError("K must be positive")
        if self.K - 1 > max_resolved_degree(grid):
            raise ValueError(
                f"unresolved degree: K={self.K} needs degree {self.K - 1} but the grid "
                f"resolves up to {max_resolved_degree(grid)}"
            )
        if self.seed < 0 or self.seeds < 1:
            raise ValueError("seed must be >= 0 and seeds >= 1")
        if not 0 <= self.n < self.K:
            raise ValueError(f"n must lie in [0, K), got {self.n}")
        if self.family not in ("hermite", "random"):
            raise ValueError("family must be 'hermite' or 'random'")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ValueError(f"unknown tolerance key(s) {sorted(unknown)}")
        for k, v in self.tolerances.items():
            if not (isinstance(v, (int, float)) and v > 0):
                raise ValueError(f"tolerance {k} must be positive")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ValueError(f"unknown suite(s) {bad}")

    @property
    def grid(self) -> Grid1D:
        return Grid1D(float(self.L), int(self.N))

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    def resolved_output_dir(self) -> str:
        return os.environ.get(OUTPUT_ENV) or self.output_dir

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config key(s) {sorted(unknown)}")
        return cls(**data)


@dataclass
class Case:
    name: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: bool

    def __post_init__(self):
        for name in ("lhs", "rhs", "margin", "tolerance"):
            setattr(self, name, float(getattr(self, name)))
        self.passed = bool(self.passed)

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "margin": float(self.margin),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
        }


def bound_case(name, lhs, rhs, tol) -> Case:
    """``lhs >= rhs - tol``."""
    margin = lhs - rhs
    return Case(name, lhs, rhs, margin, tol, bool(margin >= -tol))


def equal_case(name, lhs, rhs, tol, relative=False) -> Case:
    """``|lhs - rhs| <= tol`` (times ``|rhs|`` when ``relative``)."""
    margin = lhs - rhs
    limit = tol * max(abs(rhs), 1e-300) if relative else tol
    return Case(name, lhs, rhs, margin, tol, bool(abs(margin) <= limit))


def small_case(name, value, tol) -> Case:
    """``value <= tol`` for a nonnegative residual."""
    return Case(name, value, 0.0, tol - value, tol, bool(value <= tol))


@dataclass
class SuiteResult:
    suite: str
    cases: list
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self):
        return [c for c in self.cases if not c.passed]


# mean-dispersion sums

@dataclass
class MDSumReport:
    n: int
    path: str
    terms: np.ndarray
    partial_sums: np.ndarray
    bounds: np.ndarray
    alpha: np.ndarray
    remainder: float
    weights: np.ndarray
    max_imag: float = 0.0

    @property
    def margins(self) -> np.ndarray:
        return self.partial_sums - self.bounds

    @property
    def min_margin(self) -> float:
        return float(np.min(self.margins))

    @property
    def total(self) -> float:
        return float(self.partial_sums[-1])

    def rows(self):
        """``(k, term, partial_sum, bound, margin)`` per family member."""
        return [
            (k, float(t), float(s), float(b), float(s - b))
            for k, (t, s, b) in enumerate(zip(self.terms, self.partial_sums, self.bounds))
        ]


def hermite_function_signals(K: int, grid: Grid1D):
    return [Signal(grid, row) for row in hermite_functions(K, grid)]


def _as_family(family) -> OrthonormalFamily:
    if isinstance(family, OrthonormalFamily):
        return family
    return OrthonormalFamily(np.asarray(family))


def alpha_diagnostics(family: OrthonormalFamily, n: int):
    """``alpha_l``, the remainder ``R_n`` and the weights ``c_k``.

    ``alpha_l = sum_{k<=n} |<g_k, h_l>|^2``, ``R_n = sum_{l>n} alpha_l`` and
    ``c_k = (1 - alpha_k)/R_n`` (zero when ``R_n`` vanishes), so that
    ``alpha_k + c_k R_n = 1`` for ``k <= n``.
    """
    V = family.matrix[:, : n + 1]
    alpha = np.sum(np.abs(V) ** 2, axis=1)
    remainder = float(np.sum(alpha[n + 1:]))
    if remainder <= ZERO_REMAINDER:
        weights = np.zeros(n + 1)
    else:
        weights = (1.0 - alpha[: n + 1]) / remainder
    return alpha, remainder, weights


def md_sum(f, family_g, n: int, path: str = "spectral", grid: Grid1D | None = None) -> MDSumReport:
    """Partial sums of ``<PHASE_OSCILLATOR W(f, g_k), W(f, g_k)>`` for ``k <= n`` against ``(k+1)^2``.

    ``f`` may be a :class:`Signal` or a :class:`CoeffVector`. The spectral path
    uses ``||f||^2 sum_l |<g_k, h_l>|^2 (2l + 1)``; the grid path builds the
    sampled fields and evaluates the quadratic form on the lattice.
    """
    family = _as_family(family_g)
    if not 0 <= n < family.count:
        raise ValueError(f"n={n} out of range for a family of {family.count}")
    if isinstance(f, Signal):
        norm2 = f.squared_norm
    else:
        f = f if isinstance(f, CoeffVector) else CoeffVector(f)
        norm2 = f.squared_norm
    if abs(np.sqrt(norm2) - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"not normalized (norm {np.sqrt(norm2):.12g})")
    max_imag = 0.0
    if path == "spectral":
        a = analyze(f, family.K) if isinstance(f, Signal) else f
        terms = np.array([phase_oscillator_form_spectral(a, family[k]) for k in range(n + 1)])
    elif path == "grid":
        if grid is None:
            grid = f.grid if isinstance(f, Signal) else Grid1D()
        fs = f if isinstance(f, Signal) else synthesize(f, grid)
        gs = family.signals(grid)[: n + 1]
        check_edge_energy(fs, *gs)
        terms = np.array([phase_oscillator_form(cross_wigner(fs, g)) for g in gs])
    else:
        raise ValueError("path must be 'grid' or 'spectral'")
    alpha, remainder, weights = alpha_diagnostics(family, n)
    k = np.arange(n + 1)
    return MDSumReport(n, path, terms, np.cumsum(terms), (k + 1.0) ** 2, alpha, remainder,
                       weights, max_imag)


class PhaseOscillatorGram:
    """Lattice values of ``<PHASE_OSCILLATOR W(f, h_l), W(f, h_m)>`` for ``l, m < K``.

    ``W(f, g)`` is conjugate-linear in ``g``, so for ``g = sum_l c_l h_l`` the
    grid-path form is ``c^* G c``. This evaluates many partners against one
    fixed ``f`` with ``K`` Wigner fields instead of one per partner.
    """

    def __init__(self, f: Signal, K: int):
        grid = f.grid
        h = hermite_function_signals(K, grid)
        check_edge_energy(f, *h)
        G = np.zeros((K, K), dtype=complex)
        for A in PHASE_OSCILLATOR_FACTORS:
            X = np.stack([apply_op(A, cross_wigner(f, hl)).samples.ravel() for hl in h])
            G += X @ X.conj().T
            del X
        self.matrix = G * wigner_axis(grid).spacing * grid.spacing
        self.K = K

    def form(self, coeffs) -> float:
        c = coeffs.coeffs if isinstance(coeffs, CoeffVector) else np.asarray(coeffs, dtype=complex)
        return float(np.vdot(c, self.matrix @ c).real)

    def terms(self, family, n: int) -> np.ndarray:
        family = _as_family(family)
        return np.array([self.form(family[k]) for k in range(n + 1)])


@dataclass
class EqualityVerdict:
    at_equality: bool
    verdict: str
    phases: list
    partial_sums: list
    coefficient_error: float

    def to_dict(self):
        return {
            "at_equality": self.at_equality,
            "verdict": self.verdict,
            "phases": [[complex(p).real, complex(p).imag] for p in self.phases],
            "partial_sums": [float(s) for s in self.partial_sums],
            "coefficient_error": self.coefficient_error,
        }


def hermite_deviation(family: OrthonormalFamily, n0: int):
    """Largest of ``| |<f_k, h_k>| - 1 |`` and ``|<f_k, h_j>|`` (j != k), k <= n0,
    together with the phases ``<f_k, h_k>``."""
    V = family.matrix[:, : n0 + 1]
    phases = [complex(V[k, k]) for k in range(n0 + 1)]
    off = V.copy()
    off[np.arange(n0 + 1), np.arange(n0 + 1)] = 0
    err = max(
        float(np.max(np.abs(np.abs(np.diag(V)) - 1.0))),
        float(np.max(np.abs(off), initial=0.0)),
    )
    return err, phases


def equality_characterization(family, n0: int, tol: float = 1e-6) -> EqualityVerdict:
    """Decide whether the first ``n0 + 1`` members attain the lower bound for every ``n <= n0``.

    Equality must hold for all partial sums; when it does, the members are
    checked to be Hermite functions up to unimodular phases, which are returned.
    """
    family = _as_family(family)
    if not 0 <= n0 < family.count:
        raise ValueError("n0 out of range")
    terms = [oscillator_energy(family[k]) for k in range(n0 + 1)]
    sums = np.cumsum(terms)
    bounds = (np.arange(n0 + 1) + 1.0) ** 2
    at_eq = bool(np.all(np.abs(sums - bounds) <= tol * bounds))
    err, phases = hermite_deviation(family, n0)
    if not at_eq:
        return EqualityVerdict(False, "not at equality", [], list(sums), err)
    if err > tol:
        return EqualityVerdict(True, "inconsistent", phases, list(sums), err)
    return EqualityVerdict(True, "Hermite up to phase", phases, list(sums), err)


def is_phased_hermite(family, n0: int, tol: float = 1e-6) -> bool:
    return hermite_deviation(_as_family(family), n0)[0] <= tol


@dataclass
class CovarianceSumReport:
    n: int
    path: str
    terms: np.ndarray
    partial_sums: np.ndarray
    bounds: np.ndarray

    @property
    def margins(self):
        return self.partial_sums - self.bounds

    @property
    def min_margin(self) -> float:
        return float(np.min(self.margins))


def covariance_sum(family, n: int, path: str = "spectral", grid: Grid1D | None = None) -> CovarianceSumReport:
    """Partial sums of ``int (x^2 + xi^2) |W(f_k)|^2`` against ``(k+1)^2/2``."""
    family = _as_family(family)
    if not 0 <= n < family.count:
        raise ValueError(f"n={n} out of range for a family of {family.count}")
    if path == "spectral":
        terms = np.array([energy_moment_spectral(family[k]) for k in range(n + 1)])
    elif path == "grid":
        grid = grid or Grid1D()
        sig = family.signals(grid)[: n + 1]
        terms = np.array([covariance(cross_wigner(s, s)).energy_moment for s in sig])
    else:
        raise ValueError("path must be 'grid' or 'spectral'")
    k = np.arange(n + 1)
    return CovarianceSumReport(n, path, terms, np.cumsum(terms), (k + 1.0) ** 2 / 2)


def covariance_equality(family, n0: int, tol: float = 1e-6) -> bool:
    """All covariance partial sums up to ``n0`` sit on the bound."""
    rep = covariance_sum(family, n0)
    return bool(np.all(np.abs(rep.margins) <= tol * rep.bounds))


@dataclass
class AltOperatorReport:
    n: int
    signal_side: np.ndarray
    phase_space: np.ndarray
    bounds: np.ndarray


def alt_operator_suite(family, n: int, grid: Grid1D | None = None) -> AltOperatorReport:
    """Partial sums of ``<(M^2 + D^2) f_k, f_k>`` and of
    ``<((D1^2 + D2^2)/4 + M1^2 + M2^2) W(f_k), W(f_k)>``, both on the grid."""
    family = _as_family(family)
    if not 0 <= n < family.count:
        raise ValueError(f"n={n} out of range for a family of {family.count}")
    grid = grid or Grid1D()
    sig = family.signals(grid)[: n + 1]
    side = []
    phase = []
    for s in sig:
        Ms, Ds = apply_position(s), apply_momentum(s)
        side.append((inner_product(Ms, Ms) + inner_product(Ds, Ds)).real)
        phase.append(quadratic_form(ALT_OPERATOR, cross_wigner(s, s)).real)
    k = np.arange(n + 1)
    return AltOperatorReport(n, np.cumsum(side), np.cumsum(phase), (k + 1.0) ** 2)


# test signals

def named_signal(name: str, grid: Grid1D) -> Signal:
    """``h<k>``, ``mixed``, ``shifted`` (Gaussian at 1) or ``modulated`` (``e^{it} h_0``)."""
    from .hermite import hermite_function

    if name.startswith("h") and name[1:].isdigit():
        return hermite_function(int(name[1:]), grid)
    if name == "mixed":
        h = [hermite_function(k, grid) for k in (0, 3, 5)]
        return (h[0] + 2 * h[1] + 1j * h[2]) / np.sqrt(6)
    if name == "shifted":
        return gaussian(grid, shift=1.0)
    if name == "modulated":
        return gaussian(grid, modulation=1.0)
    raise ValueError(f"unknown signal {name!r}")


IDENTITY_SIGNALS = ("h0", "h3", "mixed", "shifted", "modulated")
INTERTWINE_OPS = {"D1": D1, "D2": D2, "M1": M1, "M2": M2, "M1*D1": M1 * D1,
                  "D2^2": D2 * D2, "M2*D1": M2 * D1}


def _grid_diagnostics(cfg: RunConfig):
    g = cfg.grid
    xi = wigner_axis(g)
    return {
        "signal_grid": {"N": g.size, "L": g.half_width, "spacing": g.spacing},
        "wigner_frequency_axis": {"spacing": xi.spacing, "extent": [xi.nodes[0], -xi.nodes[0]]},
    }


def run_mean_dispersion(cfg: RunConfig) -> SuiteResult:
    """Hermite equality on both paths, or the bound over seeded random families."""
    grid = cfg.grid
    tol_g, tol_b = cfg.tol("grid"), cfg.tol("bound")
    cases = []
    if cfg.family == "hermite":
        fam = hermite_family(cfg.K)
        f = CoeffVector.basis(0, cfg.K)
        spec = md_sum(f, fam, cfg.n, "spectral")
        gridrep = md_sum(f, fam, cfg.n, "grid", grid)
        for k in range(cfg.n + 1):
            cases.append(equal_case(f"hermite spectral n={k}", spec.partial_sums[k],
                                    (k + 1) ** 2, cfg.tol("spectral"), relative=True))
            cases.append(equal_case(f"hermite grid n={k}", gridrep.partial_sums[k],
                                    (k + 1) ** 2, cfg.tol("hermite_sum"), relative=True))
        diag = {"alpha_sum": float(np.sum(spec.alpha)), "remainder": spec.remainder}
    else:
        diag = {}
        for s in range(cfg.seed, cfg.seed + cfg.seeds):
            fam = random_orthonormal_family(cfg.K, cfg.n + 1, s)
            choices = {"h0": CoeffVector.basis(0, cfg.K),
                       "random f": random_unit_vector(cfg.K, s + RANDOM_F_OFFSET)}
            for label, f in choices.items():
                spec = md_sum(f, fam, cfg.n, "spectral")
                for k in range(cfg.n + 1):
                    cases.append(bound_case(f"seed={s} {label} sum n={k}", spec.partial_sums[k],
                                            spec.bounds[k], tol_b))
            cases.append(equal_case(f"seed={s} alpha sum", float(np.sum(spec.alpha)), cfg.n + 1,
                                    cfg.tol("spectral")))
        diag["families"] = cfg.seeds
    diag.update(_grid_diagnostics(cfg))
    return SuiteResult("mean-dispersion", cases, diag)


def run_covariance(cfg: RunConfig) -> SuiteResult:
    grid = cfg.grid
    cases = []
    fam = hermite_family(cfg.K)
    rep = covariance_sum(fam, cfg.n, "grid", grid)
    for k in range(cfg.n + 1):
        cases.append(equal_case(f"hermite n={k}", rep.partial_sums[k], (k + 1) ** 2 / 2,
                                cfg.tol("hermite_sum"), relative=True))
    eq_h = covariance_equality(fam, cfg.n)
    cases.append(Case("hermite equality verdict", float(eq_h), 1.0, float(eq_h) - 1.0, 0.0, eq_h))
    for s in range(cfg.seed, cfg.seed + cfg.seeds):
        fam = random_orthonormal_family(cfg.K, cfg.n + 1, s)
        r = covariance_sum(fam, cfg.n)
        cases.append(bound_case(f"seed={s} n={cfg.n}", r.partial_sums[-1], r.bounds[-1], cfg.tol("bound")))
        ok = covariance_equality(fam, cfg.n) == is_phased_hermite(fam, cfg.n)
        cases.append(Case(f"seed={s} verdict", float(ok), 1.0, float(ok) - 1.0, 0.0, ok))
    return SuiteResult("covariance", cases, _grid_diagnostics(cfg))


def run_identities(cfg: RunConfig) -> SuiteResult:
    from .identities import bracket_identity_report

    grid = cfg.grid
    tol = cfg.tol("grid")
    cases = []
    names = IDENTITY_SIGNALS if cfg.signal == "all" else (cfg.signal,)
    for name in names:
        f = named_signal(name, grid)
        for chk in bracket_identity_report(f):
            cases.append(small_case(f"{name} ({chk.item}) {chk.bracket}", chk.residual, tol))
    h = [named_signal(f"h{k}", grid) for k in range(3)]
    for label, (f, g) in {"h0(x)h0": (h[0], h[0]), "h1(x)h2": (h[1], h[2])}.items():
        u = outer(f, g)
        for opname, op in INTERTWINE_OPS.items():
            cases.append(small_case(f"left {opname} on {label}", intertwine_left(op, u), tol))
            cases.append(small_case(f"right {opname} on {label}", intertwine_right(op, u), tol))
    for j in range(6):
        for k in range(6):
            cases.append(small_case(f"eigen j={j} k={k}", eigen_residual(j, k, grid), tol * (2 * k + 1)))
    return SuiteResult("identities", cases, _grid_diagnostics(cfg))


def run_cohen(cfg: RunConfig, n: int | None = None, base_grid: Grid1D | None = None) -> SuiteResult:
    from .cohen import (
        as_kernel,
        cohen_intertwine_check,
        cohen_md_sum,
        cohen_padding,
        cohen_transform,
        isometry_error,
    )
    from .hermite import hermite_function

    P = as_kernel(cfg.kernel)
    grid = base_grid or Grid1D(cfg.L, min(cfg.N, 256))
    n = min(cfg.n, 4) if n is None else n
    tol = cfg.tol("grid")
    h = [hermite_function(k, grid) for k in range(max(n + 1, 3))]
    fields = [cross_wigner(h[0], h[k]) for k in range(n + 1)]
    pad = cohen_padding(P, *fields, cross_wigner(h[1], h[2]))
    cases = []
    fam = hermite_family(cfg.K)
    rep = cohen_md_sum(fam, fam, P, n, path="grid", grid=grid, pad=pad)
    for k in range(n + 1):
        cases.append(equal_case(f"hermite oscillator sum n={k}", rep.partial_sums[k], (k + 1) ** 2,
                                cfg.tol("hermite_sum"), relative=True))
    star = cohen_md_sum(fam, fam, P, n, variant="moment", path="grid", grid=grid, pad=pad)
    for k in range(n + 1):
        cases.append(equal_case(f"hermite moment sum n={k}", star.partial_sums[k], (k + 1) ** 2 / 2,
                                cfg.tol("hermite_sum"), relative=True))
    pairs = [(h[0], h[0]), (h[1], h[2]), (h[2], h[1])]
    for a in pairs:
        for b in pairs:
            cases.append(small_case(f"isometry {_pair_name(a, h)} vs {_pair_name(b, h)}",
                                    isometry_error(a, b, P, pad), 1e-7))
    for bname in ("I", "M1", "D2", "M1*D1", "D2^2", "M2*D1"):
        for w in ((h[0], h[0]), (h[1], h[0])):
            r1, r2 = cohen_intertwine_check(bname, P, w)
            cases.append(small_case(f"transport (i) B={bname} w={_pair_name(w, h)}", r1, tol))
            cases.append(small_case(f"transport (ii) B={bname} w={_pair_name(w, h)}", r2, tol))
    if P.is_zero():
        W, Q = cross_wigner(h[1], h[2]), cohen_transform(h[1], h[2], P)
        cases.append(small_case("zero kernel reproduces W", float(np.max(np.abs(W.samples - Q.samples))), 1e-12))
    for s in range(cfg.seed, cfg.seed + cfg.seeds):
        fg = random_orthonormal_family(cfg.K, n + 1, s)
        ff = random_orthonormal_family(cfg.K, 1, s + RANDOM_F_OFFSET)
        r = cohen_md_sum(ff, fg, P, n, path="spectral")
        cases.append(bound_case(f"seed={s} oscillator sum n={n}", r.partial_sums[-1], r.bounds[-1], cfg.tol("bound")))
    diag = _grid_diagnostics(cfg)
    diag["cohen"] = {
        "kernel": P.to_text(),
        "base_grid": {"N": grid.size, "L": grid.half_width},
        "padding": list(pad),
        "canvas_frequency_extent": float(wigner_axis(grid).half_width * pad[1]),
    }
    return SuiteResult("cohen", cases, diag)


def _pair_name(pair, h):
    def idx(s):
        for k, hk in enumerate(h):
            if s is hk:
                return f"h{k}"
        return "f"
    return f"{idx(pair[0])},{idx(pair[1])}"


def run_riesz(cfg: RunConfig, sources=None) -> SuiteResult:
    from .riesz import OperatorMatrix, bessel_sum, norm_sandwich, riesz_bound, riesz_md_bound

    tol = cfg.tol("bound")
    cases = []
    sources = sources or [cfg.matrix]
    diag = {"truncation": cfg.K, "matrices": {}}
    for src in sources:
        V = OperatorMatrix.from_source(src, cfg.K)
        conv, change = V.norms_converged()
        diag["matrices"][src] = {
            "norm": V.norm,
            "inverse_norm": V.inverse_norm,
            "norms_converged": conv,
            "norm_change_vs_half_truncation": change,
            "truncated_estimates": True,
        }
        lo, cmin, cmax, hi = norm_sandwich(V)
        cases.append(bound_case(f"{src} min |u_k|^2 >= 1/|U|^2", cmin, lo, 1e-10))
        cases.append(bound_case(f"{src} max |u_k|^2 <= |U^-1|^2", hi, cmax, 1e-10))
        v = random_unit_vector(cfg.K, cfg.seed)
        cases.append(bound_case(f"{src} Bessel bound", hi, bessel_sum(V, v), 1e-10))
        for n in range(cfg.n + 1):
            r = riesz_bound(V, V, n)
            cases.append(bound_case(f"{src} pair bound n={n}", r.lhs, r.rhs, tol))
            c = riesz_md_bound(V, n)
            cases.append(bound_case(f"{src} md bound n={n}", c.lhs, c.rhs, tol))
    return SuiteResult("riesz", cases, diag)


RUNNERS = {
    "mean-dispersion": run_mean_dispersion,
    "covariance": run_covariance,
    "identities": run_identities,
    "cohen": run_cohen,
    "riesz": run_riesz,
}

__all__ = [
    "AltOperatorReport",
    "Case",
    "CovarianceSumReport",
    "EqualityVerdict",
    "PHASE_OSCILLATOR",
    "PhaseOscillatorGram",
    "MDSumReport",
    "RUNNERS",
    "RunConfig",
    "SuiteResult",
    "alpha_diagnostics",
    "alt_operator_suite",
    "covariance_equality",
    "covariance_sum",
    "equality_characterization",
    "is_phased_hermite",
    "md_sum",
    "named_signal",
]
