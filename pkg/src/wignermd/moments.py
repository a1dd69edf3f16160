"""Means, dispersions and phase-space covariance of Wigner densities."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .grid import Signal, fourier_transform
from .wigner import Field2D, cross_wigner


@dataclass(frozen=True)
class MomentReport:
    mean: float
    freq_mean: float
    variance: float
    freq_variance: float

    @property
    def md_sum(self) -> float:
        """``mu^2 + mu^^2 + Delta^2 + Delta^^2``."""
        return self.mean ** 2 + self.freq_mean ** 2 + self.variance + self.freq_variance

    @property
    def dispersion(self) -> float:
        return float(np.sqrt(self.variance))

    @property
    def freq_dispersion(self) -> float:
        return float(np.sqrt(self.freq_variance))

    def to_dict(self):
        d = asdict(self)
        d["md_sum"] = self.md_sum
        return d


def _mean_variance(s: Signal):
    w = np.abs(s.samples) ** 2
    total = np.sum(w)
    if total == 0:
        raise ValueError("zero signal")
    x = s.grid.nodes
    mu = float(np.sum(x * w) / total)
    var = float(np.sum((x - mu) ** 2 * w) / total)
    return mu, var


def moments(f: Signal) -> MomentReport:
    """Mean and variance of ``|f|^2/||f||^2`` and of ``|f^|^2/||f||^2``."""
    mu, var = _mean_variance(f)
    nu, fvar = _mean_variance(fourier_transform(f))
    return MomentReport(mu, nu, var, fvar)


@dataclass(frozen=True)
class CovarianceReport:
    mean_x: float
    mean_y: float
    cov_xx: float
    cov_xy: float
    cov_yy: float
    var_x: float
    var_y: float
    energy_moment: float

    @property
    def trace(self) -> float:
        return self.cov_xx + self.cov_yy

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.cov_xx, self.cov_xy], [self.cov_xy, self.cov_yy]])

    def to_dict(self):
        d = asdict(self)
        d["trace"] = self.trace
        return d


def covariance(F: Field2D) -> CovarianceReport:
    """Moments of the density ``|F|^2 / ||F||^2`` on the phase plane.

    The marginal variances come from the one-dimensional marginals and the
    covariance entries from the full density, so agreement of the two is a
    consistency check on the quadrature.
    """
    rho = np.abs(F.samples) ** 2
    total = np.sum(rho)
    if total == 0:
        raise ValueError("zero field")
    rho = rho / (total * F.grid.cell_area)
    dx, dy = F.grid.axis0.spacing, F.grid.axis1.spacing
    x, y = F.grid.axis0.nodes, F.grid.axis1.nodes
    rho_x = rho.sum(axis=1) * dy
    rho_y = rho.sum(axis=0) * dx
    mx = float(np.sum(x * rho_x) * dx)
    my = float(np.sum(y * rho_y) * dy)
    var_x = float(np.sum((x - mx) ** 2 * rho_x) * dx)
    var_y = float(np.sum((y - my) ** 2 * rho_y) * dy)
    cx, cy = (x - mx)[:, None], (y - my)[None, :]
    area = F.grid.cell_area
    cxx = float(np.sum(cx * cx * rho) * area)
    cxy = float(np.sum(cx * cy * rho) * area)
    cyy = float(np.sum(cy * cy * rho) * area)
    energy = float(np.sum((x[:, None] ** 2 + y[None, :] ** 2) * rho) * area)
    return CovarianceReport(mx, my, cxx, cxy, cyy, var_x, var_y, energy)


@dataclass(frozen=True)
class EnergyMomentReport:
    energy_moment: float
    predicted: float
    half_md_sum: float

    @property
    def residual(self) -> float:
        return abs(self.energy_moment - self.predicted)

    @property
    def gap(self) -> float:
        """``energy_moment - md_sum/2``; nonnegative, zero exactly for centered signals."""
        return self.energy_moment - self.half_md_sum

    def to_dict(self):
        d = asdict(self)
        d.update(residual=self.residual, gap=self.gap)
        return d


def energy_moment_identity(f: Signal) -> EnergyMomentReport:
    """Compare ``int (x^2 + xi^2) |W(f)|^2`` with ``mu^2 + Delta^2/2 + mu^^2 + Delta^^2/2``."""
    m = moments(f)
    energy = covariance(cross_wigner(f, f)).energy_moment
    predicted = m.mean ** 2 + 0.5 * m.variance + m.freq_mean ** 2 + 0.5 * m.freq_variance
    return EnergyMomentReport(energy, predicted, 0.5 * m.md_sum)
