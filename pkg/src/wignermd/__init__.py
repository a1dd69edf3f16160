"""Phase-space verification of mean-dispersion lower bounds for orthonormal families."""
from .grid import (
    Grid1D,
    GridMismatchError,
    Signal,
    fourier_transform,
    inner_product,
    inverse_fourier_transform,
)
from .hermite import (
    CoeffVector,
    OrthonormalFamily,
    UnresolvedDegreeError,
    analyze,
    hermite_family,
    hermite_function,
    random_orthonormal_family,
    synthesize,
)
from .wigner import Field2D, QualityWarning, cross_wigner, moyal_product, wig_inverse, wig_transform
from .operators import PHASE_OSCILLATOR, PolyOpSpec, apply_op, quadratic_form
from .moments import covariance, moments
from .harness import RunConfig, covariance_sum, equality_characterization, md_sum

__version__ = "0.1.0"
