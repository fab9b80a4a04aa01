"""Products of parabolic cylinder functions at opposite arguments.

``P(z, x) = Gamma(z) D_{-z}(x) D_{-z}(-x)`` and the square of the decaying
solution ``Q(z, x) = Gamma(z) D_{-z}(|x|)^2`` through integral and series
representations, a reference D_nu(x), and the 2x2 Landau-type Green-function
entry whose two evaluations tie the representations together.
"""

from .config import Config, PCFConfig, QuadratureSpec, SeriesSpec, load_config
from .errors import ConvergenceError, DomainError, PCFError, PoleError, RegimeError, ToleranceNotMet
from .integrals import (
    appendix_pair,
    combination_integrals,
    fourier_pair,
    hankel_check_eq5,
    hermite_square_integral,
    product_via_finite_integral,
    product_via_tanh_integral,
    square_via_coth_integral,
    square_via_shifted_integral,
    unified_integral,
)
from .landau import LandauParams, build_G0, eigen_system, j11_closed, j11_ratio, j11_series
from .quadrature import EvalResult
from .series import SeriesResult, product_via_hermite_series, square_via_alternating_series
from .specfun import HalfPlaneParameter, erfc, gamma, hermite_HG, hermite_psi, kummer_phi, pcf_D

__version__ = "0.1.0"
