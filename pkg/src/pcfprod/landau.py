"""Landau-type 2x2 operator: eigen-system, Green-function entry J11 and checks.

Conventions
-----------
Two normalisations of the complex parameter are in use and both are fixed
here:

* ``M(x) = [[i w, x + i D], [-x + i D, -i w]]`` and the operator
  ``H(x) = [[i d/dx, -(x + i D)], [-(x - i D), -i d/dx]]`` use the raw
  (omega, delta).
* Everything built from Weber functions in y = x sqrt 2 (G0, the closed
  form, the spectral series) uses ``lam = (omega + i delta) / sqrt 2`` and
  ``z = |lam|^2 = (omega^2 + delta^2) / 2``.

J11 has three independent evaluations:

* closed form  (1/i) sqrt(pi/2) [lam P(z+1, x sqrt2) + conj(lam) P(z, x sqrt2)]
* series       (1/i) (pi/sqrt2) sum psi_n(x)^2 [lam/(z+n+1) + conj(lam)/(z+n)]
* ratio        i pi (G11 G22 + G12 G21) / (G11 G22 - G12 G21)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import QuadratureSpec, SeriesSpec
from .errors import DomainError, PCFError
from .integrals import DEFAULT_SPEC, product_via_tanh_integral
from .series import DEFAULT_SERIES, SeriesResult, hermite_pole_sum
from .specfun import SQRT_PI, hermite_psi_batch, pcfd_array

SQRT2 = math.sqrt(2.0)
U = np.array([[1, 1], [1j, -1j]]) / SQRT2
U_INV = np.array([[1, -1j], [1, 1j]]) / SQRT2


@dataclass(frozen=True)
class LandauParams:
    omega: float
    delta: float

    def __post_init__(self):
        if not self.lambda_sq > 0:
            raise DomainError("omega and delta must not both vanish")

    @property
    def lam(self):
        """Rescaled parameter (omega + i delta)/sqrt 2."""
        return complex(self.omega, self.delta) / SQRT2

    @property
    def lam_raw(self):
        return complex(self.omega, self.delta)

    @property
    def lambda_sq(self):
        return (self.omega**2 + self.delta**2) / 2


def m_matrix(params: LandauParams, x):
    w, d = params.omega, params.delta
    return np.array([[1j * w, x + 1j * d], [-x + 1j * d, -1j * w]])


# ---------------------------------------------------------------------------
# Eigen-system of H_em = [[delta, i a^-], [-i a^+, -delta]],  a^+- = x -+ d/dx
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenPair:
    n: int
    s: str  # "+", "-" or "ground"
    energy: float
    grid: np.ndarray = field(repr=False)
    spinor: np.ndarray = field(repr=False)  # shape (2, len(grid))

    def inner(self, other):
        h = self.grid[1] - self.grid[0]
        return complex(np.sum(np.conj(self.spinor) * other.spinor) * h)


def _check_grid(grid, min_extent=None, max_step=None):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise DomainError("grid must be a 1-d array with at least 3 points")
    steps = np.diff(grid)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
        raise DomainError("grid must be uniform")
    if max_step is not None and steps[0] > max_step * (1 + 1e-12):
        raise DomainError(f"grid spacing must be <= {max_step}")
    if min_extent is not None and (grid[0] > -min_extent or grid[-1] < min_extent):
        raise DomainError(f"grid must cover [-{min_extent:.3g}, {min_extent:.3g}]")
    return grid


def eigen_system(params: LandauParams, n_max, grid):
    """Ground state and the pairs n = 1..n_max, s = +-, sampled on ``grid``.

    The grid must reach past the outermost classical turning point by 4.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    d = params.delta
    grid = _check_grid(grid, min_extent=math.sqrt(2 * n_max + d * d) + 4)
    psi = hermite_psi_batch(n_max, grid)
    zero = np.zeros_like(grid)
    pairs = [EigenPair(0, "ground", -d, grid, np.array([zero, psi[0]], dtype=complex))]
    for n in range(1, n_max + 1):
        e = math.sqrt(d * d + 2 * n)
        for s, sg in (("+", 1.0), ("-", -1.0)):
            spinor = np.array([
                math.sqrt(e + sg * d) * psi[n - 1],
                -1j * sg * math.sqrt(e - sg * d) * psi[n],
            ]) / math.sqrt(2 * e)
            pairs.append(EigenPair(n, s, sg * e, grid, spinor))
    return pairs


def _ddx(f, h):
    return (f[..., 2:] - f[..., :-2]) / (2 * h)


def apply_h_em(params: LandauParams, grid, spinor):
    """H_em applied with centred differences; returns values on grid[1:-1]."""
    h = grid[1] - grid[0]
    x = grid[1:-1]
    up, dn = spinor[0], spinor[1]
    a_minus_dn = x * dn[1:-1] + _ddx(dn, h)
    a_plus_up = x * up[1:-1] - _ddx(up, h)
    d = params.delta
    return np.array([d * up[1:-1] + 1j * a_minus_dn, -1j * a_plus_up - d * dn[1:-1]])


def apply_h(params: LandauParams, grid, spinor):
    """The original operator H(x) with centred differences, on grid[1:-1]."""
    h = grid[1] - grid[0]
    x = grid[1:-1]
    d = params.delta
    up, dn = spinor[0], spinor[1]
    return np.array([
        1j * _ddx(up, h) - (x + 1j * d) * dn[1:-1],
        -(x - 1j * d) * up[1:-1] - 1j * _ddx(dn, h),
    ])


def eigen_residual(pair: EigenPair, params: LandauParams, grid=None):
    """max |H_em Psi - E Psi| with centred differences (O(h^2))."""
    grid = pair.grid if grid is None else grid
    grid = _check_grid(grid, max_step=0.01)
    if grid is not pair.grid and not np.array_equal(grid, pair.grid):
        raise DomainError("grid must be the one the pair was sampled on")
    r = apply_h_em(params, grid, pair.spinor) - pair.energy * pair.spinor[:, 1:-1]
    return float(np.max(np.abs(r)))


def conjugation_residual(params: LandauParams, grid, spinor, h_em_exact):
    """max |u^{-1} H (u phi) - H_em phi| where ``h_em_exact`` is H_em phi
    computed analytically on grid[1:-1]."""
    grid = _check_grid(grid)
    lifted = U @ spinor
    back = U_INV @ apply_h(params, grid, lifted)
    return float(np.max(np.abs(back - h_em_exact)))


# ---------------------------------------------------------------------------
# J11
# ---------------------------------------------------------------------------


def j11_closed(params: LandauParams, x, spec: QuadratureSpec = DEFAULT_SPEC, product=None):
    """Closed form through two P-values at y = x sqrt 2.

    ``product(z, X)`` may replace the default tanh-integral evaluation of P
    and must return an object with a ``.value``.
    """
    product = product or (lambda z, X: product_via_tanh_integral(z, X, spec))
    lam, z = params.lam, params.lambda_sq
    y = float(x) * SQRT2
    bracket = lam * product(z + 1, y).value + lam.conjugate() * product(z, y).value
    return -1j * math.sqrt(math.pi / 2) * bracket


def j11_series(params: LandauParams, x, spec: SeriesSpec = DEFAULT_SERIES) -> SeriesResult:
    """Spectral sum over psi_n(x)^2 with both pole families summed together."""
    lam, z = params.lam, params.lambda_sq
    raw = hermite_pole_sum(float(x), [(lam, z + 1), (lam.conjugate(), z)], spec)
    scale = math.pi / SQRT2 / SQRT_PI
    return SeriesResult(-1j * scale * raw.value, raw.terms_used, float(scale * raw.tail_estimate),
                        raw.accelerated, raw.converged)


def _g0_many(params: LandauParams, xs):
    lam, z = params.lam, params.lambda_sq
    y = np.asarray(xs, dtype=float) * SQRT2
    ys = np.concatenate([y, -y])
    up = pcfd_array(-z - 1, ys)
    um = pcfd_array(-z, ys)
    m = y.size
    h1, f1 = up[:m], -um[:m] / lam
    h2, f2 = 1j * up[m:], 1j * um[m:] / lam
    g = np.empty((m, 2, 2), dtype=complex)
    g[:, 0, 0] = h1 + f1
    g[:, 0, 1] = -1j * (h1 - f1)
    g[:, 1, 0] = h2 + f2
    g[:, 1, 1] = -1j * (h2 - f2)
    return g


def build_G0(params: LandauParams, x):
    """G0(x) = sqrt2 [[h1, f1], [h2, f2]] u^{-1} from Weber functions at y = x sqrt2.

    h1 = U+(y), f1 = -U-(y)/lam, h2 = i U+(-y), f2 = i U-(-y)/lam with
    U+ = D_{-z-1}, U- = D_{-z}.  Solves i G0' = G0 M(x).
    """
    if params.lam == 0:
        raise DomainError("lambda must be non-zero")
    return _g0_many(params, [float(x)])[0]


def j11_ratio(params: LandauParams, x):
    g = build_G0(params, x)
    a = g[0, 0] * g[1, 1]
    b = g[0, 1] * g[1, 0]
    den = a - b
    if abs(den) <= 1e-12 * max(abs(a), abs(b)):
        raise PCFError("G0 determinant is numerically zero")
    return 1j * math.pi * (a + b) / den


def g0_ode_residual(params: LandauParams, x, h=1e-3):
    """max |i dG0/dx - G0 M(x)| / max |G0| with a centred difference of step h.

    G0 grows like e^{x^2/2} on one side, so the residual is measured
    relative to the size of G0 itself.
    """
    x = float(x)
    g = _g0_many(params, [x - h, x, x + h])
    deriv = (g[2] - g[0]) / (2 * h)
    res = np.max(np.abs(1j * deriv - g[1] @ m_matrix(params, x)))
    return float(res / np.max(np.abs(g[1])))
