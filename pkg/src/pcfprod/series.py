"""Hermite-function series for the parabolic-cylinder products.

``X`` is always the D-function argument; the Hermite functions are taken
at ``xi = X / sqrt(2)``.  With ``a_n = sqrt(pi) psi_n(xi)^2``:

* ``P(z, X) = sum_n a_n / (n + z)``
* ``Q(z, X) = sum_n (-1)^n a_n / (n + z)``

The raw terms decay like n^{-3/2}, so partial sums converge like N^{-1/2}.
Both sums are corrected with the large-n form

    psi_n(xi)^2 ~ (1/pi) (E - xi^2)^{-1/2} [1 + (-1)^n cos Phi(E)],
    E = 2n + 1,  Phi(E) = xi sqrt(E - xi^2) + E arcsin(xi / sqrt E),

whose smooth part has a closed-form tail and whose (-1)^n part is removed
by averaging neighbouring partial sums.  For the alternating sum the
product (-1)^n (-1)^n cos Phi leaves a slow, non-alternating oscillation
whose tail is integrated between the zeros of cos Phi.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .accel import iterated_average, richardson_half_powers
from .config import SeriesSpec
from .quadrature import between_zeros
from .specfun import EPS, SQRT_PI, as_half_plane, hermite_psi_batch

DEFAULT_SERIES = SeriesSpec()
AVERAGING_LEVELS = 3
RICHARDSON_FRACTIONS = (8, 4, 2, 1)
OSC_PIECES = 40


@dataclass(frozen=True)
class SeriesResult:
    """Accelerated sum with its estimated error.

    ``tail_estimate`` estimates |returned value - limit|.  ``converged`` is
    False when that estimate exceeds the requested target.
    """

    value: complex
    terms_used: int
    tail_estimate: float
    accelerated: bool
    converged: bool = True

    @property
    def real(self):
        return self.value.real


@functools.lru_cache(maxsize=32)
def hermite_weights(xi, n_terms):
    """sqrt(pi) psi_n(xi)^2 for n < n_terms (cached, read-only)."""
    w = SQRT_PI * hermite_psi_batch(n_terms - 1, float(xi)) ** 2
    w.setflags(write=False)
    return w


# ---------------------------------------------------------------------------
# Large-n pieces
# ---------------------------------------------------------------------------


def _phase(e, xi):
    return xi * math.sqrt(e - xi * xi) + e * math.asin(xi / math.sqrt(e))


def _envelope(n, xi):
    return 1 / (SQRT_PI * math.sqrt(2 * n + 1 - xi * xi))


def smooth_tail(n, xi, z):
    """(1/sqrt pi) int_{n-1/2}^inf (2t + 1 - xi^2)^{-1/2} (t + z)^{-1} dt."""
    c = complex(2 * z - 1 + xi * xi)
    u = math.sqrt(2 * n - xi * xi)
    if c == 0:
        return 2 / (SQRT_PI * u)
    rc = cmath.sqrt(c)
    return complex(2 / (SQRT_PI * rc) * cmath.atan(rc / u))


def _phase_zero(k, xi, guess):
    """s > xi with Phi(s^2) = (k + 1/2) pi, by Newton from ``guess``."""
    target = (k + 0.5) * math.pi
    s = guess
    for _ in range(50):
        step = (_phase(s * s, xi) - target) / (2 * s * math.asin(xi / s))
        s -= step
        if abs(step) < 1e-15 * s:
            break
    return s


def oscillatory_tail(n, xi, poles):
    """(1/sqrt pi) int_{s0}^inf cos Phi(s^2) s / sqrt(s^2 - xi^2) sum_j c_j/((s^2-1)/2 + z_j) ds.

    s0 = sqrt(2n) corresponds to starting the sum at index n.  Integrated
    between consecutive zeros of cos Phi and extrapolated with the epsilon
    algorithm.  At xi = 0, cos Phi = 1 and the smooth closed form applies.
    """
    if xi == 0:
        return sum(c * smooth_tail(n, 0.0, z) for c, z in poles)
    s0 = math.sqrt(2 * n)
    cs = np.array([c for c, _ in poles], dtype=complex)
    zs = np.array([z for _, z in poles], dtype=complex)

    def f(s):
        s = np.asarray(s, dtype=float)
        e = s * s
        phi = xi * np.sqrt(e - xi * xi) + e * np.arcsin(xi / s)
        weight = (cs[:, None] / ((e[None, :] - 1) / 2 + zs[:, None])).sum(axis=0)
        return np.cos(phi) * s / np.sqrt(e - xi * xi) * weight / SQRT_PI

    k0 = math.ceil(_phase(s0 * s0, xi) / math.pi - 0.5)
    zeros = [s0]
    s = s0
    for k in range(k0, k0 + OSC_PIECES):
        guess = max(s, ((k + 0.5) * math.pi) / (2 * xi))
        s = _phase_zero(k, xi, guess)
        if s > zeros[-1]:
            zeros.append(s)
    res = between_zeros(f, zeros, rel_tol=1e-12, method="oscillatory_tail")
    return res.value


def _tail(n, xi, poles, alternating):
    """Semiclassical estimate of sum_{m >= n} of the series terms."""
    env = _envelope(n, xi)
    sign = -1.0 if n % 2 else 1.0
    at_n = sum(c / (n + z) for c, z in poles)
    if alternating:
        return oscillatory_tail(n, xi, poles) + 0.5 * sign * env * at_n
    cos_phi = math.cos(_phase(2 * n + 1, xi))
    return sum(c * smooth_tail(n, xi, z) for c, z in poles) + 0.5 * sign * env * cos_phi * at_n


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def hermite_pole_sum(xi, poles, spec: SeriesSpec = DEFAULT_SERIES, alternating=False):
    """sum_n (+-1)^n a_n sum_j c_j / (n + z_j), a_n = sqrt(pi) psi_n(xi)^2.

    ``poles`` is a sequence of ``(c_j, z_j)`` with Re z_j > 0.  Uses exactly
    ``spec.max_terms`` terms; the strategy in ``spec.tail_strategy`` decides
    how the remainder is handled.
    """
    xi = abs(float(xi))
    poles = [(complex(c), complex(z)) for c, z in poles]
    n_terms = spec.max_terms
    a = hermite_weights(xi, n_terms)
    n = np.arange(n_terms, dtype=float)
    g = np.zeros(n_terms, dtype=complex)
    for c, z in poles:
        g += c / (n + z)
    terms = a * g
    if alternating:
        terms[1::2] *= -1
    partial = np.concatenate([[0], np.cumsum(terms)])  # partial[m] = sum of m terms
    floor = 4 * EPS * math.sqrt(n_terms) * float(np.max(np.abs(partial)))
    mode = spec.tail_strategy

    def corrected(m):
        return partial[m] + (_tail(m, xi, poles, alternating) if spec.uses_tail else 0)

    def averaged(m):
        vals = [corrected(k) for k in range(m - AVERAGING_LEVELS, m + 1)]
        return complex(iterated_average(vals, AVERAGING_LEVELS)[0])

    if mode == "none":
        value = complex(partial[-1])
        if alternating:
            est = abs(_tail(n_terms, xi, poles, True))
        else:
            est = abs(sum(c * smooth_tail(n_terms, xi, z) for c, z in poles))
        accelerated = False
    elif mode == "semiclassical_tail":
        value = corrected(n_terms)
        est = abs(value - corrected(n_terms // 2)) + abs(terms[-1])
        accelerated = False
    elif mode == "averaging_acceleration" and alternating:
        # the leftover cos Phi oscillation is not a power series in N^{-1/2},
        # so no extrapolation; its size bounds the error instead
        value = averaged(n_terms)
        est = abs(value - averaged(n_terms // 2)) + abs(oscillatory_tail(n_terms, xi, poles))
        accelerated = True
    elif mode == "averaging_acceleration":
        ms = [n_terms // k for k in RICHARDSON_FRACTIONS]
        vals = [averaged(m) for m in ms]
        value, est = richardson_half_powers(ms, vals)
        accelerated = True
    else:
        value = averaged(n_terms)
        est = abs(value - averaged(n_terms // 2))
        accelerated = True
    est = float(est + floor)
    return SeriesResult(complex(value), n_terms, est, accelerated, bool(est <= spec.target_tol))


def product_via_hermite_series(z, X, spec: SeriesSpec = DEFAULT_SERIES):
    """P(z, X) = sqrt(pi) sum_n psi_n(X/sqrt 2)^2 / (n + z)."""
    z = as_half_plane(z).z
    return hermite_pole_sum(float(X) / math.sqrt(2), [(1.0, z)], spec)


def square_via_alternating_series(z, X, spec: SeriesSpec = DEFAULT_SERIES):
    """Q(z, |X|) = sqrt(pi) sum_n (-1)^n psi_n(X/sqrt 2)^2 / (n + z)."""
    z = as_half_plane(z).z
    return hermite_pole_sum(float(X) / math.sqrt(2), [(1.0, z)], spec, alternating=True)
