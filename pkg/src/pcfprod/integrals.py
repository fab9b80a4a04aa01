"""Integral representations of the parabolic-cylinder products.

Two target quantities, both taking the D-function argument ``x`` directly:

* ``P(z, x) = Gamma(z) D_{-z}(x) D_{-z}(-x)``
* ``Q(z, x) = Gamma(z) D_{-z}(x)^2``

Each routine applies its own change of variables so that the integrand
handed to the quadrature backend is smooth, or at worst carries an
algebraic endpoint singularity that the double-exponential rules absorb.
"""

from __future__ import annotations

import math
import warnings
from typing import NamedTuple

import numpy as np

from .config import QuadratureSpec
from .errors import DomainError, ToleranceNotMet
from .quadrature import EvalResult, between_zeros, exp_sinh, gauss_kronrod
from .specfun import SQRT_PI, as_half_plane, bessel_IK_quarter, bessel_j0, pcfd_derivative_array, rgamma

DEFAULT_SPEC = QuadratureSpec()
LOG2 = math.log(2.0)


def _log_sinh(t):
    t = np.asarray(t, dtype=float)
    big = t > 20
    with np.errstate(over="ignore", divide="ignore"):
        small_val = np.log(np.sinh(np.where(big, 1.0, t)))
    return np.where(big, t - LOG2 + np.log1p(-np.exp(-2 * np.where(big, t, 20.0))), small_val)


def _log_sinhc(t):
    """log(sinh(t)/t), accurate down to t = 0."""
    t = np.asarray(t, dtype=float)
    tiny = t < 1e-4
    safe = np.where(tiny, 1.0, t)
    return np.where(tiny, t * t / 6, _log_sinh(safe) - np.log(safe))


def _tail_bound(decay, prefactor):
    return lambda t: prefactor * math.exp(-decay * t) / decay


def _truncated(g, u_of_t, tail, spec, method, lo=0.0, t0=35.0):
    """Gauss-Kronrod on [lo, u_of_t(T)], doubling T until tail(T) is negligible.

    ``tail(T)`` bounds the discarded part of the original integral and is
    added to the error estimate.  A numeric ``spec.truncation`` fixes T.
    """
    def gk(a, b, abs_tol=spec.abs_tol):
        return gauss_kronrod(g, a, b, spec.rel_tol, abs_tol, spec.max_subdivisions, method)

    if spec.truncation != "auto_tail_bound":
        t = float(spec.truncation)
        return _with_tail(gk(lo, u_of_t(t)), tail(t))
    t = t0
    res = gk(lo, u_of_t(t))
    while tail(t) > 0.1 * spec.tolerance(res.value) and t < 1e5:
        # extensions only need to be accurate relative to the running value
        res = res + gk(u_of_t(t), u_of_t(2 * t), 0.1 * spec.tolerance(res.value))
        t *= 2
    return _with_tail(res, tail(t))


def _with_tail(res, tail):
    res.err_estimate += tail
    return res


def _de_first(spec, default_de):
    """(try DE?, DE failure is final?) for the requested scheme."""
    if spec.scheme == "double_exponential":
        return True, True
    if spec.scheme == "gauss_kronrod":
        return False, False
    return default_de, False


# ---------------------------------------------------------------------------
# P(z, x): tanh form over (0, inf) and the finite form over (0, 1)
# ---------------------------------------------------------------------------


def product_via_tanh_integral(z, x, spec: QuadratureSpec = DEFAULT_SPEC):
    """P(z, x) = 2^{-1/2} int_0^inf exp((1/2 - z)t - (x^2/2) tanh(t/2)) dt / sqrt(sinh t).

    Default backend: exp-sinh on the raw integrand, falling back to the
    adaptive rule when it cannot reach the tolerance (slowly decaying,
    oscillating integrands at small Re z and large Im z).  The adaptive
    backend uses t = u^2 and truncates by the tail bound e^{-Re z T}/Re z.
    """
    z = as_half_plane(z).z
    x2 = float(x) ** 2
    try_de, final = _de_first(spec, True)
    if try_de:
        def f(t):
            return np.exp((0.5 - z) * t - 0.5 * x2 * np.tanh(0.5 * t) - 0.5 * _log_sinh(t) - 0.5 * LOG2)

        try:
            return exp_sinh(f, 0.0, spec.rel_tol, spec.abs_tol, "tanh_integral")
        except ToleranceNotMet:
            if final:
                raise

    def g(u):
        t = u * u
        return 2 * np.exp((0.5 - z) * t - 0.5 * x2 * np.tanh(0.5 * t) - 0.5 * _log_sinhc(t) - 0.5 * LOG2)

    # for t >= 35: sinh t >= e^t/2.02 and tanh(t/2) >= tanh(17.5)
    tail = _tail_bound(z.real, 1.01 * math.exp(-0.5 * x2 * math.tanh(17.5)))
    return _truncated(g, math.sqrt, tail, spec, "tanh_integral")


def product_via_finite_integral(z, x, spec: QuadratureSpec = DEFAULT_SPEC):
    """P(z, x) = int_0^1 (1-s)^{z-1} (1+s)^{-z} e^{-x^2 s/2} s^{-1/2} ds.

    Default backend: Gauss-Kronrod on two mapped halves, s = sigma^2 on
    [0, 1/2] and 1 - s = e^{-u} on [1/2, 1).  The double-exponential
    backend maps the whole range by s = 1 - e^{-u}.
    """
    z = as_half_plane(z).z
    x2 = float(x) ** 2
    try_de, final = _de_first(spec, False)
    if try_de:
        def f(u):
            s = -np.expm1(-u)
            return np.exp(-z * u - z * np.log1p(s) - 0.5 * x2 * s - 0.5 * np.log(s))

        try:
            return exp_sinh(f, 0.0, spec.rel_tol, spec.abs_tol, "finite_integral")
        except ToleranceNotMet:
            if final:
                raise

    def left(sig):
        s = sig * sig
        return 2 * np.exp((z - 1) * np.log1p(-s) - z * np.log1p(s) - 0.5 * x2 * s)

    def right(u):
        s = -np.expm1(-u)
        return np.exp(-z * u - z * np.log1p(s) - 0.5 * x2 * s - 0.5 * np.log(s))

    r1 = gauss_kronrod(left, 0.0, math.sqrt(0.5), spec.rel_tol, spec.abs_tol, spec.max_subdivisions,
                       "finite_integral")
    # s >= 1/2 on the right piece
    tail = _tail_bound(z.real, math.sqrt(2) * math.exp(-0.25 * x2))
    r2 = _truncated(right, float, tail, spec, "finite_integral", lo=LOG2)
    return r1 + r2


# ---------------------------------------------------------------------------
# Q(z, x): coth form over (0, inf) and the shifted form over (1, inf)
# ---------------------------------------------------------------------------
#
# Both are even in x and represent the square of the decaying solution,
# Gamma(z) D_{-z}(|x|)^2; for x >= 0 this is Gamma(z) D_{-z}(x)^2.


def square_via_coth_integral(z, x, spec: QuadratureSpec = DEFAULT_SPEC):
    """Q(z, x) = 2^{-1/2} int_0^inf exp((1/2 - z)t - (x^2/2) coth(t/2)) dt / sqrt(sinh t).

    For x != 0 the integrand vanishes to all orders at t = 0.
    """
    z = as_half_plane(z).z
    x2 = float(x) ** 2

    def coth_half(t):
        with np.errstate(divide="ignore", over="ignore"):
            return 1 / np.tanh(0.5 * t)

    try_de, final = _de_first(spec, True)
    if try_de:
        def f(t):
            expo = (0.5 - z) * t - 0.5 * _log_sinh(t) - 0.5 * LOG2
            if x2:
                expo = expo - 0.5 * x2 * coth_half(t)
            return np.exp(expo)

        try:
            return exp_sinh(f, 0.0, spec.rel_tol, spec.abs_tol, "coth_integral")
        except ToleranceNotMet:
            if final:
                raise

    def g(u):
        t = u * u
        expo = (0.5 - z) * t - 0.5 * _log_sinhc(t) - 0.5 * LOG2
        if x2:
            expo = expo - 0.5 * x2 * coth_half(t)
        return 2 * np.exp(expo)

    tail = _tail_bound(z.real, 1.01 * math.exp(-0.5 * x2))
    return _truncated(g, math.sqrt, tail, spec, "coth_integral")


def square_via_shifted_integral(z, x, spec: QuadratureSpec = DEFAULT_SPEC):
    """Q(z, x) = int_1^inf (s-1)^{z-1} (s+1)^{-z} e^{-x^2 s/2} s^{-1/2} ds.

    At x = 0 the integrand only decays like s^{-3/2}.  Default backend:
    exp-sinh in v = s - 1.  Gauss-Kronrod splits at v = 1, uses v = e^{-u}
    below and v = 1/w^2 above, which turns the algebraic tail into a
    smooth integrand on (0, 1].
    """
    z = as_half_plane(z).z
    x2 = float(x) ** 2
    try_de, final = _de_first(spec, True)
    if try_de:
        def f(v):
            return np.exp((z - 1) * np.log(v) - z * np.log(v + 2) - 0.5 * x2 * (1 + v) - 0.5 * np.log1p(v))

        try:
            return exp_sinh(f, 0.0, spec.rel_tol, spec.abs_tol, "shifted_integral")
        except ToleranceNotMet:
            if final:
                raise

    def near(u):
        v = np.exp(-u)
        return np.exp(-z * u - z * np.log(v + 2) - 0.5 * x2 * (1 + v) - 0.5 * np.log1p(v))

    def far(w):
        with np.errstate(divide="ignore"):
            expo = -z * np.log1p(2 * w * w) - 0.5 * np.log1p(w * w)
            if x2:
                expo = expo - 0.5 * x2 * (1 + 1 / (w * w))
        return 2 * np.exp(expo)

    tail = _tail_bound(z.real, 2.0 ** -z.real * math.exp(-0.5 * x2))
    r1 = _truncated(near, float, tail, spec, "shifted_integral")
    r2 = gauss_kronrod(far, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions, "shifted_integral")
    return r1 + r2


# ---------------------------------------------------------------------------
# Combinations over (0, inf) and the unified exponential form
# ---------------------------------------------------------------------------


def combination_integrals(z, x, sign, spec: QuadratureSpec = DEFAULT_SPEC):
    """Gamma(z) D_{-z}(x) (D_{-z}(x) +- D_{-z}(-x)), i.e. Q + P or Q - P.

    One integral over (0, inf) with |s - 1| kernels, evaluated on its two
    halves with s = e^{-y} (below 1) and s = e^{y} (above 1), so that
    |s - 1| = |expm1(-+y)| is exact near the kernel singularity.
    """
    z = as_half_plane(z).z
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    x2 = float(x) ** 2
    if sign == "-" and x2 == 0:
        return EvalResult(0, 0, 1, "combination-")

    # '+': |s-1|^{z-1};  '-': |s-1|^z / (s-1) = sgn(s-1) |s-1|^{z-1}
    below_sign = 1.0 if sign == "+" else -1.0

    def below(y):
        d = -np.expm1(-y)
        return below_sign * np.exp((z - 1) * np.log(d) - z * np.log1p(np.exp(-y)) - 0.5 * x2 * np.exp(-y) - 0.5 * y)

    def above(y):
        with np.errstate(over="ignore"):
            s = np.exp(y)
            d = np.expm1(y)
            expo = (z - 1) * np.log(d) - z * np.log1p(s) - 0.5 * x2 * s + 0.5 * y
        return np.exp(np.where(np.isfinite(s), expo, -np.inf))

    def above_safe(y):
        # beyond s ~ 1e300 the integrand is far below any tolerance
        y = np.minimum(y, 690.0)
        return above(y)

    method = "combination" + sign
    r1 = exp_sinh(below, 0.0, spec.rel_tol, spec.abs_tol, method)
    r2 = exp_sinh(above_safe, 0.0, spec.rel_tol, spec.abs_tol, method)
    return r1 + r2


def unified_integral(z, x, sign, spec: QuadratureSpec = DEFAULT_SPEC):
    """The single exponential form covering both products.

    ``sign`` picks the denominator e^t +- 1 in the exponent:

    * ``"+"``: 2^{-1/2} e^{-x^2/2} int exp((1/2-z)t + x^2/(e^t+1)) dt/sqrt(sinh t) = P(z, x)
    * ``"-"``: 2^{-1/2} e^{-x^2/2} int exp((1/2-z)t - x^2/(e^t-1)) dt/sqrt(sinh t) = Q(z, x)

    The 1/Gamma(z) of D_{-z} D_{-z} cancels against the Gamma(z) of P and
    Q, so no gamma function is evaluated.
    """
    z = as_half_plane(z).z
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    x2 = float(x) ** 2

    if sign == "+":
        def f(t):
            with np.errstate(over="ignore"):
                frac = 1 / (np.exp(t) + 1)
            return np.exp((0.5 - z) * t - 0.5 * x2 + x2 * frac - 0.5 * _log_sinh(t) - 0.5 * LOG2)
    else:
        def f(t):
            expo = (0.5 - z) * t - 0.5 * x2 - 0.5 * _log_sinh(t) - 0.5 * LOG2
            if x2:
                with np.errstate(over="ignore", divide="ignore"):
                    expo = expo - x2 / np.expm1(t)
            return np.exp(expo)

    return exp_sinh(f, 0.0, spec.rel_tol, spec.abs_tol, "unified" + sign)


# ---------------------------------------------------------------------------
# Hankel-transform check
# ---------------------------------------------------------------------------

HANKEL_S_MAX = 12.0


def _j0_zeros_below(limit):
    zeros = []
    k = 1
    while True:
        b = (k - 0.25) * math.pi
        j = b + 1 / (8 * b) - 31 / (384 * b**3) + 3779 / (15360 * b**5)
        if j >= limit:
            return zeros
        zeros.append(j)
        k += 1


def hankel_check_eq5(nu, x, spec: QuadratureSpec = DEFAULT_SPEC):
    """D_nu(x) D_nu(-x) = -2 int_0^inf J_0(x s) D_nu(s) D'_nu(s) ds, Re nu < 0.

    The integrand decays like e^{-s^2/2}; the range is cut at s = 12 and
    split at the zeros of J_0(x s).
    """
    nu = complex(nu)
    x = float(x)
    if not nu.real < 0:
        raise DomainError("hankel_check_eq5 requires Re nu < 0")
    if abs(x) > 4:
        raise DomainError("hankel_check_eq5 is limited to |x| <= 4")
    ax = abs(x)
    rel = max(spec.rel_tol, 1e-10)

    def f(s):
        d, dp = pcfd_derivative_array(nu, s)
        return -2 * bessel_j0(ax * s) * d * dp

    points = [0.0]
    if ax > 0:
        points += [j / ax for j in _j0_zeros_below(ax * HANKEL_S_MAX)]
    points.append(HANKEL_S_MAX)
    return between_zeros(f, points, rel_tol=rel, abs_tol=spec.abs_tol, accelerate=False, method="hankel")


# ---------------------------------------------------------------------------
# Modified-Bessel integrals and transforms
# ---------------------------------------------------------------------------


class AppendixPair(NamedTuple):
    lhs_a: float
    rhs_a: float
    lhs_b: float
    rhs_b: float


class FourierPair(NamedTuple):
    sin_lhs: float
    sin_rhs: float
    cos_lhs: float
    cos_rhs: float


def appendix_pair(a, p, spec: QuadratureSpec = DEFAULT_SPEC):
    """Both sides of the two K_{1/4} I_{+-1/4} integrals with weight e^{-p x}.

    (a)  int_0^a   e^{-px} dx / sqrt(x (a^2 - x^2)) = (sqrt(pi p)/2) K (I_{1/4} + I_{-1/4})
    (b)  int_a^inf e^{-px} dx / sqrt(x (x^2 - a^2)) = (sqrt(pi p)/2) K (I_{-1/4} - I_{1/4})

    with all Bessel functions at a p / 2.  The left sides use x = a sin^2 th
    and x = a cosh^2 th, which make both integrands smooth.
    """
    a, p = float(a), float(p)
    if not (a > 0 and p > 0):
        raise DomainError("appendix_pair requires a > 0 and p > 0")
    rel = spec.rel_tol

    def fa(th):
        s2 = np.sin(th) ** 2
        return 2 * np.exp(-p * a * s2) / np.sqrt(a * (1 + s2))

    def fb(th):
        c2 = np.cosh(th) ** 2
        return 2 * np.exp(-p * a * (c2 - 1)) / np.sqrt(a * (1 + c2))

    th_max = math.acosh(math.sqrt(1 + 50.0 / (p * a)))
    lhs_a = gauss_kronrod(fa, 0.0, math.pi / 2, rel, spec.abs_tol, spec.max_subdivisions).value.real
    lhs_b = gauss_kronrod(fb, 0.0, th_max, rel, spec.abs_tol, spec.max_subdivisions).value.real
    lhs_b *= math.exp(-p * a)
    ip, im, k = bessel_IK_quarter(a * p / 2)
    pre = math.sqrt(math.pi * p) / 2
    # I_{-1/4} - I_{1/4} cancels for large a p; it equals (sqrt 2/pi) K_{1/4}
    diff = math.sqrt(2) / math.pi * k
    return AppendixPair(lhs_a, pre * k * (ip + im), lhs_b, pre * k * diff)


def fourier_pair(b, zp, spec: QuadratureSpec = DEFAULT_SPEC, periods=60):
    """Both sides of the sine and cosine transforms of 1/sqrt(x (x^2 + zp^2)).

    Left sides: the first lobe with x = u^2, then half-period pieces between
    zeros of sin(bx) / cos(bx), summed with the epsilon algorithm.  Right
    sides: sqrt(pi b/2) K_{1/4}(b zp/2) I_{+-1/4}(b zp/2).
    """
    b, zp = float(b), float(zp)
    if not (b > 0 and zp > 0):
        raise DomainError("fourier_pair requires b > 0 and zp > 0")
    if b * zp < 1e-2:
        warnings.warn("b*zp << 1: the transform oscillates slowly and converges poorly", RuntimeWarning)
    rel = max(spec.rel_tol, 1e-12)
    zp2 = zp * zp

    def amp(x):
        return 1 / np.sqrt(x * (x * x + zp2))

    def lhs(trig, first_zero):
        def head(u):
            return 2 * trig(b * u * u) / np.sqrt(u**4 + zp2)

        first = gauss_kronrod(head, 0.0, math.sqrt(first_zero), rel, 0.0, spec.max_subdivisions)
        zeros = first_zero + math.pi / b * np.arange(periods + 1)
        res = between_zeros(lambda x: trig(b * x) * amp(x), list(zeros), rel_tol=rel, first=first)
        return res.value.real

    ip, im, k = bessel_IK_quarter(b * zp / 2)
    pre = math.sqrt(math.pi * b / 2)
    return FourierPair(lhs(np.sin, math.pi / b), pre * k * ip, lhs(np.cos, math.pi / (2 * b)), pre * k * im)


# ---------------------------------------------------------------------------
# Closed forms used as checks
# ---------------------------------------------------------------------------


def beta_closed_form(z):
    """P(z, 0) = Q(z, 0) = (sqrt(pi)/2) Gamma(z/2) / Gamma((z+1)/2)."""
    z = as_half_plane(z).z
    from .specfun import gamma

    return SQRT_PI / 2 * gamma(z / 2) * rgamma((z + 1) / 2)


def bessel_closed_form_half(x):
    """P(1/2, x) through Bessel functions of order +-1/4 at x^2/4."""
    x = abs(float(x))
    if x == 0:
        return beta_closed_form(0.5).real
    ip, im, k = bessel_IK_quarter(x * x / 4)
    return SQRT_PI * x / 2**1.5 * k * (ip + im)


def erfc_closed_form_one(x):
    """P(1, x) = (pi/2) e^{x^2/2} erfc(x/sqrt 2) erfc(-x/sqrt 2)."""
    x = float(x)
    r = math.sqrt(0.5)
    return math.pi / 2 * math.exp(x * x / 2) * math.erfc(x * r) * math.erfc(-x * r)


def erfc_closed_form_square_one(x):
    """Q(1, x) = (pi/2) e^{x^2/2} erfc(x/sqrt 2)^2."""
    x = float(x)
    return math.pi / 2 * math.exp(x * x / 2) * math.erfc(x * math.sqrt(0.5)) ** 2


def large_parameter_estimate(z, x):
    """Leading-order sqrt(2 pi / (x^2 + 4z - 2)) for large z or |x|."""
    return math.sqrt(2 * math.pi / (float(x) ** 2 + 4 * float(z) - 2))


# ---------------------------------------------------------------------------
# Hermite-function bridge
# ---------------------------------------------------------------------------


def hermite_square_integral(lam, x, spec: QuadratureSpec = DEFAULT_SPEC):
    """2^{lam+1} Gamma(lam+1)/pi * int_0^inf exp(-(2 lam+1)t + x^2 tanh t) dt / sqrt(cosh t sinh t).

    Equals e^{-x^2} (H_lam(x)^2 + G_lam(x)^2).  The integrand behaves like
    2 e^{x^2} e^{-(2 lam+2)t} at large t, so the integral converges only for
    lam > -1; for -2 < lam < -1 the value is the analytic continuation
    obtained by subtracting that exponential on [1, inf) and adding back
    its continued integral.
    """
    from .specfun import gamma

    lam = float(lam)
    x2 = float(x) ** 2
    if not lam > -2 or lam == -1:
        raise DomainError("hermite_square_integral requires lam > -2, lam != -1")
    beta = 2 * lam + 2

    def kernel(t):
        return np.exp(-(2 * lam + 1) * t + x2 * np.tanh(t) - 0.5 * (_log_sinh(2 * t) - LOG2))

    rel, tol = spec.rel_tol, spec.abs_tol
    if lam > -1:
        core = exp_sinh(kernel, 0.0, rel, tol, "hg_square_integral")
    else:
        def remainder(t):
            # K - 2 e^{x^2} e^{-beta t} = 2 e^{x^2 - beta t} expm1(x^2 (tanh t - 1) - log(1 - e^{-4t})/2)
            with np.errstate(over="ignore"):
                tanh_m1 = -2 / (np.exp(2 * t) + 1)
            b = np.expm1(x2 * tanh_m1 - 0.5 * np.log1p(-np.exp(-4 * t)))
            with np.errstate(divide="ignore"):
                out = 2 * np.sign(b) * np.exp(x2 - beta * t + np.log(np.abs(b)))
            return np.where(b == 0, 0.0, out)

        head = gauss_kronrod(lambda u: 2 * u * kernel(u * u), 0.0, 1.0, rel, tol, spec.max_subdivisions,
                             "hg_square_integral")
        tail = exp_sinh(remainder, 1.0, rel, tol, "hg_square_integral")
        added = 2 * math.exp(x2 - beta) / beta
        core = head + tail + EvalResult(added, 0, 0, "hg_square_integral")
    return core.scaled(2 ** (lam + 1) / math.pi * gamma(lam + 1).real, "hg_square_integral")
