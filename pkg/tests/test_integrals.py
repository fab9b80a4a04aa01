import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import X_GRID, Z_GRID, beta_form, ref_D, ref_P, ref_Q, rel
from pcfprod import integrals as I
from pcfprod.config import QuadratureSpec
from pcfprod.errors import DomainError, ToleranceNotMet
from pcfprod.specfun import gamma

GRID = [(z, x) for z in Z_GRID for x in X_GRID]
GK = QuadratureSpec(scheme="gauss_kronrod")
DE = QuadratureSpec(scheme="double_exponential")

P_METHODS = {
    "tanh": I.product_via_tanh_integral,
    "finite": I.product_via_finite_integral,
    "unified+": lambda z, x, spec=I.DEFAULT_SPEC: I.unified_integral(z, x, "+", spec),
}
Q_METHODS = {
    "coth": I.square_via_coth_integral,
    "shifted": I.square_via_shifted_integral,
    "unified-": lambda z, x, spec=I.DEFAULT_SPEC: I.unified_integral(z, x, "-", spec),
}


# --- frozen reference values (mpmath, 30 digits) ------------------------------

P_1_1 = 1.382787849820245
Q_1_1 = 0.2607570303038315


def test_frozen_values_at_z1_x1():
    assert abs(ref_P(1, 1) - P_1_1) <= 1e-15
    assert abs(ref_Q(1, 1) - Q_1_1) <= 1e-15
    assert abs(I.product_via_tanh_integral(1, 1).real - P_1_1) <= 1e-13
    assert abs(I.square_via_coth_integral(1, 1).real - Q_1_1) <= 1e-13
    assert abs(I.erfc_closed_form_one(1) - P_1_1) <= 1e-14
    assert abs(I.erfc_closed_form_square_one(1) - Q_1_1) <= 1e-14


@pytest.mark.parametrize("name", sorted(P_METHODS))
@pytest.mark.parametrize("z, x", GRID)
def test_product_representations_match_oracle(name, z, x, p_table):
    r = P_METHODS[name](z, x)
    assert rel(r.value, p_table[(z, x)]) <= 1e-11
    assert r.work > 0 and math.isfinite(r.err_estimate)


@pytest.mark.parametrize("name", sorted(Q_METHODS))
@pytest.mark.parametrize("z, x", GRID)
def test_square_representations_match_oracle(name, z, x, q_table):
    r = Q_METHODS[name](z, x)
    assert rel(r.value, q_table[(z, x)]) <= 1e-11


@pytest.mark.parametrize("spec", [GK, DE], ids=["gk", "de"])
@pytest.mark.parametrize("fn", [I.product_via_tanh_integral, I.product_via_finite_integral,
                                I.square_via_coth_integral, I.square_via_shifted_integral],
                         ids=["tanh", "finite", "coth", "shifted"])
def test_backends_agree(fn, spec):
    for z, x in [(0.25, 0.0), (1.0, 1.0), (2.5, -3.0), (1 + 2j, 2.0), (5.0, 0.5)]:
        assert rel(fn(z, x, spec).value, fn(z, x).value) <= 1e-11


def test_fixed_truncation():
    spec = QuadratureSpec(scheme="gauss_kronrod", truncation=60.0)
    assert rel(I.product_via_tanh_integral(1.0, 1.0, spec).value, P_1_1) <= 1e-12


def test_x0_examples():
    assert abs(I.product_via_tanh_integral(1, 0).real - math.pi / 2) <= 1e-14
    assert abs(I.product_via_finite_integral(2, 0).real - 1) <= 1e-14
    assert abs(I.square_via_shifted_integral(1, 0).real - math.pi / 2) <= 1e-13
    for z in Z_GRID:
        want = beta_form(z)
        assert rel(I.beta_closed_form(z), want) <= 1e-13
        for fn in (I.product_via_tanh_integral, I.product_via_finite_integral,
                   I.square_via_coth_integral, I.square_via_shifted_integral):
            assert rel(fn(z, 0.0).value, want) <= 1e-11


def test_shifted_against_weber():
    want = gamma(3) * ref_D(-3, 2) ** 2
    assert rel(I.square_via_shifted_integral(3, 2).value, want) <= 1e-12


def test_half_order_forms():
    for x in (0.5, 1.0, 2.0, 3.0):
        eq20 = float(mp.quad(lambda s: mp.exp(-x * x * s / 2) / mp.sqrt(s * (1 - s * s)), [0, 1]))
        assert rel(I.product_via_finite_integral(0.5, x).value, eq20) <= 1e-11
        assert rel(I.bessel_closed_form_half(x), eq20) <= 1e-11
    assert rel(I.bessel_closed_form_half(0.0), beta_form(0.5)) <= 1e-14


# --- structural properties ----------------------------------------------------

@given(st.floats(0.05, 8), st.floats(-6, 6))
@settings(max_examples=60, deadline=None)
def test_symmetry_bitwise(z, x):
    for fn in (I.product_via_tanh_integral, I.product_via_finite_integral, I.square_via_coth_integral):
        assert fn(z, x).value == fn(z, -x).value


@given(st.floats(0.05, 8), st.floats(-6, 6))
@settings(max_examples=60, deadline=None)
def test_positivity(z, x):
    assert I.product_via_tanh_integral(z, x).real > 0
    assert I.square_via_coth_integral(z, x).real > 0
    assert I.product_via_tanh_integral(z, x).value.imag == 0


@pytest.mark.parametrize("z", [0.25, 1.0, 5.0, 12.0])
def test_monotone_in_abs_x(z):
    xs = np.linspace(0, 5, 26)
    p = [I.product_via_tanh_integral(z, x).real for x in xs]
    q = [I.square_via_coth_integral(z, x).real for x in xs]
    assert all(a > b for a, b in zip(p, p[1:]))
    assert all(a > b for a, b in zip(q, q[1:]))


def test_error_estimates_are_honest(p_table, q_table):
    hits = total = 0
    for table, methods in ((p_table, P_METHODS), (q_table, Q_METHODS)):
        for fn in methods.values():
            for (z, x), want in table.items():
                r = fn(z, x)
                total += 1
                hits += abs(r.value - want) <= 10 * r.err_estimate + 1e-300
    assert hits >= 0.95 * total


def test_q_is_even_and_matches_decaying_square():
    for z in (0.5, 2.5):
        for x in (1.0, 2.0):
            want = gamma(z) * ref_D(-z, x) ** 2
            assert rel(I.square_via_coth_integral(z, -x).value, want) <= 1e-12


# --- combinations -------------------------------------------------------------

@pytest.mark.parametrize("z, x", GRID)
def test_combinations_recombine(z, x, p_table, q_table):
    plus = I.combination_integrals(z, x, "+").value
    minus = I.combination_integrals(z, x, "-").value
    p, q = p_table[(z, x)], q_table[(z, x)]
    assert abs((plus + minus) / 2 - q) <= 1e-9 * abs(q)
    assert abs((plus - minus) / 2 - p) <= 1e-9 * abs(p)


def test_combination_at_origin():
    r = I.combination_integrals(1.7, 0.0, "-")
    assert r.value == 0 and r.work == 1
    for z in (0.5, 2.0, 1 + 2j):
        assert rel(I.combination_integrals(z, 0.0, "+").value, 2 * beta_form(z)) <= 1e-11


def test_unified_at_origin():
    for z in (0.25, 3.0):
        assert rel(I.unified_integral(z, 0, "-").value, I.unified_integral(z, 0, "+").value) <= 1e-14


@pytest.mark.parametrize("fn", [I.combination_integrals, I.unified_integral])
def test_bad_sign(fn):
    with pytest.raises(ValueError):
        fn(1.0, 1.0, "*")


@pytest.mark.parametrize("fn", [*P_METHODS.values(), *Q_METHODS.values()])
@pytest.mark.parametrize("z", [0, -1, -0.5 + 1j])
def test_domain_errors(fn, z):
    with pytest.raises(DomainError):
        fn(z, 1.0)


def test_tolerance_not_met_propagates():
    spec = QuadratureSpec(rel_tol=1e-14, scheme="double_exponential")
    with pytest.raises(ToleranceNotMet):
        I.product_via_tanh_integral(0.05 + 30j, 3.0, spec)


# --- Hankel-transform check ---------------------------------------------------

@pytest.mark.parametrize("nu", [-0.5, -1.0, -1.7])
@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 2.0, 4.0])
def test_hankel(nu, x):
    r = I.hankel_check_eq5(nu, x)
    want = ref_D(nu, x) * ref_D(nu, -x)
    assert rel(r.value, want) <= 1e-9


def test_hankel_examples():
    assert rel(I.hankel_check_eq5(-1, 1).value, P_1_1) <= 1e-9
    tanh = I.product_via_tanh_integral(0.5, 2).value / gamma(0.5)
    assert rel(I.hankel_check_eq5(-0.5, 2).value, tanh) <= 1e-6


def test_hankel_domain():
    with pytest.raises(DomainError):
        I.hankel_check_eq5(0.2, 1.0)
    with pytest.raises(DomainError):
        I.hankel_check_eq5(-1.0, 4.5)


# --- Bessel-kernel integrals and transforms -----------------------------------

@pytest.mark.parametrize("a, p", [(1.0, 2.0), (0.5, 0.3), (2.0, 7.0)])
def test_appendix_pair(a, p):
    r = I.appendix_pair(a, p)
    assert abs(r.lhs_a - r.rhs_a) <= 1e-12 * r.rhs_a
    assert abs(r.lhs_b - r.rhs_b) <= 1e-12 * r.rhs_b
    oracle_a = float(mp.quad(lambda t: mp.exp(-p * t) / mp.sqrt(t * (a * a - t * t)), [0, a]))
    assert rel(r.lhs_a, oracle_a) <= 1e-12


def test_appendix_small_p_limit():
    limit = float(mp.beta(0.25, 0.5)) / 2
    r = I.appendix_pair(1.0, 1e-4)
    assert abs(r.rhs_a - limit) <= 1e-3 * limit
    assert abs(r.lhs_a - limit) <= 1e-3 * limit


@pytest.mark.parametrize("b, zp", [(1.0, 1.0), (2.0, 0.5), (0.5, 3.0)])
def test_fourier_pair(b, zp):
    r = I.fourier_pair(b, zp)
    assert abs(r.sin_lhs - r.sin_rhs) <= 1e-9 * abs(r.sin_rhs)
    assert abs(r.cos_lhs - r.cos_rhs) <= 1e-9 * abs(r.cos_rhs)


def test_fourier_scaling():
    b, bp, zp = 1.3, 0.6, 0.9
    a = I.fourier_pair(b, zp)
    c = I.fourier_pair(bp, zp * b / bp)
    scale = math.sqrt(b / bp)
    assert abs(a.sin_rhs - scale * c.sin_rhs) <= 1e-14
    assert abs(a.cos_rhs - scale * c.cos_rhs) <= 1e-14
    assert abs(a.sin_lhs - scale * c.sin_lhs) <= 1e-9


def test_fourier_slow_oscillation_warns():
    with pytest.warns(RuntimeWarning):
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            I.fourier_pair(0.05, 0.1, periods=10)


@pytest.mark.parametrize("fn", [I.appendix_pair, I.fourier_pair])
def test_transform_domain(fn):
    with pytest.raises(DomainError):
        fn(-1.0, 1.0)


# --- closed forms ---------------------------------------------------------------

def test_erfc_closed_forms_against_oracle():
    for x in np.linspace(-3, 3, 13):
        assert rel(I.erfc_closed_form_one(x), ref_P(1, x)) <= 1e-13
        if x >= 0:
            assert rel(I.erfc_closed_form_square_one(x), ref_Q(1, x)) <= 1e-13


def test_large_parameter_estimate():
    assert abs(I.large_parameter_estimate(50, 1) - math.sqrt(2 * math.pi / 199)) <= 1e-15
    assert abs(I.large_parameter_estimate(50, 1) - 0.1776901671828) < 1e-12


# --- Hermite-function bridge ----------------------------------------------------

def _hg_oracle(lam, x):
    # H and G from the Weber-function relations, in mpmath
    lam = mp.mpf(lam)
    y = mp.mpf(x) * mp.sqrt(2)
    dp, dm = mp.pcfd(lam, y), mp.pcfd(lam, -y)
    h = mp.exp(mp.mpf(x) ** 2 / 2) * 2 ** (lam / 2) * dp
    g = mp.exp(mp.mpf(x) ** 2 / 2) * 2 ** (lam / 2) * (mp.cos(mp.pi * lam) * dp - dm) / mp.sin(mp.pi * lam)
    return float(mp.exp(-mp.mpf(x) ** 2) * (h * h + g * g))


@pytest.mark.parametrize("lam", [-0.5, -1.3, -0.2, 0.7, -1.8])
@pytest.mark.parametrize("x", [0.0, 0.7, 1.4])
def test_hg_square_integral(lam, x):
    assert rel(I.hermite_square_integral(lam, x).value, _hg_oracle(lam, x)) <= 1e-10


def test_n1_domain():
    for lam in (-1.0, -2.0, -3.5):
        with pytest.raises(DomainError):
            I.hermite_square_integral(lam, 0.5)
