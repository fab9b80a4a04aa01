import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import beta_form, ref_P, ref_Q, rel
from pcfprod import integrals as I
from pcfprod.config import SeriesSpec
from pcfprod.errors import DomainError
from pcfprod.series import (
    SeriesResult,
    hermite_pole_sum,
    hermite_weights,
    oscillatory_tail,
    product_via_hermite_series,
    smooth_tail,
    square_via_alternating_series,
)

RAW = SeriesSpec(max_terms=2000, tail_strategy="none")
SMALL = SeriesSpec(max_terms=20_000)


def test_spec_validation():
    with pytest.raises(ValueError):
        SeriesSpec(max_terms=9)
    with pytest.raises(ValueError):
        SeriesSpec(target_tol=1e-13)
    with pytest.raises(ValueError):
        SeriesSpec(tail_strategy="levin")
    assert SeriesSpec().uses_tail and SeriesSpec().uses_averaging
    assert not SeriesSpec(tail_strategy="semiclassical_tail").uses_averaging


def test_weights_are_cached_and_read_only():
    w = hermite_weights(0.5, 100)
    assert w is hermite_weights(0.5, 100)
    with pytest.raises(ValueError):
        w[0] = 1.0


def test_z1_origin_is_arcsine_series():
    # sqrt(pi) psi_{2m}(0)^2 = C(2m, m) 4^{-m}; the sum of C(2m,m) 4^{-m}/(2m+1) is arcsin(1)
    w = hermite_weights(0.0, 40)
    m = np.arange(20)
    binom = np.array([math.comb(2 * k, k) / 4**k for k in m])
    assert np.allclose(w[::2], binom, rtol=1e-13, atol=0)
    assert np.all(w[1::2] == 0)
    r = product_via_hermite_series(1.0, 0.0)
    assert abs(r.real - math.pi / 2) <= 1e-6
    assert abs(r.real - math.pi / 2) <= 5 * r.tail_estimate


@pytest.mark.parametrize("z", [0.25, 0.5, 1.0, 2.5, 5.0])
def test_origin_beta_form(z):
    want = beta_form(z)
    p = product_via_hermite_series(z, 0.0)
    q = square_via_alternating_series(z, 0.0)
    assert rel(p.value, want) <= 1e-6
    assert q.value == p.value


def test_z1_x1_values():
    p = product_via_hermite_series(1.0, 1.0)
    q = square_via_alternating_series(1.0, 1.0)
    assert abs(p.real - 1.382787849820245) <= max(p.tail_estimate, 1e-10)
    assert abs(q.real - 0.2607570303038315) <= max(q.tail_estimate, 1e-10)


def test_complex_z():
    z = 1 + 2j
    p = product_via_hermite_series(z, 1.0)
    q = square_via_alternating_series(z, 1.0)
    assert rel(p.value, ref_P(z, 1.0)) <= 1e-6
    assert rel(q.value, ref_Q(z, 1.0)) <= 1e-6


@given(st.floats(0.1, 6), st.floats(-4, 4))
@settings(max_examples=40, deadline=None)
def test_partial_sums_increase(z, x):
    n = 400
    a = hermite_weights(abs(x) / math.sqrt(2), n)
    terms = a / (np.arange(n) + z)
    assert np.all(terms >= 0)
    partial = np.cumsum(terms)
    steps = np.diff(partial)
    assert np.all(steps >= 0)
    visible = terms[1:] > 1e-15 * partial[1:]
    assert np.all(steps[visible] > 0)


def test_partial_sums_continuous_in_x():
    x = 0.8
    base = product_via_hermite_series(1.5, x, RAW).real
    diffs = [abs(product_via_hermite_series(1.5, x + d, RAW).real - base) for d in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(a > b for a, b in zip(diffs, diffs[1:]))
    assert diffs[-1] < 1e-3


@pytest.mark.parametrize("z", [0.25, 1.0, 5.0])
@pytest.mark.parametrize("x", [0.0, 0.5, -1.0, 2.0, -3.0])
def test_tail_estimate_is_honest(z, x):
    for fn, ref in ((product_via_hermite_series, ref_P), (square_via_alternating_series, ref_Q)):
        r = fn(z, x)
        assert abs(r.value - ref(z, x)) <= 5 * r.tail_estimate
        assert r.converged and r.terms_used <= SeriesSpec().max_terms
        assert isinstance(r, SeriesResult) and type(r.tail_estimate) is float


@pytest.mark.parametrize("mode", ["none", "semiclassical_tail", "averaging_acceleration", "both"])
def test_each_strategy_is_honest(mode):
    spec = SeriesSpec(max_terms=20_000, tail_strategy=mode)
    for z, x in ((1.0, 1.0), (0.25, 2.0), (5.0, 0.5)):
        p = product_via_hermite_series(z, x, spec)
        q = square_via_alternating_series(z, x, spec)
        assert abs(p.value - ref_P(z, x)) <= 5 * p.tail_estimate
        assert abs(q.value - ref_Q(z, x)) <= 5 * q.tail_estimate
        assert p.accelerated == (mode in ("averaging_acceleration", "both"))


@pytest.mark.parametrize("z, x", [(1.0, 1.0), (0.25, 2.0), (5.0, 0.5)])
def test_acceleration_gain(z, x):
    raw = product_via_hermite_series(z, x, SeriesSpec(max_terms=20_000, tail_strategy="none"))
    acc = product_via_hermite_series(z, x, SeriesSpec(max_terms=20_000, tail_strategy="averaging_acceleration"))
    want = ref_P(z, x)
    assert abs(acc.value - want) * 100 <= abs(raw.value - want)


def test_unconverged_result_is_flagged():
    r = product_via_hermite_series(1.0, 1.0, SeriesSpec(max_terms=50, tail_strategy="none"))
    assert not r.converged and r.terms_used == 50
    assert r.tail_estimate > 1e-5


def test_deterministic():
    a = square_via_alternating_series(2.5, 1.5, SMALL)
    b = square_via_alternating_series(2.5, 1.5, SMALL)
    assert a == b


def test_combination_consistency():
    z, x = 1.0, 1.5
    p = product_via_hermite_series(z, x).value
    q = square_via_alternating_series(z, x).value
    plus = I.combination_integrals(z, x, "+").value
    minus = I.combination_integrals(z, x, "-").value
    assert abs((q + p) - plus) <= 1e-5 * abs(plus)
    assert abs((q - p) - minus) <= 1e-5 * abs(minus)


def test_domain():
    with pytest.raises(DomainError):
        product_via_hermite_series(-0.5, 1.0)
    with pytest.raises(DomainError):
        square_via_alternating_series(0, 1.0)


# --- large-n pieces -----------------------------------------------------------------

@pytest.mark.parametrize("n, xi, z", [(100, 0.5, 1.0), (1000, 2.0, 0.25), (50, 0.0, 3.0), (200, 1.0, 1 + 2j)])
def test_smooth_tail_closed_form(n, xi, z):
    want = complex(mp.quad(lambda t: 1 / (mp.sqrt(mp.pi) * mp.sqrt(2 * t + 1 - xi * xi) * (t + z)),
                           [n - 0.5, mp.inf]))
    assert rel(smooth_tail(n, xi, z), want) <= 1e-12


def test_oscillatory_tail_small_and_reduces_at_origin():
    poles = [(1.0, 1.0)]
    assert oscillatory_tail(500, 0.0, poles) == smooth_tail(500, 0.0, 1.0)
    t1 = abs(oscillatory_tail(1000, 1.0, poles))
    t2 = abs(oscillatory_tail(4000, 1.0, poles))
    assert t2 < t1 < 1e-3


def test_pole_sum_linearity():
    xi = 0.7
    spec = SeriesSpec(max_terms=5000)
    joint = hermite_pole_sum(xi, [(2.0, 1.0), (-1j, 2.0)], spec).value
    a = hermite_pole_sum(xi, [(1.0, 1.0)], spec).value
    b = hermite_pole_sum(xi, [(1.0, 2.0)], spec).value
    assert abs(joint - (2 * a - 1j * b)) <= 1e-12
