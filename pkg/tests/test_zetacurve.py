import cmath
import math

import hypothesis.strategies as st
import pytest
from hypothesis import assume, given

from zetareg.curves import count_points, parse_curve
from zetareg.errors import NearPole
from zetareg.lfunc import LPolynomial
from zetareg.primezeta import prime_table_from_lpoly
from zetareg.zetacurve import (
    CurveZeta,
    curve_zeta,
    euler_product_partial,
    fe_check_grid,
    functional_equation_residual,
    max_fe_residual,
    zeta_dirichlet_partial,
    zeta_eval,
    zeta_zeros,
)

P1 = CurveZeta(LPolynomial(2, 0, (1,)))
ELL = CurveZeta(LPolynomial(2, 1, (1, 0, 2)))
CURVES = ["p1 q=2", "ell p=2 a3=1", "hyp p=5 f=x^5+x+1", "hyp p=2 f=x^5 h=1", "hyp p=3 a=2 f=x^6+w*x+1"]


def test_eval_examples():
    assert abs(zeta_eval(P1, 2) - 8 / 3) < 1e-15
    assert abs(zeta_eval(ELL, 2) - 3) < 1e-15
    assert abs(zeta_eval(ELL, complex(2, ELL.period)) - 3) < 1e-14


def test_pole_detection():
    for s in (0, 1, complex(0, P1.period), complex(1, -2 * P1.period)):
        with pytest.raises(NearPole) as info:
            zeta_eval(P1, s)
        assert abs(info.value.pole - s) < 1e-9
    zeta_eval(P1, 1 + 1e-9)  # u-distance ~ 7e-10, outside the guard


def test_matches_brute_force_exp_series():
    # Z(u) = exp(sum N_n u^n / n) with brute-force counts, independent of the L-polynomial
    for text in ["ell p=2 a3=1", "hyp p=2 f=x^5 h=1", "hyp p=3 f=x^4+x+2"]:
        c = parse_curve(text)
        z = curve_zeta(c)
        s = 4.0
        u = c.q**-s
        n_max = int(math.log(2**13) / math.log(c.q))
        series = sum(count_points(c, n) * u**n / n for n in range(1, n_max + 1))
        assert abs(math.exp(series) - zeta_eval(z, s).real) < 1e-10


def test_dirichlet_examples():
    b_total = zeta_dirichlet_partial(P1, 2, 40)
    assert abs(b_total - 8 / 3) / (8 / 3) < 1e-6
    assert zeta_dirichlet_partial(P1, 2, 0) == 1


def test_euler_examples():
    tab = prime_table_from_lpoly(P1.L, 20)
    assert euler_product_partial(P1, tab, 2, 0) == 1
    assert abs(euler_product_partial(P1, tab, 2, 20) - 8 / 3) / (8 / 3) < 1e-6
    tab = prime_table_from_lpoly(ELL.L, 20)
    assert abs(euler_product_partial(ELL, tab, 3, 20) - zeta_eval(ELL, 3)) < 1e-8
    with pytest.raises(ValueError):
        euler_product_partial(ELL, tab, 3, 21)


@pytest.mark.parametrize("text", CURVES)
def test_series_decay_geometrically(text):
    z = curve_zeta(parse_curve(text))
    tab = prime_table_from_lpoly(z.L, 40)
    for s in (2.0, 3.0):
        exact = zeta_eval(z, s)
        bound = lambda D: 10 * (1 + z.g) * z.q ** (-D * (s - 1))  # noqa: E731
        for D in (5, 10, 20, 40):
            err_d = abs(zeta_dirichlet_partial(z, s, D) - exact)
            err_e = abs(euler_product_partial(z, tab, s, D) - exact)
            assert err_d <= bound(D) + 1e-14 * abs(exact)
            assert err_e <= bound(D) + 1e-14 * abs(exact)


def test_zero_examples():
    assert zeta_zeros(P1, (-100, 100)) == []
    zs = zeta_zeros(ELL, (-3, 3))
    t = math.pi / (2 * math.log(2))
    assert len(zs) == 2
    assert abs(zs[0] - complex(0.5, -t)) < 1e-12 and abs(zs[1] - complex(0.5, t)) < 1e-12
    assert zeta_zeros(ELL, (3, 4)) == []
    many = zeta_zeros(ELL, (-20, 20))
    assert all(abs(s.real - 0.5) < 1e-12 for s in many)
    assert len(many) == len({round(s.imag, 9) for s in many})


@pytest.mark.parametrize("text", CURVES)
def test_zeros_are_zeros(text):
    z = curve_zeta(parse_curve(text))
    for s in zeta_zeros(z, (-10, 10)):
        assert abs(zeta_eval(z, s)) <= 1e-8


@pytest.mark.parametrize("text", CURVES)
def test_functional_equation_grid(text):
    z = curve_zeta(parse_curve(text))
    assert len(fe_check_grid(z)) == 50
    assert max_fe_residual(z) <= 1e-10


finite = st.floats(-3, 4, allow_nan=False)


@given(finite, finite)
def test_periodicity(x, y):
    s = complex(x, y)
    u = cmath.exp(-s * ELL.log_q)
    # stay off the poles, where rounding in the 2 pi i shift is amplified by 1/|1 - u|
    assume(min(abs(u - 1), abs(u - 0.5)) > 1e-2)
    a, b = zeta_eval(ELL, s), zeta_eval(ELL, s + 1j * ELL.period)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@given(st.floats(-2, 3), st.floats(-5, 5))
def test_functional_equation_random(x, y):
    z = curve_zeta(parse_curve("hyp p=5 f=x^5+x+1"))
    s = complex(x, y)
    u = z.u(s)
    assume(min(abs(u - 1), abs(u - 1 / z.q), abs(z.u(1 - s) - 1), abs(z.u(1 - s) - 1 / z.q)) > 1e-6)
    assert functional_equation_residual(z, s) <= 1e-10
