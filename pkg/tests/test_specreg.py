import cmath
import math

import hypothesis.strategies as st
import mpmath
import pytest
from hypothesis import given, settings

from zetareg.curves import parse_curve
from zetareg.errors import DomainError, ParseError
from zetareg.lfunc import LPolynomial
from zetareg.primezeta import POLE, prime_zeta_for_curve, prime_zeta_from_lpoly
from zetareg.specreg import (
    CircleLaplacian,
    CurvePrimes,
    Explicit,
    PowerFamily,
    ProgressionPrimes,
    RationalPrimes,
    RegFailure,
    RegSuccess,
    WZero,
    parse_explicit,
    regularized_det,
    richardson_derivative,
    scaled,
    scaling_check,
    spectral_zeta,
    w_zero,
)

P1 = CurvePrimes(prime_zeta_from_lpoly(LPolynomial(2, 0, (1,))))
ELL = CurvePrimes(prime_zeta_from_lpoly(LPolynomial(2, 1, (1, 0, 2))))
HYP = CurvePrimes(prime_zeta_for_curve(parse_curve("hyp p=5 f=x^5+x+1")))
PRIME_SPECTRA = [P1, ELL, HYP, RationalPrimes(), ProgressionPrimes(4), ProgressionPrimes(3)]
ANALYTIC = [PowerFamily(1), PowerFamily(2), PowerFamily(0.5), PowerFamily(3.5), CircleLaplacian()]


def test_spectral_zeta_examples():
    assert abs(spectral_zeta(PowerFamily(2), 1) - math.pi**2 / 6) < 1e-13
    assert abs(spectral_zeta(CircleLaplacian(), 1) - math.pi**2 / 3) < 1e-13
    assert abs(spectral_zeta(Explicit(((2, 1), (3, 1))), 1) - 5 / 6) < 1e-15


def test_spectral_zeta_series_backed():
    # the circle spectrum summed directly, n != 0, at s = 2
    direct = sum(2 / n**4 for n in range(1, 20000))
    assert abs(spectral_zeta(CircleLaplacian(), 2) - direct) < 1e-12
    mpmath.mp.dps = 20
    assert abs(spectral_zeta(RationalPrimes(), 2) - float(mpmath.primezeta(2))) < 1e-12
    assert abs(spectral_zeta(P1, 2) - 0.8654716839876926) < 1e-12


def test_spectrum_validation():
    with pytest.raises(DomainError):
        Explicit(((0, 1),))
    with pytest.raises(DomainError):
        Explicit(((2, 0),))
    with pytest.raises(DomainError):
        PowerFamily(-1)
    with pytest.raises(DomainError):
        PowerFamily(1, scale=0)
    with pytest.raises(DomainError):
        scaled(PowerFamily(1), -2)


def test_parse_explicit():
    assert parse_explicit("2,3:2") == Explicit(((2.0, 1), (3.0, 2)))
    with pytest.raises(ValueError):
        parse_explicit("2,x")
    with pytest.raises(DomainError):
        parse_explicit("2,-3")


def test_det_examples():
    cases = [(PowerFamily(1), math.sqrt(2 * math.pi)), (PowerFamily(2), 2 * math.pi), (CircleLaplacian(), 4 * math.pi**2)]
    for spec, det in cases:
        r = regularized_det(spec)
        assert isinstance(r, RegSuccess)
        assert abs(r.det - det) / det < 1e-12
        assert r.det == math.exp(-r.zeta_prime_at_zero)
    assert regularized_det(PowerFamily(2)).zeta_at_zero == pytest.approx(-0.5, abs=1e-15)
    assert regularized_det(CircleLaplacian()).zeta_at_zero == pytest.approx(-1.0, abs=1e-15)
    r = regularized_det(Explicit(((2, 1), (3, 3))))
    assert r.det == pytest.approx(54, rel=1e-14) and r.zeta_at_zero == 4


@pytest.mark.parametrize("spec", ANALYTIC, ids=lambda s: repr(s))
def test_closed_form_matches_finite_difference(spec):
    r = regularized_det(spec)
    assert abs(r.zeta_prime_at_zero - r.fd_zeta_prime_at_zero) <= 1e-8


def test_richardson_on_known_function():
    assert abs(richardson_derivative(math.exp) - 1) < 1e-10
    assert abs(richardson_derivative(math.sin, 1.0) - math.cos(1.0)) < 1e-10


def test_scaling_examples():
    r = scaling_check(PowerFamily(2), 1.0)
    z0, zp = -0.5, regularized_det(PowerFamily(2)).zeta_prime_at_zero
    assert r.rhs == zp and r.abs_err <= 1e-8
    r = scaling_check(PowerFamily(2), math.e)
    assert abs(r.rhs - (1 - math.log(2 * math.pi))) < 1e-12 and r.ok
    assert scaling_check(CircleLaplacian(), 2).abs_err <= 1e-8
    # the opposite sign for the log term is rejected by the numbers
    wrong = math.log(4) * z0 + zp
    assert abs(scaling_check(PowerFamily(2), 2).lhs - wrong) > 1e-3
    with pytest.raises(DomainError):
        scaling_check(P1, 2)


@pytest.mark.parametrize("mu", [0.5, 2.0, math.e])
@pytest.mark.parametrize("alpha", [1, 2])
def test_scaling_power_families(alpha, mu):
    assert scaling_check(PowerFamily(alpha), mu).abs_err <= 1e-8


finite_lists = st.lists(
    st.tuples(st.floats(0.05, 1e3, allow_nan=False), st.integers(1, 4)), min_size=1, max_size=6
)


@given(finite_lists, finite_lists)
def test_det_multiplicative(a, b):
    da = regularized_det(Explicit(tuple(a))).det
    db = regularized_det(Explicit(tuple(b))).det
    dab = regularized_det(Explicit(tuple(a + b))).det
    assert abs(dab - da * db) <= 1e-12 * da * db


@pytest.mark.filterwarnings("ignore::zetareg.dirichlet.OutsideValidatedDomain")
@settings(max_examples=40)
@given(
    st.sampled_from(ANALYTIC + [Explicit(((2.0, 1), (7.5, 3)))]),
    st.floats(0.1, 10),
    st.floats(-0.8, 3),
    st.floats(-20, 20),
)
def test_exact_scale_relation(spec, mu, x, y):
    s = complex(x, y)
    if isinstance(spec, PowerFamily) and abs(spec.alpha * s - 1) < 1e-3:
        return
    if isinstance(spec, CircleLaplacian) and abs(2 * s - 1) < 1e-3:
        return
    base = spectral_zeta(spec, s)
    want = cmath.exp(-s * math.log(mu * mu)) * base
    assert abs(spectral_zeta(scaled(spec, mu), s) - want) <= 1e-12 * abs(want)


@pytest.mark.parametrize("spec", PRIME_SPECTRA, ids=lambda s: type(s).__name__)
def test_prime_spectra_fail(spec):
    r = regularized_det(spec)
    assert isinstance(r, RegFailure)
    assert r.reason == "natural_boundary"
    assert r.nearest_singularities
    assert all(0.005 < e.s.real < 0.01 for e in r.nearest_singularities)
    assert r.diverging_term_index is not None
    assert r.obstructed_terms == ("P(0)", "dP/ds(0)")
    assert r.evidence.strictly_increasing
    d = r.to_dict()
    assert d["outcome"] == "failure" and set(d) >= {"reason", "nearest", "diverging_term_index"}


def test_curve_failure_example():
    r = regularized_det(P1)
    first = r.nearest_singularities[0]
    assert first.kind == POLE and first.k == 199 and abs(first.s - 1 / 199) < 1e-15
    assert r.diverging_term_index == 199


@settings(max_examples=20)
@given(
    st.sampled_from([P1, ELL, HYP]),
    st.lists(st.floats(0.011, 0.9), min_size=0, max_size=5),
    st.sampled_from([0.01, 0.005]),
)
def test_failure_stable_under_schedule(spec, extra, last):
    schedule = sorted(set(extra), reverse=True) + [last]
    r = regularized_det(spec, sigmas=tuple(schedule))
    assert isinstance(r, RegFailure)
    assert r.nearest_singularities and all(e.s.real < last for e in r.nearest_singularities)


def test_w_zero():
    w = w_zero(PowerFamily(2))
    assert isinstance(w, WZero) and abs(w.value + 0.5 * math.log(2 * math.pi)) < 1e-12
    assert w_zero(Explicit(((1, 1),))).value == 0
    # W[0] for mu^2 D follows the scaling law
    w2 = w_zero(PowerFamily(2), mu=2)
    assert abs(w2.value - (-0.5 * (math.log(2 * math.pi) + math.log(4) * -0.5))) < 1e-12
    for spec in PRIME_SPECTRA:
        assert isinstance(w_zero(spec), RegFailure)


def test_success_dict_schema():
    d = regularized_det(PowerFamily(1)).to_dict()
    assert list(d) == ["outcome", "zeta0", "zeta_prime0", "det"]


def test_parse_error_is_value_error():
    assert issubclass(ParseError, ValueError)
