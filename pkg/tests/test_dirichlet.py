import cmath
import math
import warnings
from fractions import Fraction

import hypothesis.strategies as st
import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings

import oracles
from zetareg.dirichlet import (
    EMParams,
    OutsideValidatedDomain,
    bernoulli_numbers,
    character,
    dirichlet_l,
    hardy_z,
    hurwitz_zeta,
    mobius,
    mobius_sieve,
    prime_sieve,
    principal_character,
    riemann_zeta,
    zeta_derivative,
    zeta_zero_scan,
)
from zetareg.errors import BudgetExceeded, PoleAtOne, TrivialCharacter

CATALAN = 0.915965594177219015


def _mp(x):
    return complex(x)


def _cohen_alternating(terms, n=60):
    """Cohen-Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a_k."""
    d = (3 + math.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b, c, total = -1.0, -d, 0j
    for k in range(n):
        c = b - c
        total += c * terms(k)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1))
    return total / d


def _eta(s):
    return _cohen_alternating(lambda k: cmath.exp(-s * math.log(k + 1)))


def test_zeta_examples():
    assert abs(riemann_zeta(2) - math.pi**2 / 6) < 1e-14
    assert abs(riemann_zeta(0) + 0.5) < 1e-14
    assert abs(zeta_derivative(0) + 0.5 * math.log(2 * math.pi)) < 1e-12
    with pytest.raises(PoleAtOne):
        riemann_zeta(1)
    with pytest.raises(PoleAtOne):
        zeta_derivative(1)


def test_zeta_direct_sum():
    n = np.arange(1, 10**6 + 1, dtype=float)
    head = float(np.sum(1 / n[::-1] ** 2))
    # Euler-Maclaurin tail beyond N: 1/N - 1/(2 N^2) + 1/(6 N^3)
    N = 1e6
    tail = 1 / N - 1 / (2 * N**2) + 1 / (6 * N**3)
    assert abs(riemann_zeta(2) - head - tail) <= 1e-10


def test_zeta_against_mpmath_grid():
    mpmath.mp.dps = 30
    worst = 0.0
    for x in np.linspace(-1, 3, 9):
        for y in np.linspace(-60, 60, 13):
            s = complex(x, y)
            if abs(s - 1) < 1e-3:
                continue
            ref = _mp(mpmath.zeta(s))
            worst = max(worst, abs(riemann_zeta(s) - ref) / max(1.0, abs(ref)))
    assert worst < 1e-12


def test_derivative_against_finite_difference():
    h = 1e-4
    for s in [2, 0.5 + 3j, -0.7 + 10j, 2.5 - 40j]:
        fd1 = (riemann_zeta(s + h) - riemann_zeta(s - h)) / (2 * h)
        fd2 = (riemann_zeta(s + h / 10) - riemann_zeta(s - h / 10)) / (h / 5)
        fd = (100 * fd2 - fd1) / 99
        assert abs(zeta_derivative(s) - fd) <= 1e-8
        ref = _mp(mpmath.zeta(s, derivative=1))
        assert abs(zeta_derivative(s) - ref) <= 1e-10 * max(1, abs(ref))


def test_domain_warning():
    with pytest.warns(OutsideValidatedDomain):
        riemann_zeta(-2)
    with pytest.warns(OutsideValidatedDomain):
        riemann_zeta(0.5 + 80j)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        riemann_zeta(0.5 + 50j)
        riemann_zeta(5 + 200j)


def test_em_params():
    p = EMParams(N=30)
    assert p.M == 12 and len(p.bernoulli) == 12
    assert bernoulli_numbers()[30] == Fraction(8615841276005, 14322)
    assert p.bernoulli[0] == bernoulli_numbers()[2] == Fraction(1, 6) and p.bernoulli[-1] == bernoulli_numbers()[24]
    with pytest.raises(ValueError):
        EMParams(N=20, M=16)


def test_hurwitz_examples():
    assert abs(hurwitz_zeta(2, 1) - riemann_zeta(2)) < 1e-12
    assert abs(hurwitz_zeta(2, 0.5) - math.pi**2 / 2) < 1e-12
    total = sum(hurwitz_zeta(2, a / 4) for a in range(1, 5)) / 16
    assert abs(total - riemann_zeta(2)) < 1e-12
    with pytest.raises(ValueError):
        hurwitz_zeta(2, 0)
    with pytest.raises(PoleAtOne):
        hurwitz_zeta(1, 0.5)


def test_hurwitz_against_mpmath():
    mpmath.mp.dps = 30
    for s in [2, 0.3 + 5j, -0.5 - 20j, 1.5 + 59j]:
        for a in [0.1, 1 / 3, 0.75, 1.0]:
            ref = _mp(mpmath.zeta(s, a))
            assert abs(hurwitz_zeta(s, a) - ref) <= 1e-11 * max(1, abs(ref))


def test_l_function_examples():
    chi4, chi3 = character(4), character(3)
    assert abs(dirichlet_l(1, chi4) - math.pi / 4) < 1e-11
    leibniz = _cohen_alternating(lambda k: 1 / (2 * k + 1))
    assert abs(dirichlet_l(1, chi4) - leibniz) < 1e-11
    assert abs(dirichlet_l(2, chi4) - CATALAN) < 1e-11
    assert abs(dirichlet_l(2, chi4) - _cohen_alternating(lambda k: 1 / (2 * k + 1) ** 2)) < 1e-11
    n = np.arange(1, 10**6 + 1)
    direct = float(np.sum(np.where(n % 3 == 1, 1.0, np.where(n % 3 == 2, -1.0, 0.0)) / n.astype(float) ** 2))
    assert abs(dirichlet_l(2, chi3) - direct) < 1e-9
    with pytest.raises(TrivialCharacter):
        dirichlet_l(2, character(1))
    with pytest.raises(TrivialCharacter):
        dirichlet_l(2, principal_character(4))


def test_l_function_against_mpmath():
    mpmath.mp.dps = 30
    for m, chi in ((3, [0, 1, -1]), (4, [0, 1, 0, -1])):
        for s in [1, 0.5 + 14j, -0.8 + 3j, 2.2 - 50j]:
            ref = _mp(mpmath.dirichlet(s, chi))
            assert abs(dirichlet_l(s, character(m)) - ref) <= 1e-11 * max(1, abs(ref))


def test_character_axioms():
    for m in (3, 4):
        chi = character(m)
        assert sum(chi(a) for a in range(m)) == 0
        for a in range(1, 40):
            assert (chi(a) == 0) == (math.gcd(a, m) > 1)
            for b in range(1, 40):
                assert chi(a * b) == chi(a) * chi(b)


def test_mobius_examples():
    assert mobius(1) == 1
    assert (mobius(6), mobius(4), mobius(30)) == (1, 0, -1)
    table = mobius_sieve(1000)
    assert all(table[n] == mobius(n) for n in range(1, 1001))
    for n in range(1, 1001):
        s = sum(table[d] for d in range(1, n + 1) if n % d == 0)
        assert s == (1 if n == 1 else 0)
    with pytest.raises(ValueError):
        mobius(0)


def _factor(n):
    out, f = {}, 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_mobius_determined_by_factorization(a, b):
    fa = _factor(a)
    want = 0 if any(e > 1 for e in fa.values()) else (-1) ** len(fa)
    assert mobius(a) == want
    if math.gcd(a, b) == 1:
        assert mobius(a * b) == mobius(a) * mobius(b)


def test_prime_sieve_examples():
    assert list(prime_sieve(10)) == [2, 3, 5, 7]
    assert list(prime_sieve(1)) == []
    big = prime_sieve(10**6)
    assert len(big) == 78498
    assert np.array_equal(big, oracles.primes_upto(10**6))
    with pytest.raises(BudgetExceeded):
        prime_sieve(10**8 + 1)


@settings(max_examples=30)
@given(st.floats(0.02, 0.98), st.floats(-40, 40))
def test_eta_identity(x, y):
    s = complex(x, y)
    assume(abs(1 - 2 ** (1 - s)) > 1e-3)
    via_eta = _eta(s) / (1 - cmath.exp((1 - s) * math.log(2)))
    assert abs(riemann_zeta(s) - via_eta) <= 1e-10 * max(1, abs(via_eta))


@settings(max_examples=30)
@given(st.sampled_from([3, 4]), st.floats(-1, 3), st.floats(-30, 30))
def test_hurwitz_decomposition(m, x, y):
    s = complex(x, y)
    assume(abs(s - 1) > 1e-2)
    total = sum(hurwitz_zeta(s, a / m) for a in range(1, m + 1))
    want = cmath.exp(s * math.log(m)) * riemann_zeta(s)
    assert abs(total - want) <= 1e-10 * max(1, abs(want))


def test_zero_scan_examples():
    ref = oracles.riemann_zero_ordinates_mp(3)
    z = zeta_zero_scan((10, 15))
    assert len(z) == 1 and abs(z[0] - ref[0]) < 1e-8
    assert zeta_zero_scan((0, 10)) == []
    z = zeta_zero_scan((20, 26))
    assert len(z) == 2 and max(abs(a - b) for a, b in zip(z, ref[1:])) < 1e-8
    with pytest.raises(ValueError):
        zeta_zero_scan((0, 61))


def test_zero_scan_values_vanish():
    zs = zeta_zero_scan((0, 60))
    assert len(zs) == 13  # N(60) from the Riemann-von Mangoldt count
    for t in zs:
        assert abs(riemann_zeta(complex(0.5, t))) <= 1e-6
        assert abs(hardy_z(t)) <= 1e-6
