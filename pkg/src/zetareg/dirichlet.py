"""Riemann/Hurwitz zeta, real Dirichlet L-functions, Moebius, sieve, zero scan.

All zeta-type values go through one Euler-Maclaurin kernel for
sum_{n>=0} (n + a)^{-s}: N terms summed directly, then the integral,
half-endpoint and M Bernoulli corrections at x = N + a.  Double
precision throughout; the validated domain is Re(s) >= -1 with
|Im(s)| <= 60 (larger |Im(s)| is fine once Re(s) >= 3, where the
series is dominated by its first terms).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, PoleAtOne, TrivialCharacter

EM_TERMS = 12
SIEVE_LIMIT = 10**8


class OutsideValidatedDomain(UserWarning):
    pass


@lru_cache(maxsize=None)
def bernoulli_numbers(m=30):
    """Exact B_0..B_m (B_1 = -1/2) from the standard recurrence."""
    B = [Fraction(1)]
    for n in range(1, m + 1):
        acc = sum(math.comb(n + 1, k) * B[k] for k in range(n))
        B.append(-acc / (n + 1))
    return tuple(B)


@dataclass(frozen=True)
class EMParams:
    N: int
    M: int = EM_TERMS

    @property
    def bernoulli(self):
        """Exact B_2, B_4, ..., B_{2M}."""
        B = bernoulli_numbers(30)
        return tuple(B[2 * j] for j in range(1, self.M + 1))

    def __post_init__(self):
        if self.M > 15:
            raise ValueError("at most 15 Bernoulli corrections are tabulated")


@lru_cache(maxsize=None)
def _em_coeffs(M):
    B = bernoulli_numbers(30)
    return tuple(float(B[2 * j] / math.factorial(2 * j)) for j in range(1, M + 1))


def em_params(s):
    return EMParams(N=20 + int(math.ceil(abs(s))))


def _check_domain(s):
    if s.real < -1 or (abs(s.imag) > 60 and s.real < 3):
        warnings.warn(f"s = {s} is outside the validated domain", OutsideValidatedDomain, stacklevel=3)


def _rising(s, r):
    out = 1.0 + 0j
    for i in range(r):
        out *= s + i
    return out


def _rising_deriv(s, r):
    total = 0j
    for i in range(r):
        prod = 1.0 + 0j
        for j in range(r):
            if j != i:
                prod *= s + j
        total += prod
    return total


def _exprel(z):
    """(e^z - 1)/z, accurate near 0."""
    if abs(z) < 0.1:
        term, acc = 1.0 + 0j, 0j
        for k in range(1, 14):
            acc += term
            term *= z / (k + 1)
        return acc
    return (cmath.exp(z) - 1) / z


def _em(s, a, params, derivative=False, pole_free=False):
    """sum_{n>=0} (n+a)^{-s} (or its s-derivative) by Euler-Maclaurin.

    ``pole_free`` replaces the integral term x^{1-s}/(s-1) by
    (x^{1-s} - 1)/(s-1); the dropped 1/(s-1) cancels in character sums.
    """
    N, M = params.N, params.M
    n = np.arange(N, dtype=float) + a
    logn = np.log(n)
    terms = np.exp(-s * logn)
    x = N + a
    lx = math.log(x)
    xs = cmath.exp(-s * lx)
    coeffs = _em_coeffs(M)
    if not derivative:
        total = complex(np.sum(terms))
        if pole_free:
            total += -lx * _exprel((1 - s) * lx)
        else:
            total += x * xs / (s - 1)
        total += 0.5 * xs
        xp = xs / x
        for j, c in enumerate(coeffs, start=1):
            total += c * _rising(s, 2 * j - 1) * xp
            xp /= x * x
        return total
    total = complex(-np.sum(logn * terms))
    if pole_free:
        # d/ds of (x^{1-s} - 1)/(s - 1)
        z = (1 - s) * lx
        val = -lx * _exprel(z)
        total += -(lx * x * xs + val) / (s - 1) if abs(s - 1) > 1e-6 else 0.5 * lx * lx
    else:
        integral = x * xs / (s - 1)
        total += -integral * (lx + 1 / (s - 1))
    total += -0.5 * lx * xs
    xp = xs / x
    for j, c in enumerate(coeffs, start=1):
        r = 2 * j - 1
        total += c * xp * (_rising_deriv(s, r) - lx * _rising(s, r))
        xp /= x * x
    return total


def riemann_zeta(s):
    """zeta(s) for s != 1."""
    s = complex(s)
    if s == 1:
        raise PoleAtOne("zeta has a pole at s = 1")
    _check_domain(s)
    return _em(s, 1.0, em_params(s))


def zeta_derivative(s):
    """zeta'(s) by term-wise differentiated Euler-Maclaurin."""
    s = complex(s)
    if s == 1:
        raise PoleAtOne("zeta has a pole at s = 1")
    _check_domain(s)
    return _em(s, 1.0, em_params(s), derivative=True)


def hurwitz_zeta(s, a):
    """sum_{n>=0} (n + a)^{-s} for 0 < a <= 1."""
    s = complex(s)
    if not 0 < a <= 1:
        raise ValueError("hurwitz_zeta needs 0 < a <= 1")
    if s == 1:
        raise PoleAtOne("Hurwitz zeta has a pole at s = 1")
    _check_domain(s)
    return _em(s, float(a), em_params(s))


@dataclass(frozen=True)
class Character:
    """Real Dirichlet character; values[a] = chi(a) for a = 0..m-1."""

    modulus: int
    values: tuple

    def __call__(self, n):
        return self.values[n % self.modulus]

    @property
    def is_trivial(self):
        return all(v in (0, 1) for v in self.values)


CHARACTERS = {
    1: Character(1, (1,)),
    3: Character(3, (0, 1, -1)),
    4: Character(4, (0, 1, 0, -1)),
}


def character(m):
    """The nontrivial real character mod 3 or 4 (m = 1 gives the trivial one)."""
    try:
        return CHARACTERS[m]
    except KeyError:
        raise ValueError(f"only real characters mod 1, 3, 4 are tabulated, got {m}") from None


def principal_character(m):
    return Character(m, tuple(1 if math.gcd(a, m) == 1 else 0 for a in range(m)))


def dirichlet_l(s, chi):
    """L(s, chi) = m^{-s} sum_a chi(a) zeta(s, a/m) for a nontrivial real character."""
    if chi.is_trivial:
        raise TrivialCharacter("use riemann_zeta with Euler-factor corrections instead")
    s = complex(s)
    _check_domain(s)
    m = chi.modulus
    params = em_params(s)
    total = 0j
    for a in range(1, m + 1):
        c = chi(a)
        if c:
            total += c * _em(s, a / m, params, pole_free=True)
    return cmath.exp(-s * math.log(m)) * total


def mobius(n):
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    mu, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            mu = -mu
        f += 1
    return -mu if n > 1 else mu


@lru_cache(maxsize=8)
def _mobius_table(n_max):
    mu = np.ones(n_max + 1, dtype=np.int8)
    mu[0] = 0
    for p in prime_sieve(n_max):
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return tuple(int(v) for v in mu)


def mobius_sieve(n_max):
    """Table mu[0..n_max] (mu[0] = 0 as padding)."""
    return _mobius_table(max(int(n_max), 1))


def squarefree_upto(k_max):
    mu = mobius_sieve(k_max)
    return [k for k in range(1, k_max + 1) if mu[k] != 0]


def prime_sieve(n_max):
    """Primes <= n_max by the sieve of Eratosthenes."""
    n_max = int(n_max)
    if n_max > SIEVE_LIMIT:
        raise BudgetExceeded(f"sieve limit {n_max} exceeds {SIEVE_LIMIT}")
    if n_max < 2:
        return np.array([], dtype=np.int64)
    is_p = np.ones(n_max + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, int(n_max**0.5) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return np.flatnonzero(is_p).astype(np.int64)


# --- critical-line zeros ------------------------------------------------------


def riemann_siegel_theta(t):
    """theta(t) from the Stirling series, first four correction terms (t >= 5)."""
    return (
        0.5 * t * math.log(t / (2 * math.pi))
        - 0.5 * t
        - math.pi / 8
        + 1 / (48 * t)
        + 7 / (5760 * t**3)
        + 31 / (80640 * t**5)
        + 127 / (430080 * t**7)
    )


def hardy_z(t):
    """Real-valued Z(t) = exp(i theta(t)) zeta(1/2 + i t)."""
    return (cmath.exp(1j * riemann_siegel_theta(t)) * riemann_zeta(complex(0.5, t))).real


def _bisect(f, lo, hi, flo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def zeta_zero_scan(t_range, step=0.05, tol=1e-10):
    """Ordinates of zeros of zeta on the critical line inside t_range (subset of [0, 60])."""
    t0, t1 = t_range
    if t0 < 0 or t1 > 60:
        raise ValueError("zeta_zero_scan is validated on [0, 60] only")
    # no zeros below t = 5; the Stirling series for theta needs t >= 5
    t0 = max(t0, 5.0)
    zeros = []
    if t1 <= t0:
        return zeros
    n = int(math.ceil((t1 - t0) / step))
    grid = [t0 + (t1 - t0) * i / n for i in range(n + 1)]
    prev_t, prev_z = grid[0], hardy_z(grid[0])
    for t in grid[1:]:
        z = hardy_z(t)
        if prev_z == 0:
            zeros.append(prev_t)
        elif (z > 0) != (prev_z > 0) and z != 0:
            zeros.append(_bisect(hardy_z, prev_t, t, prev_z, tol))
        prev_t, prev_z = t, z
    if prev_z == 0:
        zeros.append(prev_t)
    return zeros
