"""Independent reference computations used by the test-suite.

Nothing here imports zetareg: each oracle reaches its value by a route
that shares no code with the implementation.
"""

from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import exp1

SIEVE_X = 10**7


@lru_cache(maxsize=2)
def primes_upto(n):
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for i in range(3, int(n**0.5) + 1, 2):
        if is_p[i]:
            is_p[i * i :: 2 * i] = False
    return np.flatnonzero(is_p)


def prime_sum(s, X=SIEVE_X, modulus=None, residue=None, tail=True):
    """sum over primes p (optionally p = residue mod modulus) of p^-s, s real > 1.

    Primes up to X are summed exactly; beyond X the prime number theorem
    density 1/ln x (divided by phi(m) in a progression) gives the tail
    integral E1((s - 1) ln X).
    """
    p = primes_upto(X).astype(float)
    share = 1.0
    if modulus is not None:
        p = p[primes_upto(X) % modulus == residue]
        share = 0.5  # phi(m) = 2 for m = 3, 4, 6
    head = float(np.sum(np.sort(p ** (-s))))
    if not tail:
        return head
    return head + share * float(exp1((s - 1) * np.log(X)))


def _mobius(n):
    mu, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            mu = -mu
        f += 1
    return -mu if n > 1 else mu


def projective_line_prime_counts(q, n_max):
    """pi(n) for P^1 over F_q: q + 1 in degree 1, Gauss's necklace count otherwise."""
    out = [q + 1]
    for n in range(2, n_max + 1):
        total = sum(_mobius(n // d) * q**d for d in range(1, n + 1) if n % d == 0)
        out.append(total // n)
    return out


def projective_line_prime_zeta(q, s, n_max=200):
    """Exact rational partial sum of pi(n) q^{-ns} for integer s, as a float."""
    pis = projective_line_prime_counts(q, n_max)
    return float(sum(Fraction(pi, q ** (n * s)) for n, pi in enumerate(pis, start=1)))


def riemann_zero_ordinates_mp(count=3):
    """First zeros of zeta on the critical line by bisection on mpmath's Hardy Z."""
    mpmath.mp.dps = 30
    out = []
    t, step = mpmath.mpf(10), mpmath.mpf("0.05")
    prev = mpmath.siegelz(t)
    while len(out) < count:
        nxt = mpmath.siegelz(t + step)
        if prev * nxt < 0:
            out.append(float(mpmath.findroot(mpmath.siegelz, (t, t + step), solver="bisect", tol=1e-25)))
        t, prev = t + step, nxt
    return out
