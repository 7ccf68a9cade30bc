"""L-polynomials of curves: exact construction, functional equation, Weil RH.

Z(u) = exp(sum_n N_n u^n / n) = L(u) / ((1 - u)(1 - q u)), so the first
g point counts fix a_0..a_g and the symmetry a_{2g-i} = q^{g-i} a_i fixes
the rest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import GenusMismatch, NonIntegralCoefficient, RootFindingFailed


@dataclass(frozen=True)
class LPolynomial:
    q: int
    g: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.g + 1 or self.coeffs[0] != 1:
            raise GenusMismatch(f"need 2g+1 = {2 * self.g + 1} coefficients starting with 1")

    @cached_property
    def roots(self):
        """Complex roots u_j of L (not inverse roots); 2g of them."""
        return find_roots(self)

    @property
    def inverse_roots(self):
        return 1 / self.roots

    def __call__(self, u):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def derivative(self, u):
        acc = 0j
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * u + i * self.coeffs[i]
        return acc

    def to_json(self):
        return json.dumps({"q": self.q, "g": self.g, "coeffs": list(self.coeffs)}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        return cls(int(data["q"]), int(data["g"]), tuple(int(c) for c in data["coeffs"]))


def _series_log_zeta(N, order):
    return [Fraction(0)] + [Fraction(N[n - 1], n) for n in range(1, order + 1)]


def _series_exp(f, order):
    """exp of a power series with f[0] = 0, exact, via E' = f' E."""
    E = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        E[n] = sum(k * f[k] * E[n - k] for k in range(1, n + 1)) / n
    return E


def lpoly_from_counts(q, g, counts):
    """L-polynomial from N_1..N_g (extra counts beyond g are ignored)."""
    if len(counts) < g:
        raise GenusMismatch(f"genus {g} needs {g} point counts, got {len(counts)}")
    Z = _series_exp(_series_log_zeta(counts, g), g)
    # multiply by (1 - u)(1 - q u) = 1 - (q + 1) u + q u^2
    factor = [1, -(q + 1), q]
    low = []
    for i in range(g + 1):
        val = sum(factor[j] * Z[i - j] for j in range(3) if i - j >= 0)
        if val.denominator != 1:
            raise NonIntegralCoefficient(f"a_{i} = {val} is not an integer")
        low.append(int(val))
    coeffs = low + [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    return LPolynomial(q, g, tuple(coeffs))


def check_functional_equation(L):
    a, g, q = L.coeffs, L.g, L.q
    return all(a[2 * g - i] == q ** (g - i) * a[i] for i in range(g + 1))


def _aberth(coeffs, seeds, tol=1e-15, max_iter=200):
    p = np.polynomial.Polynomial(coeffs)
    dp = p.deriv()
    z = np.array(seeds, dtype=complex)
    for _ in range(max_iter):
        ratio = p(z) / dp(z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        w = ratio / (1 - ratio * inv.sum(axis=1))
        z = z - w
        if np.max(np.abs(w)) <= tol * max(1.0, np.max(np.abs(z))):
            break
    return z


def _qtrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _qdivmod(f, g):
    f = [Fraction(c) for c in f]
    quot = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] / g[-1]
        quot[i] = c
        for j, gj in enumerate(g):
            f[i + j] -= c * gj
    return _qtrim(quot), _qtrim(f[: len(g) - 1])


def _qgcd(f, g):
    f, g = _qtrim(f), _qtrim(g)
    while g:
        f, g = g, _qdivmod(f, g)[1]
    return [c / f[-1] for c in f]


def _qderiv(f):
    return [i * c for i, c in enumerate(f)][1:]


def _qsub(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _qtrim([x - y for x, y in zip(f, g)])


def squarefree_factors(coeffs):
    """Yun's algorithm over Q: [(factor, multiplicity), ...] with simple-rooted factors."""
    f = [Fraction(c) for c in coeffs]
    fp = _qderiv(f)
    a = _qgcd(f, fp)
    b = _qdivmod(f, a)[0]
    c = _qdivmod(fp, a)[0]
    d = _qsub(c, _qderiv(b))
    out, i = [], 1
    while len(b) > 1:
        a = _qgcd(b, d) if d else b
        if len(a) > 1:
            out.append((a, i))
        b = _qdivmod(b, a)[0]
        c = _qdivmod(d, a)[0] if d else []
        d = _qsub(c, _qderiv(b))
        i += 1
    return out


def _residual_ok(coeffs, roots):
    poly = np.polynomial.Polynomial(coeffs)
    scale = sum(abs(c) * np.abs(roots) ** i for i, c in enumerate(coeffs))
    return bool(np.all(np.abs(poly(roots)) <= 1e-12 * scale))


def _simple_roots(coeffs, radius):
    n = len(coeffs) - 1
    seeds = radius * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
    roots = _aberth(coeffs, seeds)
    if np.all(np.isfinite(roots)) and _residual_ok(coeffs, roots):
        return roots
    roots = _aberth(coeffs, np.roots(coeffs[::-1]))
    if not _residual_ok(coeffs, roots):
        raise RootFindingFailed(f"roots of {coeffs} did not converge")
    return roots


def find_roots(L):
    """Roots of L(u) with multiplicity.

    Repeated factors are split off exactly first (they are common for
    supersingular curves); each simple-rooted factor then goes through
    Aberth iteration seeded on |u| = q^{-1/2}, with companion-matrix
    eigenvalues as the fallback seed.
    """
    if L.g == 0:
        return np.array([], dtype=complex)
    radius = L.q**-0.5
    parts = []
    for factor, mult in squarefree_factors(L.coeffs):
        roots = _simple_roots([float(c) for c in factor], radius)
        parts.extend([roots] * mult)
    return np.sort_complex(np.concatenate(parts))


@dataclass(frozen=True)
class RHReport:
    ok: bool
    max_deviation: float


def check_weil_rh(L, tol=1e-9):
    if tol <= 0:
        raise ValueError("tol must be positive")
    if L.g == 0:
        return RHReport(True, 0.0)
    dev = float(np.max(np.abs(np.abs(L.roots) - L.q**-0.5)))
    return RHReport(dev <= tol, dev)


def power_sums(L, n_max):
    """s_n = sum_i alpha_i^n over inverse roots, exact, by Newton's identities."""
    a = list(L.coeffs)
    deg = len(a) - 1
    s = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = -n * a[n] if n <= deg else 0
        for i in range(1, min(n - 1, deg) + 1):
            acc -= a[i] * s[n - i]
        s[n] = acc
    return s[1:]


def counts_from_lpoly(L, n_max):
    """N_1..N_{n_max} with N_n = q^n + 1 - sum_i alpha_i^n."""
    return [L.q**n + 1 - sn for n, sn in enumerate(power_sums(L, n_max), start=1)]


def class_number(L):
    return sum(L.coeffs)


def lpoly_for_curve(curve):
    from .curves import count_points

    counts = [count_points(curve, n) for n in range(1, curve.genus + 1)]
    return lpoly_from_counts(curve.q, curve.genus, counts)


def effective_divisor_counts(L, n_max):
    """b_0..b_{n_max}: coefficients of L(u)/((1-u)(1-qu)), exact."""
    q = L.q
    geo = [(q ** (n + 1) - 1) // (q - 1) for n in range(n_max + 1)]
    return [
        sum(L.coeffs[i] * geo[n - i] for i in range(min(n, len(L.coeffs) - 1) + 1))
        for n in range(n_max + 1)
    ]


def hasse_weil_ok(q, g, N):
    """|N_n - (q^n + 1)| <= 2 g q^{n/2} for every supplied count (exact)."""
    for n, Nn in enumerate(N, start=1):
        dev = abs(Nn - (q**n + 1))
        # dev <= 2 g q^{n/2}  <=>  dev^2 <= 4 g^2 q^n
        if dev * dev > 4 * g * g * q**n:
            return False
    return True

