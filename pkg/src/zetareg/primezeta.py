"""Prime zeta functions and their singularity lattice.

For a curve C over F_q,

    P(s, C) = sum over prime divisors of N(p)^{-s} = sum_n pi_C(n) q^{-ns},

and Moebius inversion of log zeta(s, C) = sum_n P(ns, C)/n gives

    P(s, C) = sum_k mu(k)/k * Log zeta(ks, C),

which continues P to Re(s) > 0 minus the points s = rho/k where rho is a
pole or zero of zeta(., C) and k is square-free.  Those points pile up on
Re(s) = 0.  The same recipe applied to the Riemann zeta function gives the
classical prime zeta function and, through the real characters mod 3 and
4, sums over primes p = 1 (mod m).

Branch convention: every Moebius term uses the principal logarithm of
zeta(ks, .).  Off the real axis in 0 < Re(s) <= 1 the k = 1 term is
therefore one particular branch, not a canonical value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .curves import PrimeCountTable, prime_counts_from_point_counts
from .dirichlet import (
    character,
    dirichlet_l,
    mobius_sieve,
    riemann_zeta,
    squarefree_upto,
    zeta_zero_scan,
)
from .errors import DomainError, NearSingularity, NonConvergent, UnsupportedModulus
from .lfunc import counts_from_lpoly
from .zetacurve import CurveZeta, log_derivative_u, zeta_of_u, zeta_zeros

SINGULARITY_RADIUS = 1e-8
K_CAP = 500
TERM_TOL = 1e-12
POLE = "pole-of-zeta"
ZERO = "zero-of-zeta"
ZERO_SCAN_HEIGHT = 60.0


@dataclass(frozen=True)
class PrimeZeta:
    z: CurveZeta
    table: PrimeCountTable
    K_default: int | None = None

    @property
    def q(self):
        return self.z.q


def prime_zeta_from_lpoly(L, n_max=30, K_default=None):
    return PrimeZeta(CurveZeta(L), prime_table_from_lpoly(L, n_max), K_default)


def prime_zeta_for_curve(curve, n_max=30, K_default=None):
    from .lfunc import lpoly_for_curve

    return prime_zeta_from_lpoly(lpoly_for_curve(curve), n_max, K_default)


@lru_cache(maxsize=32)
def prime_table_from_lpoly(L, n_max):
    return prime_counts_from_point_counts(L.q, L.g, counts_from_lpoly(L, n_max))


def _table_upto(pz, D):
    if D <= pz.table.n_max:
        return pz.table
    return prime_table_from_lpoly(pz.z.L, D)


def direct_cutoff(q, genus, sigma, tol=1e-13, cap=200_000):
    """Smallest D whose tail bound (2 + 2g)/(D+1) * r^{D+1}/(1-r), r = q^{1-sigma}, is below tol."""
    if sigma <= 1:
        raise NonConvergent(f"the prime-divisor series diverges for Re(s) = {sigma} <= 1")
    log_r = (1 - sigma) * math.log(q)
    c = 2 + 2 * genus
    log_geo = -math.log1p(-math.exp(log_r))
    for D in range(1, cap + 1):
        if math.log(c / (D + 1)) + (D + 1) * log_r + log_geo < math.log(tol):
            return D
    return cap


# --- curve case ---------------------------------------------------------------


def prime_zeta_direct(pz, s, D=None):
    """sum_{n<=D} pi_C(n) q^{-ns}, valid for Re(s) > 1."""
    s = complex(s)
    if D is None:
        D = direct_cutoff(pz.q, pz.z.g, s.real)
    elif s.real <= 1:
        raise NonConvergent(f"direct prime-divisor sum needs Re(s) > 1, got {s}")
    if D == 0:
        return 0j
    table = _table_upto(pz, D)
    q, lq = pz.q, pz.z.log_q
    total = 0j
    qn = 1
    for n in range(1, D + 1):
        qn *= q
        pi_n = table.pi[n - 1]
        if pi_n:
            total += (pi_n / qn) * cmath.exp(n * (1 - s) * lq)
    return total


def truncation_order(pz, sigma):
    """K with max(1, sum|a_i|) q^{-K sigma} (1 + q) < 1e-12, capped at 500."""
    if sigma <= 0:
        raise NonConvergent(f"Moebius continuation needs Re(s) > 0, got {sigma}")
    a_sum = max(1, sum(abs(c) for c in pz.z.L.coeffs))
    K = math.ceil((math.log(a_sum * (1 + pz.q)) - math.log(TERM_TOL)) / (sigma * pz.z.log_q))
    return max(1, min(K, K_CAP))


def _guard_curve(pz, s, k, u):
    z = pz.z
    hit = None
    if abs(u - 1) < SINGULARITY_RADIUS or abs(u - 1 / z.q) < SINGULARITY_RADIUS:
        hit = POLE
    elif z.g and min(abs(u - r) for r in z.L.roots) < SINGULARITY_RADIUS:
        hit = ZERO
    if hit:
        raise NearSingularity(f"term k = {k} at s = {s} sits on a {hit}", s=s, k=k, kind=hit)


def _mobius_terms(pz, s, K, guard):
    s = complex(s)
    if s.real <= 0:
        raise NonConvergent(f"Moebius continuation needs Re(s) > 0, got {s}")
    if K is None:
        K = pz.K_default or truncation_order(pz, s.real)
    mu = mobius_sieve(K)
    for k in range(1, K + 1):
        if mu[k] == 0:
            continue
        u = pz.z.u(k * s)
        if guard:
            _guard_curve(pz, s, k, u)
        yield k, mu[k], u


def prime_zeta_mobius(pz, s, K=None, guard=True):
    """sum_{k<=K} mu(k)/k Log zeta(ks, C), valid for Re(s) > 0 off the singular lattice.

    ``guard=False`` lets a caller probe divergence right up to a singularity.
    """
    total = 0j
    for k, mu_k, u in _mobius_terms(pz, s, K, guard):
        total += mu_k / k * cmath.log(zeta_of_u(pz.z, u))
    return total


def prime_zeta_derivative(pz, s, K=None, guard=True):
    """dP/ds = sum_k mu(k)/k * d/ds log zeta(ks, C), closed form in u = q^{-ks}."""
    lq = pz.z.log_q
    total = 0j
    for k, mu_k, u in _mobius_terms(pz, s, K, guard):
        # (mu/k) * dlog/du * du/ds with du/ds = -k ln q u
        total -= mu_k * lq * u * log_derivative_u(pz.z, u)
    return total


# --- singularity lattice ------------------------------------------------------


@dataclass(frozen=True)
class Singularity:
    s: complex
    k: int
    kind: str


@dataclass(frozen=True)
class SingularityList:
    entries: tuple
    sigma_min: float

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _lattice(sigma_min, t_range, k_max, families):
    """Points rho/k, k square-free, for rho in arithmetic families.

    ``families`` is a list of (rho0, period, kind) with rho = rho0 + i*period*m
    (period None for an isolated rho0).
    """
    t0, t1 = t_range
    found = {}
    for k in squarefree_upto(k_max):
        for rho0, period, kind in families:
            if rho0.real / k <= sigma_min:
                continue
            if period is None:
                ms = [0] if t0 <= rho0.imag / k <= t1 else []
            else:
                lo = math.ceil((t0 * k - rho0.imag) / period - 1e-9)
                hi = math.floor((t1 * k - rho0.imag) / period + 1e-9)
                ms = range(lo, hi + 1)
            for m in ms:
                rho = rho0 + 1j * (period or 0.0) * m
                s = rho / k
                if not t0 - 1e-12 <= s.imag <= t1 + 1e-12:
                    continue
                key = (round(s.real, 10), round(s.imag, 10))
                if key not in found:
                    found[key] = Singularity(s, k, kind)
    entries = sorted(found.values(), key=lambda e: (-e.s.real, e.s.imag, e.k))
    return SingularityList(tuple(entries), float(sigma_min))


def _check_sigma(sigma_min):
    if not sigma_min > 0:
        raise DomainError("sigma_min must be positive")


def singularity_enumerate(pz, sigma_min, t_range, k_max):
    """Singularities s = rho/k of P(., C) with Re(s) > sigma_min and Im(s) in t_range."""
    _check_sigma(sigma_min)
    z = pz.z
    families = [(complex(1.0, 0.0), z.period, POLE)]
    # one representative per zero class modulo the period
    reps = zeta_zeros(z, (-z.period / 2, z.period / 2 - 1e-12)) if z.g else []
    families += [(rho, z.period, ZERO) for rho in reps]
    return _lattice(sigma_min, t_range, k_max, families)


@lru_cache(maxsize=1)
def riemann_zero_ordinates():
    return tuple(zeta_zero_scan((0.0, ZERO_SCAN_HEIGHT)))


def rational_singularities(sigma_min, t_range, k_max):
    """Singularities of the rational prime zeta function.

    Zero-driven points use the critical-line zeros with |Im| <= 60, so they
    are complete only for |Im(s)| * k <= 60.
    """
    _check_sigma(sigma_min)
    families = [(complex(1.0, 0.0), None, POLE)]
    for t in riemann_zero_ordinates():
        families += [(complex(0.5, t), None, ZERO), (complex(0.5, -t), None, ZERO)]
    return _lattice(sigma_min, t_range, k_max, families)


def progression_singularities(m, sigma_min, t_range, k_max):
    """Singularities of sum_{p = 1 mod m} p^{-s} coming from zeta's poles and zeros.

    Both halves of the character decomposition carry log zeta(ks) with
    nonzero weight for every square-free k, so the lattice coincides with
    the rational one; zeros of L(s, chi) are not enumerated.
    """
    _modulus(m)
    return rational_singularities(sigma_min, t_range, k_max)


@dataclass(frozen=True)
class BoundaryRow:
    sigma: float
    count: int
    min_re: float | None
    argmin_k: int | None
    argmin_kind: str | None = None


@dataclass(frozen=True)
class BoundaryReport:
    rows: tuple
    strictly_increasing: bool
    t_range: tuple
    k_max: int
    notes: tuple = field(default=())


def _report(lists, sigmas, t_range, k_max):
    rows = []
    for sigma, sl in zip(sigmas, lists):
        if sl.entries:
            last = min(sl.entries, key=lambda e: (e.s.real, -e.k))
            rows.append(BoundaryRow(float(sigma), len(sl), last.s.real, last.k, last.kind))
        else:
            rows.append(BoundaryRow(float(sigma), 0, None, None, None))
    counts = [r.count for r in rows]
    increasing = all(b > a for a, b in zip(counts, counts[1:]))
    return BoundaryReport(tuple(rows), increasing, tuple(t_range), k_max)


def boundary_evidence_report(pz, sigmas, t_range, k_max):
    """Singularity counts above each sigma; counts should grow as sigma decreases toward 0."""
    lists = [singularity_enumerate(pz, sg, t_range, k_max) for sg in sigmas]
    return _report(lists, sigmas, t_range, k_max)


def rational_boundary_report(sigmas, t_range, k_max):
    lists = [rational_singularities(sg, t_range, k_max) for sg in sigmas]
    return _report(lists, sigmas, t_range, k_max)


# --- rational primes and progressions -----------------------------------------


def _rational_K(sigma):
    if sigma <= 0:
        raise NonConvergent(f"Moebius continuation needs Re(s) > 0, got {sigma}")
    # |log zeta(w)| ~ 2^{-Re w}
    K = math.ceil((math.log(2.0) - math.log(TERM_TOL)) / (sigma * math.log(2.0)))
    return max(1, min(K, K_CAP))


def _log_riemann(w, k, s, guard):
    if guard and abs(w - 1) < SINGULARITY_RADIUS:
        raise NearSingularity(f"term k = {k} at s = {s} sits on the pole of zeta", s=s, k=k, kind=POLE)
    val = riemann_zeta(w)
    if val == 0:
        raise NearSingularity(f"term k = {k} at s = {s} sits on a zero of zeta", s=s, k=k, kind=ZERO)
    return cmath.log(val)


def prime_zeta_rational(s, K=None, guard=True):
    """sum_p p^{-s} as sum_k mu(k)/k log zeta(ks)."""
    s = complex(s)
    K = K or _rational_K(s.real)
    mu = mobius_sieve(K)
    total = 0j
    for k in range(1, K + 1):
        if mu[k]:
            total += mu[k] / k * _log_riemann(k * s, k, s, guard)
    return total


_PRIME_DIVISORS = {3: (3,), 4: (2,)}


def _modulus(m):
    if m not in (3, 4, 6):
        raise UnsupportedModulus(f"only m in {{3, 4, 6}} are supported, got {m}")
    # p = 1 (mod 6) iff p = 1 (mod 3) for every prime p
    return 3 if m == 6 else m


def _log_zeta_principal(w, m, k, s, guard):
    """log of zeta(w) * prod_{p | m} (1 - p^{-w})."""
    val = _log_riemann(w, k, s, guard)
    for p in _PRIME_DIVISORS[m]:
        val += cmath.log(1 - cmath.exp(-w * math.log(p)))
    return val


def prime_zeta_progression(s, m, K=None, experimental=False, guard=True):
    """sum_{p = 1 (mod m)} p^{-s} for m in {3, 4, 6}.

    Splits into (P_chi0 + P_chi)/2.  P_chi0 is the Moebius sum of
    log[zeta(ks) prod_{p|m}(1 - p^{-ks})].  For the real character chi,
    log L(s, chi) - log zeta_chi0(2s)/2 = sum_{j odd} P_chi(js)/j, which is
    inverted over odd k.  Only Re(s) > 1 is validated; pass
    ``experimental=True`` to go below.
    """
    s = complex(s)
    mm = _modulus(m)
    if s.real <= 1 and not experimental:
        raise DomainError("progression sums below Re(s) = 1 are experimental; pass experimental=True")
    K = K or _rational_K(s.real)
    mu = mobius_sieve(K)
    chi = character(mm)
    p_chi0 = 0j
    p_chi = 0j
    for k in range(1, K + 1):
        if not mu[k]:
            continue
        w = k * s
        p_chi0 += mu[k] / k * _log_zeta_principal(w, mm, k, s, guard)
        if k % 2:
            g_val = cmath.log(dirichlet_l(w, chi)) - 0.5 * _log_zeta_principal(2 * w, mm, k, s, guard)
            p_chi += mu[k] / k * g_val
    return 0.5 * (p_chi0 + p_chi)
