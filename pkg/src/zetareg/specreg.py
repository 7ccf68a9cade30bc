"""Spectral zeta functions and zeta-regularized determinants.

det D = exp(-zeta_D'(0)) needs zeta_D continued to a neighbourhood of
s = 0.  Power-law and circle spectra continue through the Riemann zeta
function and give finite determinants.  Prime-type spectra (norms of
prime divisors of a curve, rational primes, primes p = 1 mod m) have
singularities accumulating on Re(s) = 0, so regularization fails; that
failure is returned as data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .dirichlet import riemann_zeta, zeta_derivative
from .errors import DomainError, NearSingularity
from .primezeta import (
    PrimeZeta,
    boundary_evidence_report,
    prime_zeta_derivative,
    prime_zeta_direct,
    prime_zeta_mobius,
    prime_zeta_progression,
    prime_zeta_rational,
    progression_singularities,
    rational_boundary_report,
    rational_singularities,
    singularity_enumerate,
)

FD_STEPS = (1e-3, 1e-4)
SIGMA_SCHEDULE = (0.5, 0.2, 0.1, 0.05, 0.02, 0.01)


@dataclass(frozen=True)
class Explicit:
    """Finite spectrum: (eigenvalue, multiplicity) pairs."""

    eigenvalues: tuple
    scale: float = 1.0

    def __post_init__(self):
        for lam, mult in self.eigenvalues:
            if not lam > 0:
                raise DomainError(f"eigenvalues must be positive, got {lam}")
            if int(mult) != mult or mult < 1:
                raise DomainError(f"multiplicities must be positive integers, got {mult}")
        _check_scale(self.scale)


@dataclass(frozen=True)
class PowerFamily:
    """lambda_n = n^alpha, n >= 1."""

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        _check_scale(self.scale)


@dataclass(frozen=True)
class CircleLaplacian:
    """Eigenvalues n^2 of -d^2/dx^2 on the unit-period circle, n != 0 (each |n| twice)."""

    scale: float = 1.0


@dataclass(frozen=True)
class CurvePrimes:
    """lambda = q^n with multiplicity pi_C(n)."""

    pz: PrimeZeta
    scale: float = 1.0


@dataclass(frozen=True)
class RationalPrimes:
    scale: float = 1.0


@dataclass(frozen=True)
class ProgressionPrimes:
    m: int
    scale: float = 1.0


PRIME_TYPES = (CurvePrimes, RationalPrimes, ProgressionPrimes)


def _check_scale(scale):
    if not scale > 0:
        raise DomainError("scale must be positive")


def scaled(spec, mu):
    """The spectrum of mu^2 D."""
    if not mu > 0:
        raise DomainError("mu must be positive")
    return replace(spec, scale=spec.scale * mu * mu)


def _unscaled_zeta(spec, s, experimental):
    if isinstance(spec, Explicit):
        return sum(mult * cmath.exp(-s * math.log(lam)) for lam, mult in spec.eigenvalues)
    if isinstance(spec, PowerFamily):
        return riemann_zeta(spec.alpha * s)
    if isinstance(spec, CircleLaplacian):
        return 2 * riemann_zeta(2 * s)
    if isinstance(spec, CurvePrimes):
        if s.real > 1:
            return prime_zeta_direct(spec.pz, s)
        return prime_zeta_mobius(spec.pz, s)
    if isinstance(spec, RationalPrimes):
        return prime_zeta_rational(s)
    if isinstance(spec, ProgressionPrimes):
        return prime_zeta_progression(s, spec.m, experimental=experimental)
    raise TypeError(f"unknown spectrum {spec!r}")


def spectral_zeta(spec, s, experimental=False):
    """sum over eigenvalues of lambda^{-s}, continued where the variant allows."""
    s = complex(s)
    val = _unscaled_zeta(spec, s, experimental)
    if spec.scale != 1.0:
        val *= cmath.exp(-s * math.log(spec.scale))
    return val


def richardson_derivative(f, x=0.0, steps=FD_STEPS):
    """Central differences at two steps h1 > h2 combined to cancel the h^2 term."""
    h1, h2 = steps
    d1 = (f(x + h1) - f(x - h1)) / (2 * h1)
    d2 = (f(x + h2) - f(x - h2)) / (2 * h2)
    r = (h1 / h2) ** 2
    return (r * d2 - d1) / (r - 1)


@dataclass(frozen=True)
class RegSuccess:
    zeta_at_zero: float
    zeta_prime_at_zero: float
    det: float
    fd_zeta_prime_at_zero: float | None = None

    outcome = "success"

    def to_dict(self):
        return {
            "outcome": "success",
            "zeta0": self.zeta_at_zero,
            "zeta_prime0": self.zeta_prime_at_zero,
            "det": self.det,
        }


@dataclass(frozen=True)
class RegFailure:
    nearest_singularities: tuple
    diverging_term_index: int | None
    evidence: object = None
    obstructed_terms: tuple = ("P(0)", "dP/ds(0)")
    reason: str = "natural_boundary"

    outcome = "failure"

    def to_dict(self):
        return {
            "outcome": "failure",
            "reason": self.reason,
            "nearest": [
                {"re_s": e.s.real, "im_s": e.s.imag, "k": e.k, "kind": e.kind}
                for e in self.nearest_singularities
            ],
            "diverging_term_index": self.diverging_term_index,
            "obstructed_terms": list(self.obstructed_terms),
        }


def _closed_form_at_zero(spec):
    """(zeta_D(0), zeta_D'(0)) for the unscaled analytic variants."""
    if isinstance(spec, Explicit):
        z0 = float(sum(mult for _, mult in spec.eigenvalues))
        zp = -sum(mult * math.log(lam) for lam, mult in spec.eigenvalues)
        return z0, zp
    zeta0 = riemann_zeta(0).real
    zetap0 = zeta_derivative(0).real
    if isinstance(spec, PowerFamily):
        return zeta0, spec.alpha * zetap0
    if isinstance(spec, CircleLaplacian):
        return 2 * zeta0, 4 * zetap0
    raise TypeError(f"no closed form for {spec!r}")


def zeta_data_at_zero(spec):
    """zeta_D(0) and zeta_D'(0) including the (mu^2)^{-s} factor."""
    z0, zp = _closed_form_at_zero(spec)
    if spec.scale != 1.0:
        zp -= math.log(spec.scale) * z0
    return z0, zp


def _probe_divergence(spec, s):
    """Evaluate the derivative series at a lattice point and report the blown-up term."""
    try:
        if isinstance(spec, CurvePrimes):
            prime_zeta_derivative(spec.pz, s)
        elif isinstance(spec, RationalPrimes):
            prime_zeta_rational(s)
        else:
            prime_zeta_progression(s, spec.m, experimental=True)
    except NearSingularity as exc:
        return exc.k
    return None


def _failure(spec, sigmas=SIGMA_SCHEDULE, t_range=(0.0, 0.0), n_nearest=5):
    # the nearest list is taken at half the smallest sigma, so it shows
    # singularities strictly left of every line in the schedule
    below = 0.5 * min(sigmas)
    k_max = 2 * math.ceil(1 / below) + 1
    if isinstance(spec, CurvePrimes):
        report = boundary_evidence_report(spec.pz, sigmas, t_range, k_max)
        last = singularity_enumerate(spec.pz, below, t_range, k_max)
    else:
        report = rational_boundary_report(sigmas, t_range, k_max)
        if isinstance(spec, RationalPrimes):
            last = rational_singularities(below, t_range, k_max)
        else:
            last = progression_singularities(spec.m, below, t_range, k_max)
    nearest = tuple(sorted(last.entries, key=lambda e: (abs(e.s), e.k))[:n_nearest])
    k_div = _probe_divergence(spec, nearest[0].s) if nearest else None
    return RegFailure(nearest, k_div, report)


def regularized_det(spec, sigmas=SIGMA_SCHEDULE):
    """exp(-zeta_D'(0)) or a natural-boundary failure; never raises for valid spectra."""
    if isinstance(spec, PRIME_TYPES):
        return _failure(spec, sigmas)
    z0, zp = zeta_data_at_zero(spec)
    fd = richardson_derivative(lambda h: spectral_zeta(spec, h).real)
    return RegSuccess(z0, zp, math.exp(-zp), fd)


@dataclass(frozen=True)
class ScalingReport:
    lhs: float
    rhs: float
    abs_err: float
    ok: bool


def scaling_check(spec, mu, tol=1e-8):
    """d/ds zeta_{mu^2 D}(0) numerically versus -ln(mu^2) zeta_D(0) + zeta_D'(0)."""
    if isinstance(spec, PRIME_TYPES):
        raise DomainError("scaling check needs a regularizable spectrum")
    big = scaled(spec, mu)
    lhs = richardson_derivative(lambda h: spectral_zeta(big, h).real)
    z0, zp = zeta_data_at_zero(spec)
    rhs = -math.log(mu * mu) * z0 + zp
    err = abs(lhs - rhs)
    return ScalingReport(lhs, rhs, err, err <= tol)


@dataclass(frozen=True)
class WZero:
    value: float
    det: float


def w_zero(spec, mu=1.0):
    """W[0] = -1/2 ln det(mu^2 D), or the failure of regularized_det."""
    result = regularized_det(scaled(spec, mu))
    if isinstance(result, RegFailure):
        return result
    return WZero(-0.5 * math.log(result.det), result.det)


def parse_explicit(text):
    """``"2,3:2"`` -> ((2.0, 1), (3.0, 2)); multiplicity after a colon."""
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        lam, _, mult = item.partition(":")
        pairs.append((float(lam), int(mult) if mult else 1))
    return Explicit(tuple(pairs))

