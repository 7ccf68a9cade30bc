"""zeta(s, C) in the u = q^{-s} coordinate.

The closed form L(u) / ((1 - u)(1 - q u)) is global, so evaluation never
needs series; the defining Dirichlet series and the Euler product are
kept as independent cross-checks in Re(s) > 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NearPole
from .lfunc import effective_divisor_counts, lpoly_for_curve

POLE_RADIUS = 1e-12


@dataclass(frozen=True)
class CurveZeta:
    L: object

    @property
    def q(self):
        return self.L.q

    @property
    def g(self):
        return self.L.g

    @property
    def log_q(self):
        return math.log(self.L.q)

    @property
    def period(self):
        """Imaginary period 2 pi / ln q."""
        return 2 * math.pi / math.log(self.L.q)

    def u(self, s):
        return cmath.exp(-complex(s) * self.log_q)


def curve_zeta(curve):
    return CurveZeta(lpoly_for_curve(curve))


def zeta_of_u(z, u):
    """Closed form at u with no pole check."""
    return z.L(u) / ((1 - u) * (1 - z.q * u))


def log_derivative_u(z, u):
    """d/du log zeta = L'(u)/L(u) + 1/(1-u) + q/(1-qu)."""
    out = 1 / (1 - u) + z.q / (1 - z.q * u)
    if z.g:
        out += z.L.derivative(u) / z.L(u)
    return out


def nearest_pole(z, s):
    s = complex(s)
    m = round(s.imag / z.period)
    base = 0.0 if abs(s.real) < abs(s.real - 1) else 1.0
    return complex(base, m * z.period)


def zeta_eval(z, s):
    s = complex(s)
    u = z.u(s)
    if abs(u - 1) < POLE_RADIUS or abs(u - 1 / z.q) < POLE_RADIUS:
        pole = nearest_pole(z, s)
        raise NearPole(f"s = {s} is within {POLE_RADIUS} of the pole {pole}", pole=pole)
    return zeta_of_u(z, u)


def zeta_dirichlet_partial(z, s, D):
    """sum_{n<=D} b_n q^{-ns}, b_n = number of effective divisors of degree n."""
    u = z.u(s)
    b = effective_divisor_counts(z.L, D)
    total = 0j
    un = 1.0 + 0j
    for bn in b:
        total += bn * un
        un *= u
    return total


def _log1m(w):
    """log(1 - w) with full relative accuracy for small |w|."""
    if abs(w) < 0.25:
        acc, term = 0j, complex(w)
        for k in range(1, 200):
            acc -= term / k
            if abs(term) <= 1e-17 * abs(acc):
                break
            term *= w
        return acc
    return cmath.log(1 - w)


def euler_product_partial(z, table, s, D):
    """prod_{n<=D} (1 - q^{-ns})^{-pi_C(n)}."""
    if D > table.n_max:
        raise ValueError(f"table covers degrees up to {table.n_max}, asked for {D}")
    u = z.u(s)
    log_total = 0j
    for n in range(1, D + 1):
        log_total -= table.pi[n - 1] * _log1m(u**n)
    return cmath.exp(log_total)


def zeta_zeros(z, t_window):
    """Zeros s with Im(s) in t_window; all lie on Re(s) = 1/2 by Weil."""
    t0, t1 = t_window
    out = []
    seen = set()
    lq, per = z.log_q, z.period
    for u in z.L.roots:
        s0 = -cmath.log(u) / lq
        m_lo = math.ceil((t0 - s0.imag) / per - 1e-12)
        m_hi = math.floor((t1 - s0.imag) / per + 1e-12)
        for m in range(m_lo, m_hi + 1):
            s = complex(s0.real, s0.imag + m * per)
            key = (round(s.real, 9), round(s.imag, 9))
            if key not in seen:
                seen.add(key)
                out.append(s)
    out.sort(key=lambda s: (s.imag, s.real))
    return out


def functional_equation_residual(z, s):
    """Relative gap between q^{(g-1)s} zeta(s) and q^{(g-1)(1-s)} zeta(1-s)."""
    s = complex(s)
    w = (z.g - 1) * z.log_q
    lhs = cmath.exp(w * s) * zeta_eval(z, s)
    rhs = cmath.exp(w * (1 - s)) * zeta_eval(z, 1 - s)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def fe_check_grid(z, n=50):
    """n deterministic points in -1 < Re(s) < 2 that stay clear of the poles."""
    pts = []
    for j in range(n):
        re = -1 + 3 * (j + 0.5) / n
        im = 0.37 * (j % 7 - 3) + 0.011 * j
        pts.append(complex(re, im))
    # every Re lies at least 0.01 from 0 and 1, well outside POLE_RADIUS
    return pts


def max_fe_residual(z, points=None):
    points = fe_check_grid(z) if points is None else points
    return max(functional_equation_residual(z, s) for s in points)
