"""Curve models over F_q and exact point counts.

Every supported model is written as ``y^2 + h(x) y = f(x)``:

* ``ProjectiveLine`` -- genus 0, N_n = q^n + 1.
* ``WeierstrassElliptic`` -- h = a1 x + a3, f = x^3 + a2 x^2 + a4 x + a6.
* ``Hyperelliptic`` -- deg f in {2g+1, 2g+2}, deg h <= g+1.

Points at infinity are those of the smooth weighted-projective model; in
the chart v = 1/x, w = y/x^(g+1) they solve w^2 + h_{g+1} w = f_{2g+2}.
That gives 1 point when deg f is odd (and deg h <= g), and 0 or 2 points
for even deg f with h = 0 depending on whether the leading coefficient
of f is a square in F_{q^n}.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass

import numpy as np

from .dirichlet import mobius_sieve
from .errors import (
    NonIntegralPrimeCount,
    ParseError,
    SingularCurve,
    UnsupportedModel,
)
from .ffield import (
    FieldSpec,
    check_budget,
    ff_make,
    field_tables,
    format_field_poly,
    parse_element,
    parse_field_poly,
    poly_add,
    poly_deriv,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_trim,
    prime_power,
)

CHUNK = 1 << 20


@dataclass(frozen=True)
class ProjectiveLine:
    pass


@dataclass(frozen=True)
class WeierstrassElliptic:
    a1: object
    a2: object
    a3: object
    a4: object
    a6: object


@dataclass(frozen=True)
class Hyperelliptic:
    f: tuple
    h: tuple = ()


@dataclass(frozen=True)
class Curve:
    base: FieldSpec
    model: object
    genus: int

    @property
    def q(self):
        return self.base.q

    def describe(self):
        return describe_curve(self)


@dataclass(frozen=True)
class PrimeCountTable:
    """N[n-1] = #C(F_{q^n}) and pi[n-1] = number of prime divisors of degree n."""

    q: int
    genus: int
    N: tuple
    pi: tuple

    @property
    def n_max(self):
        return len(self.N)


def model_polys(base, model):
    """(h, f) with the curve written as y^2 + h y = f."""
    if isinstance(model, WeierstrassElliptic):
        h = poly_trim((model.a3, model.a1))
        f = poly_trim((model.a6, model.a4, model.a2, base.one))
        return h, f
    if isinstance(model, Hyperelliptic):
        return poly_trim(model.h), poly_trim(model.f)
    raise UnsupportedModel(f"model {type(model).__name__} has no y^2 + h y = f form")


def model_genus(model):
    if isinstance(model, ProjectiveLine):
        return 0
    if isinstance(model, WeierstrassElliptic):
        return 1
    if isinstance(model, Hyperelliptic):
        d = len(poly_trim(model.f)) - 1
        if d < 1:
            raise UnsupportedModel("hyperelliptic f must have positive degree")
        return (d + 1) // 2 - 1
    raise UnsupportedModel(f"unsupported model {model!r}")


def _coef(f, i, spec):
    return f[i] if i < len(f) else spec.zero


def weierstrass_discriminant(model):
    a1, a2, a3, a4, a6 = model.a1, model.a2, model.a3, model.a4, model.a6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -(b2 * b2 * b8) - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * (b2 * b4 * b6)


def singularity_witness(curve):
    """None for a smooth model, otherwise a short description of the obstruction."""
    base, model = curve.base, curve.model
    if isinstance(model, ProjectiveLine):
        return None
    if isinstance(model, WeierstrassElliptic):
        disc = weierstrass_discriminant(model)
        return None if disc else "discriminant = 0"
    h, f = model_polys(base, model)
    g = curve.genus
    if base.p != 2:
        # (2y + h)^2 = h^2 + 4f; smooth iff the discriminant is squarefree of degree >= 2g+1
        disc = poly_add(poly_mul(h, h), poly_scale(f, base.element(4)))
        common = poly_gcd(disc, poly_deriv(disc))
        if len(common) > 1:
            return f"gcd(D, D') = {format_field_poly(common)} with D = h^2 + 4f"
        if len(disc) - 1 < 2 * g + 1:
            return "singular at infinity: deg(h^2 + 4f) < 2g + 1"
        return None
    # characteristic 2: singular points sit over roots of h with h'^2 f = f'^2
    hp, fp = poly_deriv(h), poly_deriv(f)
    cond = poly_add(poly_mul(poly_mul(hp, hp), f), poly_mul(fp, fp))
    common = poly_gcd(h, cond)
    if len(common) > 1:
        return f"gcd(h, h'^2 f + f'^2) = {format_field_poly(common)}"
    h_top, h_next = _coef(h, g + 1, base), _coef(h, g, base)
    f_top, f_next = _coef(f, 2 * g + 2, base), _coef(f, 2 * g + 1, base)
    if h_top.is_zero() and (h_next * h_next * f_top) == (f_next * f_next):
        return "singular at infinity"
    return None


def is_nonsingular(curve):
    return singularity_witness(curve) is None


def curve_make(base, model):
    """Validate a model and attach its genus; rejects singular input."""
    genus = model_genus(model)
    if isinstance(model, Hyperelliptic):
        h, f = model_polys(base, model)
        for c in f + h:
            if c.spec != base:
                raise UnsupportedModel("polynomial coefficients must lie in the base field")
        if len(h) - 1 > genus + 1:
            raise UnsupportedModel(f"deg h = {len(h) - 1} exceeds g + 1 = {genus + 1}")
        if base.p == 2 and not h:
            raise UnsupportedModel("y^2 = f(x) is singular in characteristic 2; supply h")
    elif isinstance(model, WeierstrassElliptic):
        for c in (model.a1, model.a2, model.a3, model.a4, model.a6):
            if c.spec != base:
                raise UnsupportedModel("Weierstrass coefficients must lie in the base field")
    curve = Curve(base, model, genus)
    witness = singularity_witness(curve)
    if witness is not None:
        raise SingularCurve(f"singular curve: {witness}", witness=witness)
    return curve


def _count_conic_fibres(tables, hv, fv):
    """Sum over points of #{y : y^2 + h y = f} for arrays of h and f values."""
    if tables.p == 2:
        zero_h = hv == 0
        safe_h = np.where(zero_h, 1, hv)
        t = tables.mul(fv, tables.inv(tables.square(safe_h)))
        tr = tables.trace(t)
        return int(np.sum(zero_h) + 2 * np.sum(~zero_h & (tr == 0)))
    disc = tables.add(tables.square(hv), tables.mul(np.full_like(fv, 4 % tables.p), fv))
    zero = disc == 0
    square = tables.is_square(disc) & ~zero
    return int(np.sum(zero) + 2 * np.sum(square))


def count_points(curve, n):
    """N_n = #C(F_{q^n}), exact, by enumerating every x in F_{q^n}."""
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    size = curve.q**n
    check_budget(size, what=f"F_(q^{n})")
    if isinstance(curve.model, ProjectiveLine):
        return size + 1
    base = curve.base
    big = ff_make(base.p, base.a * n)
    tables = field_tables(big)
    embed = tables.embed(base)
    h, f = model_polys(base, curve.model)
    hc = [embed(c) for c in h]
    fc = [embed(c) for c in f]
    total = 0
    for start in range(0, size, CHUNK):
        xs = np.arange(start, min(size, start + CHUNK), dtype=np.int64)
        total += _count_conic_fibres(tables, tables.horner(hc, xs), tables.horner(fc, xs))
    g = curve.genus
    h_top = hc[g + 1] if g + 1 < len(hc) else 0
    f_top = fc[2 * g + 2] if 2 * g + 2 < len(fc) else 0
    total += _count_conic_fibres(tables, np.array([h_top]), np.array([f_top]))
    return total


def prime_counts_from_point_counts(q, genus, N):
    """Invert N_n = sum_{d | n} d * pi_d exactly."""
    n_max = len(N)
    mu = mobius_sieve(n_max)
    acc = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        Nd = N[d - 1]
        for m in range(d, n_max + 1, d):
            k = mu[m // d]
            if k:
                acc[m] += k * Nd
    pi = []
    for n in range(1, n_max + 1):
        val, rem = divmod(acc[n], n)
        if rem or val < 0:
            raise NonIntegralPrimeCount(f"pi_{n} = {acc[n]}/{n} is not a nonnegative integer")
        pi.append(val)
    return PrimeCountTable(q, genus, tuple(N), tuple(pi))


def prime_count_table(curve, n_max, method="auto"):
    """Point counts and prime-divisor counts up to degree n_max.

    ``method``: "brute" enumerates every F_{q^n}; "lpoly" enumerates only
    up to the genus and extends through the L-polynomial; "auto" is "lpoly".
    """
    if method == "brute":
        N = [count_points(curve, n) for n in range(1, n_max + 1)]
    elif method in ("auto", "lpoly"):
        from .lfunc import counts_from_lpoly, lpoly_for_curve

        N = counts_from_lpoly(lpoly_for_curve(curve), n_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return prime_counts_from_point_counts(curve.q, curve.genus, N)


# --- text grammar -------------------------------------------------------------

_ELL_KEYS = ("a1", "a2", "a3", "a4", "a6")


def _fields(tokens):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _int_field(kv, key, default=None):
    if key not in kv:
        if default is None:
            raise ParseError(f"missing {key}=")
        return default
    try:
        return int(kv.pop(key))
    except ValueError as exc:
        raise ParseError(f"{key} must be an integer") from exc


def parse_curve(text):
    """Build a Curve from ``p1 q=..``, ``ell p=.. a=.. a1=..`` or ``hyp p=.. a=.. f=.. [h=..]``."""
    try:
        tokens = shlex.split(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if not tokens:
        raise ParseError("empty curve description")
    kind, kv = tokens[0], _fields(tokens[1:])
    if kind == "p1":
        p, a = prime_power(_int_field(kv, "q"))
        base = ff_make(p, a)
        model = ProjectiveLine()
    elif kind in ("ell", "hyp"):
        p = _int_field(kv, "p")
        base = ff_make(p, _int_field(kv, "a", 1))
        if kind == "ell":
            model = WeierstrassElliptic(*(parse_element(kv.pop(k, "0"), base) for k in _ELL_KEYS))
        else:
            if "f" not in kv:
                raise ParseError("hyp needs f=")
            f = parse_field_poly(kv.pop("f"), base)
            h = parse_field_poly(kv.pop("h"), base) if "h" in kv else ()
            model = Hyperelliptic(f, h)
    else:
        raise ParseError(f"unknown curve kind {kind!r}")
    if kv:
        raise ParseError(f"unexpected keys: {sorted(kv)}")
    return curve_make(base, model)


def describe_curve(curve):
    base, model = curve.base, curve.model
    if isinstance(model, ProjectiveLine):
        return f"p1 q={base.q}"
    head = f"p={base.p} a={base.a}"
    if isinstance(model, WeierstrassElliptic):
        parts = " ".join(f"{k}={getattr(model, k)}".replace(" ", "") for k in _ELL_KEYS)
        return f"ell {head} {parts}"
    out = f"hyp {head} f={format_field_poly(model.f).replace(' ', '')}"
    if model.h:
        out += f" h={format_field_poly(model.h).replace(' ', '')}"
    return out
