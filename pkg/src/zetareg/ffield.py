"""Finite fields F_q, q = p^a, with exact arithmetic.

Elements are coefficient vectors of F_p[x]/(modulus), low degree first.
The modulus is the lowest-lexicographic monic irreducible of degree a so
every run builds the same model of F_q.

Two representations live here:

* ``FieldElement`` -- a small immutable value object, used for curve
  coefficients, polynomial gcds and anything scalar.
* ``FieldTables`` -- exp/log tables over integer-encoded elements
  (index = sum c_i p^i) with numpy-vectorized arithmetic, used to run a
  polynomial over every element of F_{q^n} at once when counting points.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import (
    BudgetExceeded,
    DegreeOutOfRange,
    DivisionByZero,
    MixedFields,
    NonPrime,
    ParseError,
)

DEFAULT_BUDGET = 10**7
MAX_PRIME = 2**20


def enumeration_budget():
    """Largest field size any enumeration may touch (env ``ZETAREG_BUDGET``)."""
    raw = os.environ.get("ZETAREG_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError as exc:
        raise ParseError(f"ZETAREG_BUDGET is not a number: {raw!r}") from exc


def check_budget(size, what="field"):
    budget = enumeration_budget()
    if size > budget:
        raise BudgetExceeded(f"{what} of size {size} exceeds enumeration budget {budget}")


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    """Distinct prime factors of n by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Split q = p^a; raises NonPrime when q is not a prime power."""
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise NonPrime(f"{q} is not a prime power")
    p = factors[0]
    a = 0
    while q > 1:
        q //= p
        a += 1
    return p, a


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n):
    mu = 1
    for f in prime_factors(n):
        if (n // f) % f == 0:
            return 0
        mu = -mu
    return mu


# --- polynomials over the prime field F_p, as int lists low-to-high ---------


def _fp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mod(a, m, p):
    a = [x % p for x in a]
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _fp_trim(a[:dm])


def _fp_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, m, p)


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a), _fp_trim(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_x_power(e, m, p):
    """x^e mod m over F_p by square-and-multiply."""
    result = [1]
    base = _fp_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible_fp(poly, p):
    """Rabin's test for a monic polynomial over F_p (coefficients low-to-high)."""
    poly = _fp_trim([c % p for c in poly])
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if poly[0] == 0:
        return False
    for r in prime_factors(n):
        h = _fp_x_power(p ** (n // r), poly, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(poly, diff, p)
        if len(g) > 1:
            return False
    h = _fp_x_power(p**n, poly, p)
    return _fp_trim(h) == [0, 1]


@lru_cache(maxsize=None)
def find_irreducible(p, n):
    """Lowest-lexicographic monic irreducible polynomial of degree n over F_p.

    Candidates are scanned with the lower coefficients read as a base-p
    integer (c_0 least significant), so x^3 + x + 1 comes before x^3 + x^2 + 1.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if n < 1:
        raise DegreeOutOfRange(f"degree must be >= 1, got {n}")
    if n == 1:
        return (0, 1)
    for idx in range(p**n):
        low = [(idx // p**i) % p for i in range(n)]
        cand = low + [1]
        if is_irreducible_fp(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def irreducible_count(q, n):
    """Number of monic irreducible polynomials of degree n over F_q."""
    if n < 1:
        raise DegreeOutOfRange(f"degree must be >= 1, got {n}")
    total = sum(_mobius(n // d) * q**d for d in _divisors(n))
    count, rem = divmod(total, n)
    assert rem == 0 and count >= 0
    return count


# --- fields and elements ------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    a: int
    modulus: tuple

    @property
    def q(self):
        return self.p**self.a

    @property
    def zero(self):
        return FieldElement(self, (0,) * self.a)

    @property
    def one(self):
        return self.element(1)

    @property
    def gen(self):
        """Class of x in F_p[x]/(modulus); written ``w`` in text input."""
        if self.a == 1:
            return self.element(-self.modulus[0])
        return FieldElement(self, (0, 1) + (0,) * (self.a - 2))

    def element(self, value):
        """Build an element from an integer (mapped through F_p) or a coefficient list."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise MixedFields("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.a - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.a:
            # reduce modulo the defining polynomial
            coeffs = _fp_mod(coeffs, list(self.modulus), self.p)
        coeffs = coeffs + [0] * (self.a - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def from_index(self, idx):
        return FieldElement(self, tuple((idx // self.p**i) % self.p for i in range(self.a)))

    def __str__(self):
        if self.a == 1:
            return f"F_{self.p}"
        return f"F_{self.q} = F_{self.p}[w]/({format_poly(self.modulus, 'w')})"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple

    def _check(self, other):
        if isinstance(other, int):
            return self.spec.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise MixedFields(f"cannot combine elements of {self.spec} and {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        return FieldElement(self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        prod = _fp_mulmod(_fp_trim(self.coeffs), _fp_trim(other.coeffs), list(spec.modulus), spec.p)
        return spec.element(prod) if prod else spec.zero

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    @property
    def index(self):
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __str__(self):
        return format_poly(self.coeffs, "w")

    def __repr__(self):
        return f"FieldElement({self}, {self.spec.p}^{self.spec.a})"


def ff_make(p, a=1):
    if not (isinstance(p, int) and is_prime(p)):
        raise NonPrime(f"{p} is not prime")
    if p >= MAX_PRIME:
        raise NonPrime(f"{p} exceeds the trial-division range 2^20")
    if a < 1 or p**a > enumeration_budget():
        raise DegreeOutOfRange(f"F_{p}^{a} is outside the supported range")
    return FieldSpec(p, a, find_irreducible(p, a))


def ff_add(x, y):
    return x + y


def ff_neg(x):
    return -x


def ff_mul(x, y):
    return x * y


def ff_inv(x):
    return x.inverse()


def ff_pow(x, e):
    return x**e


def ff_enumerate(spec):
    """All q elements, coefficient vectors in lexicographic order (high coefficient first)."""
    check_budget(spec.q)
    p = spec.p
    return [FieldElement(spec, tuple(reversed(c))) for c in product(range(p), repeat=spec.a)]


# --- polynomials over F_q (tuples of FieldElement, low-to-high) ---------------


def poly_trim(f):
    f = list(f)
    while f and f[-1].is_zero():
        f.pop()
    return tuple(f)


def poly_degree(f):
    return len(poly_trim(f)) - 1


def poly_add(f, g):
    n = max(len(f), len(g))
    spec = (f or g)[0].spec if (f or g) else None
    if spec is None:
        return ()
    f = list(f) + [spec.zero] * (n - len(f))
    g = list(g) + [spec.zero] * (n - len(g))
    return poly_trim(x + y for x, y in zip(f, g))


def poly_scale(f, c):
    return poly_trim(x * c for x in f)


def poly_sub(f, g):
    return poly_add(f, tuple(-x for x in g))


def poly_mul(f, g):
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return ()
    spec = f[0].spec
    out = [spec.zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_divmod(f, g):
    f, g = list(poly_trim(f)), poly_trim(g)
    if not g:
        raise DivisionByZero("polynomial division by zero")
    spec = g[0].spec
    inv = g[-1].inverse()
    dg = len(g) - 1
    quot = [spec.zero] * max(0, len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv
        if c:
            quot[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = f[i - dg + j] - c * g[j]
    return poly_trim(quot), poly_trim(f[:dg])


def poly_gcd(f, g):
    """Monic gcd (empty tuple only when both inputs vanish)."""
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(f, g)[1]
    if not f:
        return ()
    return poly_scale(f, f[-1].inverse())


def poly_deriv(f):
    return poly_trim(c * i for i, c in enumerate(f) if i > 0)


def poly_eval(f, x):
    acc = x.spec.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


# --- text grammar -------------------------------------------------------------

def _split_terms(text):
    terms, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur))
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    return [t.strip() for t in terms]


def parse_poly(text, var="x"):
    """Parse ``c0 + c1*x + c2*x^2 + ...`` with nonnegative integer coefficients.

    Returns the coefficient list low-to-high; repeated powers accumulate.
    """
    pattern = re.compile(
        rf"^(?:(?P<coef>\d+)\s*\*?\s*)?(?P<mono>{re.escape(var)}(?:\^(?P<exp>\d+))?)?$"
    )
    coeffs = {}
    for term in _split_terms(text):
        m = pattern.match(term)
        if not term or m is None or (m.group("coef") is None and m.group("mono") is None):
            raise ParseError(f"cannot parse term {term!r} in {text!r}")
        c = int(m.group("coef")) if m.group("coef") is not None else 1
        e = 0
        if m.group("mono"):
            e = int(m.group("exp")) if m.group("exp") else 1
        coeffs[e] = coeffs.get(e, 0) + c
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def parse_element(text, spec):
    """A field element written as a polynomial in the generator ``w``."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if "x" in text:
        raise ParseError(f"field element {text!r} may only use the generator w")
    coeffs = parse_poly(text, "w")
    if spec.a == 1 and len(coeffs) > 1:
        raise ParseError(f"{text!r} uses w but the field {spec} is prime")
    return spec.element(coeffs)


def parse_field_poly(text, spec):
    """Polynomial in x over F_q; coefficients are integers or ``(w-polynomial)``."""
    pattern = re.compile(
        r"^(?:(?P<coef>\d+|\([^()]*\)|w(?:\^\d+)?)\s*\*?\s*)?(?P<mono>x(?:\^(?P<exp>\d+))?)?$"
    )
    coeffs = {}
    for term in _split_terms(text):
        m = pattern.match(term)
        if not term or m is None or (m.group("coef") is None and m.group("mono") is None):
            raise ParseError(f"cannot parse term {term!r} in {text!r}")
        c = parse_element(m.group("coef"), spec) if m.group("coef") else spec.one
        e = 0
        if m.group("mono"):
            e = int(m.group("exp")) if m.group("exp") else 1
        coeffs[e] = coeffs.get(e, spec.zero) + c
    deg = max(coeffs)
    return poly_trim(coeffs.get(i, spec.zero) for i in range(deg + 1))


def format_poly(coeffs, var="x"):
    """Inverse of ``parse_poly`` for integer coefficient lists."""
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def format_field_poly(f):
    terms = []
    for i, c in enumerate(f):
        if c.is_zero():
            continue
        cs = str(c)
        if "w" in cs and "+" in cs:
            cs = f"({cs})"
        if i == 0:
            terms.append(cs)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if cs == "1" else f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


# --- vectorized tables --------------------------------------------------------


class FieldTables:
    """Exp/log tables for one field with vectorized arithmetic on element indices.

    Index i encodes the element sum_j c_j w^j with i = sum_j c_j p^j.
    Multiplication goes through discrete logs of a primitive element;
    addition is digit-wise mod p.
    """

    def __init__(self, spec):
        check_budget(spec.q)
        self.spec = spec
        self.p = spec.p
        self.d = spec.a
        self.Q = spec.q
        self.powers = np.array([self.p**j for j in range(self.d)], dtype=np.int64)
        self.generator = self._primitive_element()
        self.exp = self._build_exp()
        self.log = np.full(self.Q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.Q - 1, dtype=np.int64)

    def _primitive_element(self):
        spec, order = self.spec, self.Q - 1
        if order == 1:
            return spec.one
        factors = prime_factors(order)
        for idx in list(range(2, self.Q)) + [1]:
            g = spec.from_index(idx)
            if all((g ** (order // r)) != spec.one for r in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _mul_matrix(self, c):
        """Matrix of y -> c*y acting on coefficient row vectors."""
        rows = []
        basis = self.spec.one
        for _ in range(self.d):
            rows.append((basis * c).coeffs)
            basis = basis * self.spec.gen if self.d > 1 else basis
        return np.array(rows, dtype=np.int64)

    def digits(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.powers) % self.p

    def undigits(self, digs):
        return (digs % self.p) @ self.powers

    def _build_exp(self):
        exp = np.array([1], dtype=np.int64)
        n = self.Q - 1
        while len(exp) < n:
            step = self.generator ** len(exp)
            block = self.undigits(self.digits(exp) @ self._mul_matrix(step))
            exp = np.concatenate([exp, block])
        return exp[:n]

    # element-wise operations on index arrays
    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.undigits(self.digits(a) + self.digits(b))

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return self.undigits(-self.digits(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.Q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def square(self, a):
        return self.mul(a, a)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp[(-self.log[a]) % (self.Q - 1)]

    def is_square(self, a):
        """Quadratic residue test for odd characteristic (0 counts as square)."""
        a = np.asarray(a, dtype=np.int64)
        return (a == 0) | (self.log[a] % 2 == 0)

    def trace(self, a):
        """Absolute trace to F_2 (characteristic 2 only); returns 0/1 indices."""
        assert self.p == 2
        acc = np.asarray(a, dtype=np.int64)
        t = acc
        for _ in range(self.d - 1):
            t = self.square(t)
            acc = np.bitwise_xor(acc, t)
        return acc

    def horner(self, coeffs, xs):
        """Evaluate a polynomial with index coefficients at index array xs."""
        acc = np.zeros_like(xs)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, xs), np.full_like(xs, c))
        return acc

    def embed(self, base_spec):
        """Index map for an embedding F_{base} -> this field (base degree must divide ours)."""
        if base_spec.p != self.p or self.d % base_spec.a:
            raise MixedFields(f"{base_spec} does not embed in {self.spec}")
        if base_spec.a == 1:
            return lambda e: int(e.coeffs[0])
        xs = np.arange(self.Q, dtype=np.int64)
        vals = self.horner([int(c) for c in base_spec.modulus], xs)
        root = int(np.flatnonzero(vals == 0)[0])
        root_powers = [1]
        for _ in range(base_spec.a - 1):
            root_powers.append(int(self.mul(root_powers[-1], root)))

        def _embed(e):
            acc = np.int64(0)
            for c, rp in zip(e.coeffs, root_powers):
                for _ in range(c):
                    acc = self.add(acc, rp)
            return int(acc)

        return _embed


@lru_cache(maxsize=16)
def field_tables(spec):
    return FieldTables(spec)
