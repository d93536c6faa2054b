"""Trajectories of polynomial vector fields on the rational plane.

A contribution is a vector field ``v``; following ``v`` from a point ``x``
jumps to ``x + v(x)``.  Doing ``v`` and then ``w`` is the field
``x -> v(x) + w(x + v(x))``.  A return is a starting point, and each member
is handed the point where their own jump begins.

Fields are polynomial with rational coefficients, which is closed under the
"then" composition, so every comparison is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..core import Collective
from ..values import is_rational, register_kind

Monomial = tuple  # (i, j): x1**i * x2**j


def _normal(acc: dict) -> tuple:
    """Sorted nonzero terms; integral coefficients are stored as ints."""
    out = []
    for m, c in acc.items():
        if c:
            if type(c) is not int and c.denominator == 1:
                c = int(c.numerator)
            out.append((m, c))
    out.sort()
    return tuple(out)


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i, j), c in p.items():
        for (k, l), d in q.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d
    return out


class Poly:
    """A polynomial in ``x1, x2`` in normal form: sorted monomials, no zero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            if type(i) is not int or type(j) is not int or i < 0 or j < 0:
                raise ValueError(f"bad monomial exponent {(i, j)!r}")
            if not is_rational(c):
                raise ValueError(f"coefficient must be rational, got {c!r}")
            acc[i, j] = acc.get((i, j), 0) + c
        self.terms = _normal(acc)
        self._hash = None

    @classmethod
    def _raw(cls, acc: dict) -> "Poly":
        # trusted internal path: exponents and coefficients already valid
        p = cls.__new__(cls)
        p.terms = _normal(acc)
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, k: int) -> "Poly":
        return cls({(1, 0) if k == 1 else (0, 1): 1})

    def degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms:
            out[m] = out.get(m, 0) + c
        return Poly._raw(out)

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly._raw(_mul(dict(self.terms), dict(other.terms)))

    def __pow__(self, n: int) -> "Poly":
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, p1: "Poly", p2: "Poly") -> "Poly":
        """Substitute ``x1 := p1`` and ``x2 := p2``."""
        pow1, pow2 = [{(0, 0): 1}], [{(0, 0): 1}]
        d1, d2 = dict(p1.terms), dict(p2.terms)

        def power(cache, base, n):
            while len(cache) <= n:
                cache.append(_mul(cache[-1], base))
            return cache[n]

        out: dict = {}
        for (i, j), c in self.terms:
            for m, d in _mul(power(pow1, d1, i), power(pow2, d2, j)).items():
                out[m] = out.get(m, 0) + c * d
        return Poly._raw(out)

    def __call__(self, x1, x2) -> Fraction:
        return sum((c * Fraction(x1) ** i * Fraction(x2) ** j for (i, j), c in self.terms), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("poly", self.terms))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms, key=lambda t: (-(t[0][0] + t[0][1]), t[0])):
            mono = "*".join(f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in ((1, i), (2, j)) if e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])


X1, X2 = Poly.var(1), Poly.var(2)


class VectorField:
    """A polynomial vector field ``(v1, v2)`` on the plane."""

    __slots__ = ("v1", "v2")

    def __init__(self, v1: Poly, v2: Poly):
        if not (isinstance(v1, Poly) and isinstance(v2, Poly)):
            raise ValueError("vector field components must be polynomials")
        self.v1, self.v2 = v1, v2

    @classmethod
    def constant(cls, a, b) -> "VectorField":
        return cls(Poly.const(a), Poly.const(b))

    def __call__(self, x):
        return (self.v1(*x), self.v2(*x))

    def then(self, w: "VectorField") -> "VectorField":
        """``x -> v(x) + w(x + v(x))``."""
        y1, y2 = X1 + self.v1, X2 + self.v2
        return VectorField(self.v1 + w.v1.compose(y1, y2), self.v2 + w.v2.compose(y1, y2))

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.v1 == other.v1 and self.v2 == other.v2

    def __hash__(self):
        return hash(("field", self.v1, self.v2))

    def __repr__(self):
        return f"VectorField({str(self.v1)!r}, {str(self.v2)!r})"


ZERO_FIELD = VectorField(Poly(), Poly())


def _encode_poly(p: Poly, enc):
    return [[i, j, enc(c)] for (i, j), c in p.terms]


def _decode_poly(items, dec) -> Poly:
    terms = []
    for t in items:
        i, j, c = t
        c = dec(c)
        if c == 0:
            raise ValueError("zero coefficients are not in normal form")
        terms.append(((i, j), c))
    p = Poly(terms)
    if len(p.terms) != len(terms):
        raise ValueError("repeated monomial")
    return p


register_kind(
    "vector_field",
    VectorField,
    lambda v, enc: {"components": [_encode_poly(v.v1, enc), _encode_poly(v.v2, enc)]},
    lambda d, dec: VectorField(*(_decode_poly(c, dec) for c in d["components"])),
)


def _point(x):
    return (Fraction(x[0]), Fraction(x[1]))


def _is_point(r) -> bool:
    return type(r) is tuple and len(r) == 2 and all(is_rational(x) for x in r)


def _quadratic_example() -> VectorField:
    # v(x) = (x2^2 - 1, x1*x2)
    return VectorField(Poly({(0, 2): 1, (0, 0): -1}), Poly({(1, 1): 1}))


class Trajectories(Collective):
    name = "trajectories"
    can_enumerate = True
    can_sample = True

    _RETURN_SAMPLES = ((0, 0), (1, 0), (Fraction(1, 2), -1))

    def __init__(self, max_degree: int = 2, coefficient_bound: int = 2):
        self.max_degree = max_degree
        self.coefficient_bound = coefficient_bound
        super().__init__()

    def neutral(self):
        return ZERO_FIELD

    def aggregate(self, v, w):
        return v.then(w)

    def distribute(self, v, w, x0):
        v0 = v(x0)
        return _point(x0), (Fraction(x0[0]) + v0[0], Fraction(x0[1]) + v0[1])

    def is_contribution(self, c):
        return isinstance(c, VectorField)

    def is_return(self, c, r):
        return _is_point(r)

    def enumerate_contributions(self, bound):
        fields = [
            ZERO_FIELD,
            VectorField.constant(1, 0),
            VectorField(-X2, X1),
            _quadratic_example(),
        ]
        return fields[: bound + 1]

    def enumerate_returns(self, c, bound):
        return [_point(x) for x in self._RETURN_SAMPLES]

    def _gen_poly(self, rng) -> Poly:
        b, d = self.coefficient_bound, self.max_degree
        return Poly(((i, j), rng.randint(-b, b)) for i in range(d + 1) for j in range(d + 1 - i))

    def gen_contribution(self, rng, size):
        if size == 0:
            return ZERO_FIELD
        return VectorField(self._gen_poly(rng), self._gen_poly(rng))

    def gen_return(self, c, rng, size):
        return (Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def trajectories(max_degree: int = 2, coefficient_bound: int = 2) -> Trajectories:
    return Trajectories(max_degree, coefficient_bound)
