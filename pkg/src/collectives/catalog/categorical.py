"""Collectives from categorical constructions, instantiated on finite data.

Finite sets are skeletal: the object ``n`` stands for ``{0, ..., n-1}``.  A
morphism out of ``n`` is a pair ``(m, f)`` with ``f`` a length-``n`` tuple of
values below ``m``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping

from ..core import Collective, EmptyReturns
from ..errors import InvalidPresheaf
from ..values import is_nat, is_rational, sorted_values


def _is_map(n, r) -> bool:
    if not (isinstance(r, tuple) and len(r) == 2):
        return False
    m, f = r
    return is_nat(m) and isinstance(f, tuple) and len(f) == n and all(is_nat(x) and x < m for x in f)


def _maps(n, max_codomain):
    out = []
    for m in range(max_codomain + 1):
        out.extend((m, f) for f in itertools.product(range(m), repeat=n))
    return out


def _gen_map(n, rng, size):
    m = rng.randint(0 if n == 0 else 1, size + 2)
    return (m, tuple(rng.randrange(m) for _ in range(n)))


class _SkeletalFinSet(Collective):
    can_enumerate = True
    can_sample = True

    def __init__(self, codomain_bound=2):
        if codomain_bound < 1:
            raise ValueError("codomain_bound must be at least 1")
        self.codomain_bound = codomain_bound
        super().__init__(codomain_bound=codomain_bound)

    def is_contribution(self, c):
        return is_nat(c)

    def is_return(self, n, r):
        return _is_map(n, r)

    def enumerate_contributions(self, bound):
        return list(range(bound + 1))

    def enumerate_returns(self, n, bound):
        return _maps(n, self.codomain_bound)

    def gen_contribution(self, rng, size):
        return rng.randint(0, size + 1)

    def gen_return(self, n, rng, size):
        return _gen_map(n, rng, size)


class FinSetCoproduct(_SkeletalFinSet):
    """Disjoint union of finite sets; a map out of ``c + d`` restricts along both inclusions."""

    name = "finset_coproduct"

    def neutral(self):
        return 0

    def aggregate(self, c, d):
        return c + d

    def distribute(self, c, d, r):
        m, f = r
        return (m, f[:c]), (m, f[c:])


def finset_coproduct(codomain_bound=2) -> FinSetCoproduct:
    return FinSetCoproduct(codomain_bound)


def _lex_index(digits, base) -> int:
    """Index of a tuple among all tuples over ``range(base)``, first digit most significant."""
    idx = 0
    for x in digits:
        idx = idx * base + x
    return idx


class FinSetCartesianClosed(_SkeletalFinSet):
    """Product of finite sets; a map out of ``c x d`` is sent to its two curried forms.

    The pair ``(i, j)`` in ``c x d`` is encoded as ``i*d + j``, and a function
    ``d -> e`` is encoded as its lexicographic index in ``e**d``.
    """

    name = "finset_cartesian_closed"

    def neutral(self):
        return 1

    def aggregate(self, c, d):
        return c * d

    def distribute(self, c, d, r):
        e, f = r
        curried_left = tuple(_lex_index([f[i * d + j] for j in range(d)], e) for i in range(c))
        curried_right = tuple(_lex_index([f[i * d + j] for i in range(c)], e) for j in range(d))
        return (e**d, curried_left), (e**c, curried_right)


def finset_cartesian_closed(codomain_bound=2) -> FinSetCartesianClosed:
    return FinSetCartesianClosed(codomain_bound)


# ---------------------------------------------------------------- simplices


def _is_face(n, r) -> bool:
    if not (isinstance(r, tuple) and len(r) == 2):
        return False
    m, f = r
    if not (is_nat(m) and isinstance(f, tuple) and len(f) == m):
        return False
    if not all(type(x) is int and 1 <= x <= n for x in f):
        return False
    return all(x <= y for x, y in zip(f, f[1:]))


class Simplices(Collective):
    """Ordinals under ordinal sum; a face of ``n + n'`` is pulled back to each summand.

    A face ``(m, g)`` is a monotone map ``{1..m} -> {1..n}`` given as a
    nondecreasing tuple of 1-based values.
    """

    name = "simplices"
    can_enumerate = True
    can_sample = True

    def neutral(self):
        return 0

    def aggregate(self, n, n2):
        return n + n2

    def distribute(self, n, n2, r):
        _, g = r
        lo = tuple(x for x in g if x <= n)
        hi = tuple(x - n for x in g if x > n)
        return (len(lo), lo), (len(hi), hi)

    def is_contribution(self, c):
        return is_nat(c)

    def is_return(self, n, r):
        return _is_face(n, r)

    def enumerate_contributions(self, bound):
        return list(range(bound + 1))

    def enumerate_returns(self, n, bound):
        out = []
        for m in range(bound + 1):
            out.extend((m, f) for f in itertools.combinations_with_replacement(range(1, n + 1), m))
        return out

    def gen_contribution(self, rng, size):
        return rng.randint(0, size + 2)

    def gen_return(self, n, rng, size):
        m = 0 if n == 0 else rng.randint(0, size + 2)
        f = tuple(sorted(rng.randint(1, n) for _ in range(m)))
        return (m, f)


def simplices() -> Simplices:
    return Simplices()


# ---------------------------------------------------------------- probabilistic events


def _is_event(c) -> bool:
    if not (isinstance(c, tuple) and len(c) == 2):
        return False
    n, p = c
    return (
        is_nat(n)
        and n >= 1
        and isinstance(p, tuple)
        and len(p) == n
        and all(is_rational(x) and x >= 0 for x in p)
        and sum(p) == 1
    )


class ProbabilisticEvents(Collective):
    """Events ``(n, p)`` compose by running one then the other; outcomes project back.

    The joint outcome ``(i, j)`` gets index ``i*n + j`` (outer event first),
    with probability ``p[i] * q[j]``.  Outcome indices are 0-based.
    """

    name = "probabilistic_events"
    can_enumerate = True
    can_sample = True

    def neutral(self):
        return (1, (Fraction(1),))

    def aggregate(self, a, b):
        m, p = a
        n, q = b
        return (m * n, tuple(x * y for x in p for y in q))

    def distribute(self, a, b, i):
        n = b[0]
        return i // n, i % n

    def is_contribution(self, c):
        return _is_event(c)

    def is_return(self, c, i):
        return is_nat(i) and i < c[0]

    def enumerate_contributions(self, bound):
        out = []
        for n in range(1, bound + 1):
            uniform = tuple(Fraction(1, n) for _ in range(n))
            skewed = tuple(Fraction(2 * k, n * (n + 1)) for k in range(1, n + 1))
            out.append((n, uniform))
            if skewed != uniform:
                out.append((n, skewed))
        return out

    def enumerate_returns(self, c, bound):
        return list(range(c[0]))

    def all_returns(self, c):
        return list(range(c[0]))

    def gen_contribution(self, rng, size):
        n = rng.randint(1, size + 2)
        w = [rng.randint(0, 4) for _ in range(n)]
        if not any(w):
            w[rng.randrange(n)] = 1
        total = sum(w)
        return (n, tuple(Fraction(x, total) for x in w))

    def gen_return(self, c, rng, size):
        return rng.randrange(c[0])


def probabilistic_events() -> ProbabilisticEvents:
    return ProbabilisticEvents()


# ---------------------------------------------------------------- presheaves


class PresheafCollective(Collective):
    """Open sets under union; a section over ``U | V`` restricts to ``U`` and to ``V``.

    ``opens`` must contain the empty set and be closed under union.
    ``sections`` maps each open to its finite list of sections.
    ``restrictions`` maps ``(U, V)`` with ``V`` a proper nonempty subset of
    ``U`` to a dict from sections over ``U`` to sections over ``V``;
    identities and restrictions to the empty open are filled in.  The
    section set over the empty open must be a singleton.
    """

    name = "presheaf_collective"
    can_enumerate = True
    can_sample = True

    def __init__(self, opens, sections: Mapping, restrictions: Mapping, label=None):
        opens = [frozenset(U) for U in opens]
        self.opens = sorted_values(set(opens))
        if len(self.opens) != len(opens):
            raise InvalidPresheaf("duplicate open set")
        opset = set(self.opens)
        empty = frozenset()
        if empty not in opset:
            raise InvalidPresheaf("the empty set must be open")
        for U, V in itertools.product(self.opens, repeat=2):
            if U | V not in opset:
                raise InvalidPresheaf(f"opens not closed under union: {set(U)} | {set(V)}")
        self.sections = {}
        for U in self.opens:
            if U not in sections:
                raise InvalidPresheaf(f"no sections given over open {set(U)}")
            secs = list(sections[U])
            if len(set(secs)) != len(secs):
                raise InvalidPresheaf(f"duplicate sections over {set(U)}")
            self.sections[U] = secs
        if len(self.sections[empty]) != 1:
            raise InvalidPresheaf("there must be exactly one section over the empty open")
        (star,) = self.sections[empty]
        self.res = {}
        for U in self.opens:
            for V in self.opens:
                if not V <= U:
                    continue
                if V == U:
                    table = {s: s for s in self.sections[U]}
                elif V == empty and (U, V) not in restrictions:
                    table = {s: star for s in self.sections[U]}
                elif (U, V) in restrictions:
                    table = dict(restrictions[U, V])
                else:
                    raise InvalidPresheaf(f"missing restriction from {set(U)} to {set(V)}")
                if set(table) != set(self.sections[U]):
                    raise InvalidPresheaf(f"restriction {set(U)} -> {set(V)} is not total")
                if not all(t in self.sections[V] for t in table.values()):
                    raise InvalidPresheaf(f"restriction {set(U)} -> {set(V)} leaves the sections over {set(V)}")
                self.res[U, V] = table
        for key in restrictions:
            U, V = frozenset(key[0]), frozenset(key[1])
            if (U, V) not in self.res:
                raise InvalidPresheaf(f"restriction given for a non-inclusion {set(U)} -> {set(V)}")
        for U, V, W in itertools.product(self.opens, repeat=3):
            if W <= V <= U:
                for s in self.sections[U]:
                    if self.res[V, W][self.res[U, V][s]] != self.res[U, W][s]:
                        raise InvalidPresheaf(f"restrictions {set(U)} -> {set(V)} -> {set(W)} do not compose")
        super().__init__(**({"fixture": label} if label else {}))

    def neutral(self):
        return frozenset()

    def aggregate(self, U, V):
        return U | V

    def distribute(self, U, V, s):
        W = U | V
        return self.res[W, U][s], self.res[W, V][s]

    def is_contribution(self, c):
        return c in self.sections

    def is_return(self, U, s):
        return s in self.sections[U]

    def enumerate_contributions(self, bound):
        return list(self.opens)

    def enumerate_returns(self, U, bound):
        return list(self.sections[U])

    def all_returns(self, U):
        return list(self.sections[U])

    def gen_contribution(self, rng, size):
        return rng.choice(self.opens)

    def gen_return(self, U, rng, size):
        return rng.choice(self.sections[U])


def presheaf_collective(opens, sections, restrictions, label=None) -> PresheafCollective:
    return PresheafCollective(opens, sections, restrictions, label)


def _fixture_constant():
    X = frozenset({"p"})
    return presheaf_collective(
        [frozenset(), X],
        {frozenset(): ["*"], X: ["s", "t"]},
        {},
        label="constant",
    )


def _fixture_three_open():
    p, pq = frozenset({"p"}), frozenset({"p", "q"})
    return presheaf_collective(
        [frozenset(), p, pq],
        {frozenset(): ["*"], p: [0, 1], pq: [0, 1, 2, 3]},
        {(pq, p): {n: n % 2 for n in range(4)}},
        label="three_open",
    )


def _fixture_discrete2():
    p, q, pq = frozenset({"p"}), frozenset({"q"}), frozenset({"p", "q"})
    pairs = [(x, y) for x in (0, 1) for y in (0, 1)]
    return presheaf_collective(
        [frozenset(), p, q, pq],
        {frozenset(): ["*"], p: [0, 1], q: [0, 1], pq: pairs},
        {(pq, p): {s: s[0] for s in pairs}, (pq, q): {s: s[1] for s in pairs}},
        label="discrete2",
    )


PRESHEAF_FIXTURES = {
    "constant": _fixture_constant,
    "three_open": _fixture_three_open,
    "discrete2": _fixture_discrete2,
}


def presheaf_fixture(name: str) -> PresheafCollective:
    try:
        return PRESHEAF_FIXTURES[name]()
    except KeyError:
        raise InvalidPresheaf(f"unknown presheaf fixture {name!r}; known: {sorted(PRESHEAF_FIXTURES)}") from None
