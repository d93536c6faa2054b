"""Donation boxes, distribution lists, stakeholders, reservations, surveys and prediction markets."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from ..core import Collective, EmptyReturns
from ..errors import UnknownMonoid
from ..values import FrozenMap, is_nat, is_rational, sorted_values

GO_TEAM = "go-team!"


def _nonneg(x) -> bool:
    return is_rational(x) and x >= 0


def _rand_positive(rng: random.Random, size: int) -> Fraction:
    return Fraction(rng.randint(1, 10 * (size + 1)), rng.randint(1, size + 3))


# ---------------------------------------------------------------- donation box


class _Monoid:
    def __init__(self, name, unit, op, member, enum=None, gen=None):
        self.name, self.unit, self.op, self.member = name, unit, op, member
        self.enum, self.gen = enum, gen


def _strings_monoid(alphabet: Iterable[str]) -> _Monoid:
    letters = sorted(alphabet)
    if not letters or not all(isinstance(a, str) and len(a) == 1 for a in letters):
        raise ValueError("strings_concat needs an alphabet of single characters")

    def enum(bound):
        out, layer = [""], [""]
        for _ in range(bound):
            layer = [w + a for w in layer for a in letters]
            out.extend(layer)
        return out

    return _Monoid(
        "strings_concat",
        "",
        lambda a, b: a + b,
        lambda s: isinstance(s, str) and all(ch in letters for ch in s),
        enum,
        lambda rng, size: "".join(rng.choice(letters) for _ in range(rng.randint(0, size + 1))),
    )


def _named_monoid(monoid: str, alphabet) -> _Monoid:
    if monoid == "naturals_add":
        return _Monoid("naturals_add", 0, lambda a, b: a + b, is_nat,
                       lambda bound: list(range(bound + 1)),
                       lambda rng, size: rng.randint(0, 3 * (size + 1)))
    if monoid == "integers_add":
        return _Monoid("integers_add", 0, lambda a, b: a + b, lambda x: type(x) is int,
                       lambda bound: list(range(-bound, bound + 1)),
                       lambda rng, size: rng.randint(-3 * (size + 1), 3 * (size + 1)))
    if monoid == "strings_concat":
        return _strings_monoid(alphabet or "ab")
    raise UnknownMonoid(f"unknown monoid {monoid!r}; expected naturals_add, integers_add, strings_concat or a table")


class DonationBox(Collective):
    """Any monoid, with the single return ``"go-team!"`` on every contribution."""

    name = "donation_box"
    can_enumerate = True
    can_sample = True

    def __init__(self, monoid="naturals_add", alphabet=None):
        from .tables import FiniteCollectiveTable

        if isinstance(monoid, FiniteCollectiveTable):
            t = monoid
            t.validate(monoid_only=True)
            index = {c: i for i, c in enumerate(t.contributions)}
            self._m = _Monoid(
                "table",
                t.contributions[t.unit_index],
                lambda a, b: t.contributions[t.aggregation_table[index[a]][index[b]]],
                lambda c: c in index,
                lambda bound: list(t.contributions),
                lambda rng, size: rng.choice(t.contributions),
            )
            super().__init__(monoid="table")
        else:
            self._m = _named_monoid(monoid, alphabet)
            params = {"monoid": monoid}
            if monoid == "strings_concat":
                params["alphabet"] = tuple(sorted(alphabet or "ab"))
            super().__init__(**params)

    def neutral(self):
        return self._m.unit

    def aggregate(self, a, b):
        return self._m.op(a, b)

    def distribute(self, a, b, r):
        return GO_TEAM, GO_TEAM

    def is_contribution(self, c):
        return self._m.member(c)

    def is_return(self, c, r):
        return r == GO_TEAM

    def enumerate_contributions(self, bound):
        return self._m.enum(bound)

    def enumerate_returns(self, c, bound):
        return [GO_TEAM]

    def all_returns(self, c):
        return [GO_TEAM]

    def gen_contribution(self, rng, size):
        return self._m.gen(rng, size)

    def gen_return(self, c, rng, size):
        return GO_TEAM


def donation_box(monoid="naturals_add", alphabet=None) -> DonationBox:
    return DonationBox(monoid, alphabet)


# ---------------------------------------------------------------- distribution list

PRESENT = "present"


class DistributionList(Collective):
    """One trivial contribution; every member receives a copy of the message."""

    name = "distribution_list"
    can_enumerate = True
    can_sample = True

    def __init__(self, S):
        S = frozenset(S)
        if not S:
            raise ValueError("distribution_list needs a nonempty message set")
        self.S = S
        self._sorted = sorted_values(S)
        super().__init__(S=S)

    def neutral(self):
        return PRESENT

    def aggregate(self, a, b):
        return PRESENT

    def distribute(self, a, b, r):
        return r, r

    def is_contribution(self, c):
        return c == PRESENT

    def is_return(self, c, r):
        return r in self.S

    def enumerate_contributions(self, bound):
        return [PRESENT]

    def enumerate_returns(self, c, bound):
        return list(self._sorted)

    def all_returns(self, c):
        return list(self._sorted)

    def gen_contribution(self, rng, size):
        return PRESENT

    def gen_return(self, c, rng, size):
        return rng.choice(self._sorted)


def distribution_list(S) -> DistributionList:
    return DistributionList(S)


# ---------------------------------------------------------------- stakeholders


class Stakeholders(Collective):
    """Nonnegative amounts, added up; a return is split in proportion to them.

    ``R[0] = {0}`` and ``R[a]`` is the positive rationals for ``a > 0``;
    ``0/0`` is taken to be ``0``.
    """

    name = "stakeholders"
    can_enumerate = True
    can_sample = True

    def neutral(self):
        return Fraction(0)

    def aggregate(self, a, b):
        return Fraction(a) + b

    def distribute(self, a, b, t):
        total = Fraction(a) + b
        if total == 0:
            return Fraction(0), Fraction(0)
        return a * Fraction(t) / total, b * Fraction(t) / total

    def is_contribution(self, c):
        return _nonneg(c)

    def is_return(self, c, t):
        if not is_rational(t):
            return False
        return t == 0 if c == 0 else t > 0

    def enumerate_contributions(self, bound):
        return [Fraction(k, 2) for k in range(2 * bound + 1)]

    def enumerate_returns(self, c, bound):
        if c == 0:
            return [Fraction(0)]
        return sorted({Fraction(1), Fraction(c), Fraction(7, 3), Fraction(20)})

    def all_returns(self, c):
        return [Fraction(0)] if c == 0 else None

    def gen_contribution(self, rng, size):
        if rng.random() < 0.2:
            return Fraction(0)
        return _rand_positive(rng, size)

    def gen_return(self, c, rng, size):
        return Fraction(0) if c == 0 else _rand_positive(rng, size)


def stakeholders() -> Stakeholders:
    return Stakeholders()


# ---------------------------------------------------------------- reservation


class Reservation(Collective):
    """Requested time spans queue up; granted time fills earlier requests first."""

    name = "reservation"
    can_enumerate = True
    can_sample = True

    def neutral(self):
        return Fraction(0)

    def aggregate(self, m, n):
        return Fraction(m) + n

    def distribute(self, m, n, d):
        d = Fraction(d)
        return min(d, Fraction(m)), max(Fraction(0), d - m)

    def is_contribution(self, c):
        return _nonneg(c)

    def is_return(self, x, d):
        return is_rational(d) and 0 <= d <= x

    def enumerate_contributions(self, bound):
        return [Fraction(k, 2) for k in range(2 * bound + 1)]

    def enumerate_returns(self, x, bound):
        x = Fraction(x)
        return sorted({Fraction(0), x / 3, x / 2, x})

    def all_returns(self, x):
        return [Fraction(0)] if x == 0 else None

    def gen_contribution(self, rng, size):
        if rng.random() < 0.15:
            return Fraction(0)
        return _rand_positive(rng, size)

    def gen_return(self, x, rng, size):
        q = rng.randint(1, 12)
        return Fraction(x) * Fraction(rng.randint(0, q), q)


def reservation() -> Reservation:
    return Reservation()


# ---------------------------------------------------------------- single-question survey


class SingleQuestionSurvey(Collective):
    """Question sizes multiply; an answer index splits as ``(i mod m, i div m)``."""

    name = "single_question_survey"
    can_enumerate = True
    can_sample = True

    def __init__(self, max_factor=None):
        # caps the contribution enumeration only
        self.max_factor = max_factor
        super().__init__(**({} if max_factor is None else {"max": max_factor}))

    def neutral(self):
        return 1

    def aggregate(self, m, n):
        return m * n

    def distribute(self, m, n, i):
        return i % m, i // m

    def is_contribution(self, c):
        return is_nat(c)

    def is_return(self, n, i):
        return is_nat(i) and i < n

    def enumerate_contributions(self, bound):
        top = bound if self.max_factor is None else min(bound, self.max_factor)
        return list(range(top + 1))

    def enumerate_returns(self, n, bound):
        return list(range(n))

    def all_returns(self, n):
        return list(range(n))

    def gen_contribution(self, rng, size):
        top = size + 3 if self.max_factor is None else self.max_factor
        return rng.randint(0, top)

    def gen_return(self, n, rng, size):
        if n == 0:
            raise EmptyReturns
        return rng.randrange(n)


def single_question_survey(max_factor=None) -> SingleQuestionSurvey:
    return SingleQuestionSurvey(max_factor)


# ---------------------------------------------------------------- prediction market


class PredictionMarket(Collective):
    """Teams of analysts pool forecasts; a reward on the winner is split by predicted weight.

    A contribution is ``(k, p)`` with ``k`` analysts and ``p`` a map from
    candidates to rational probabilities.  ``(0, uniform)`` is the neutral
    contribution and the only one with ``k = 0``; otherwise ``p`` must be
    strictly positive.  Returns on ``(k, p)`` are ``(e, r)`` with ``r > 0``,
    or ``r = 0`` on the neutral contribution.
    """

    name = "prediction_market"
    can_enumerate = True
    can_sample = True

    def __init__(self, E):
        cands = sorted_values(frozenset(E))
        if not cands:
            raise ValueError("prediction_market needs at least one candidate")
        self.E = tuple(cands)
        self._uniform = FrozenMap({e: Fraction(1, len(cands)) for e in cands})
        super().__init__(E=frozenset(cands))

    def neutral(self):
        return (0, self._uniform)

    def aggregate(self, a, b):
        k, p = a
        l, q = b
        if k == 0:
            return b
        if l == 0:
            return a
        n = k + l
        return (n, FrozenMap({e: (k * p[e] + l * q[e]) / n for e in self.E}))

    def distribute(self, a, b, ret):
        e, r = ret
        k, p = a
        l, q = b
        if k == 0:
            return (e, Fraction(0)), (e, Fraction(r))
        if l == 0:
            return (e, Fraction(r)), (e, Fraction(0))
        w1, w2 = k * p[e], l * q[e]
        return (e, w1 * r / (w1 + w2)), (e, w2 * r / (w1 + w2))

    def is_contribution(self, c):
        if not (isinstance(c, tuple) and len(c) == 2):
            return False
        k, p = c
        if not is_nat(k) or not isinstance(p, FrozenMap) or set(p) != set(self.E):
            return False
        if not all(is_rational(x) for x in p.values()) or sum(p.values()) != 1:
            return False
        if k == 0:
            return p == self._uniform
        return all(x > 0 for x in p.values())

    def is_return(self, c, ret):
        if not (isinstance(ret, tuple) and len(ret) == 2):
            return False
        e, r = ret
        if e not in self.E or not is_rational(r):
            return False
        return r == 0 if c[0] == 0 else r > 0

    def _skewed(self, e):
        n = len(self.E)
        w = {x: Fraction(2 if x == e else 1, n + 1) for x in self.E}
        return FrozenMap(w)

    def enumerate_contributions(self, bound):
        dists = [self._uniform]
        for e in self.E:
            d = self._skewed(e)
            if d not in dists:
                dists.append(d)
        return [self.neutral()] + [(k, p) for k in range(1, bound + 1) for p in dists]

    def enumerate_returns(self, c, bound):
        if c[0] == 0:
            return [(e, Fraction(0)) for e in self.E]
        return [(e, r) for e in self.E for r in (Fraction(1), Fraction(7))]

    def gen_contribution(self, rng, size):
        if rng.random() < 0.15:
            return self.neutral()
        k = rng.randint(1, size + 3)
        w = [rng.randint(1, 3 * (size + 2)) for _ in self.E]
        total = sum(w)
        return (k, FrozenMap({e: Fraction(x, total) for e, x in zip(self.E, w)}))

    def gen_return(self, c, rng, size):
        e = rng.choice(self.E)
        if c[0] == 0:
            return (e, Fraction(0))
        return (e, _rand_positive(rng, size))


def prediction_market(E) -> PredictionMarket:
    return PredictionMarket(E)
