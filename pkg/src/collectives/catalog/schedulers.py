"""Task schedulers (first come first served, balanced) and the potluck planner."""

from __future__ import annotations

import itertools

from ..core import Collective, enumerate_lists
from ..values import Multiset, Seq, sorted_values


def _prefixes(seq: Seq) -> list[Seq]:
    return [seq[:i] for i in range(len(seq) + 1)]


class FCFSScheduler(Collective):
    """Task lists concatenate; the completed prefix is handed out front to back."""

    name = "fcfs_scheduler"
    can_enumerate = True
    can_sample = True

    def __init__(self, A):
        self.A = tuple(sorted_values(frozenset(A)))
        if not self.A:
            raise ValueError("fcfs_scheduler needs a nonempty alphabet")
        super().__init__(A=frozenset(self.A))

    def neutral(self):
        return Seq()

    def aggregate(self, k, l):
        return k + l

    def distribute(self, k, l, r):
        if len(r) <= len(k):
            return r, Seq()
        return k, r[len(k):]

    def is_contribution(self, c):
        return isinstance(c, Seq) and all(x in self.A for x in c)

    def is_return(self, c, r):
        return isinstance(r, Seq) and len(r) <= len(c) and c[: len(r)] == r

    def enumerate_contributions(self, bound):
        return [Seq(t) for t in enumerate_lists(self.A, bound)]

    def enumerate_returns(self, c, bound):
        return _prefixes(c)

    def all_returns(self, c):
        return _prefixes(c)

    def gen_contribution(self, rng, size):
        return Seq(rng.choice(self.A) for _ in range(rng.randint(0, size + 1)))

    def gen_return(self, c, rng, size):
        return c[: rng.randint(0, len(c))]


def fcfs_scheduler(A) -> FCFSScheduler:
    return FCFSScheduler(A)


# ---------------------------------------------------------------- balanced scheduler

_EMPTY = Multiset()


def _trim(xs) -> Seq:
    xs = list(xs)
    while xs and not xs[-1]:
        xs.pop()
    return Seq(xs)


def _pad(xs: Seq, n: int) -> list:
    return list(xs) + [_EMPTY] * (n - len(xs))


class BalancedScheduler(Collective):
    """Priority lists of task bundles merge slot by slot; completed slots go back to their owners.

    Contributions are stored with trailing empty bundles removed.  A return
    is a (trimmed) prefix of the aggregate; its length says how many priority
    levels were completed.
    """

    name = "balanced_scheduler"
    can_enumerate = True
    can_sample = True

    def __init__(self, A, max_count=2):
        self.A = tuple(sorted_values(frozenset(A)))
        if not self.A:
            raise ValueError("balanced_scheduler needs a nonempty task set")
        # caps multiset counts in the enumeration only
        self.max_count = max_count
        super().__init__(A=frozenset(self.A), max_count=max_count)

    def neutral(self):
        return Seq()

    def aggregate(self, k, l):
        n = max(len(k), len(l))
        return _trim(a + b for a, b in zip(_pad(k, n), _pad(l, n)))

    def distribute(self, k, l, r):
        m = len(r)
        return _trim(_pad(k, m)[:m]), _trim(_pad(l, m)[:m])

    def _is_bundle(self, x):
        return isinstance(x, Multiset) and all(a in self.A for a in x)

    def is_contribution(self, c):
        return isinstance(c, Seq) and all(self._is_bundle(x) for x in c) and (not c or bool(c[-1]))

    def is_return(self, c, r):
        return self.is_contribution(r) and len(r) <= len(c) and c[: len(r)] == r

    def _bundles(self):
        counts = itertools.product(range(self.max_count + 1), repeat=len(self.A))
        return [Multiset(dict(zip(self.A, cs))) for cs in counts]

    def enumerate_contributions(self, bound):
        lists = enumerate_lists(self._bundles(), bound)
        return [Seq(t) for t in lists if not t or t[-1]]

    def enumerate_returns(self, c, bound):
        return self.all_returns(c)

    def all_returns(self, c):
        return [c[:i] for i in range(len(c) + 1) if i == 0 or c[i - 1]]

    def gen_contribution(self, rng, size):
        n = rng.randint(0, size + 1)
        bundles = [Multiset({a: rng.randint(0, 2) for a in self.A}) for _ in range(n)]
        return _trim(bundles)

    def gen_return(self, c, rng, size):
        return rng.choice(self.all_returns(c))


def balanced_scheduler(A, max_count=2) -> BalancedScheduler:
    return BalancedScheduler(A, max_count)


# ---------------------------------------------------------------- potluck

POTLUCK_VARIANTS = ("symmetric", "first_served", "last_served")


class Potluck(Collective):
    """Offered dishes are unioned into a menu; each chosen dish goes back to who offered it.

    ``symmetric`` asks everyone who offered a chosen dish, ``first_served``
    only the earliest offerer, ``last_served`` only the latest.  With
    ``as_printed=True`` the ``last_served`` variant uses the formula
    ``((V & X) - W, V & X)``, which breaks unit cancellation; it exists to
    demonstrate the law failure.
    """

    name = "potluck"
    can_enumerate = True
    can_sample = True

    def __init__(self, U, variant="symmetric", as_printed=False):
        if variant not in POTLUCK_VARIANTS:
            raise ValueError(f"unknown potluck variant {variant!r}; expected one of {POTLUCK_VARIANTS}")
        if as_printed and variant != "last_served":
            raise ValueError("as_printed only applies to the last_served variant")
        self.U = frozenset(U)
        self._dishes = sorted_values(self.U)
        self.variant = variant
        self.as_printed = as_printed
        params = {"U": self.U, "variant": variant}
        if as_printed:
            params["as_printed"] = True
        super().__init__(**params)

    def neutral(self):
        return frozenset()

    def aggregate(self, V, W):
        return V | W

    def distribute(self, V, W, X):
        if self.variant == "symmetric":
            return V & X, W & X
        if self.variant == "first_served":
            return V & X, (W & X) - V
        if self.as_printed:
            return (V & X) - W, V & X
        return (V & X) - W, W & X

    def is_contribution(self, c):
        return isinstance(c, frozenset) and c <= self.U

    def is_return(self, V, X):
        return isinstance(X, frozenset) and X <= V

    def _subsets(self, items):
        items = sorted_values(items)
        return [frozenset(s) for n in range(len(items) + 1) for s in itertools.combinations(items, n)]

    def enumerate_contributions(self, bound):
        return self._subsets(self.U)

    def enumerate_returns(self, V, bound):
        return self._subsets(V)

    def all_returns(self, V):
        return self._subsets(V)

    def gen_contribution(self, rng, size):
        return frozenset(d for d in self._dishes if rng.random() < 0.5)

    def gen_return(self, V, rng, size):
        return frozenset(d for d in sorted_values(V) if rng.random() < 0.5)


def potluck(U, variant="symmetric", as_printed=False) -> Potluck:
    return Potluck(U, variant, as_printed)
