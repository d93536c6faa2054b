"""Finite collectives given by explicit tables.

Every collective is a monoid with a set of returns per element and a split
map per pair; on finite data that is literally a few lookup tables.  The
tables are validated against all unit and coassociativity equations when
the handle is built, using the compiled kernel when it is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .._kernels import LAWS, check_table
from ..core import Collective
from ..errors import InvalidTable


@dataclass(frozen=True)
class FiniteCollectiveTable:
    """Index-based tables for a finite collective.

    ``aggregation_table[i][j]`` is the index of ``contributions[i] * contributions[j]``.
    ``distribution_tables[i, j][r]`` is the pair ``(ri, rj)`` of return indices
    that return ``r`` on the aggregate (an index into its return set) splits to.
    """

    contributions: Sequence
    unit_index: int
    return_sets: Sequence[Sequence]
    aggregation_table: Sequence[Sequence[int]]
    distribution_tables: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "contributions", tuple(self.contributions))
        object.__setattr__(self, "return_sets", tuple(tuple(rs) for rs in self.return_sets))
        object.__setattr__(self, "aggregation_table", tuple(tuple(row) for row in self.aggregation_table))
        object.__setattr__(
            self,
            "distribution_tables",
            {tuple(k): tuple((int(a), int(b)) for a, b in v) for k, v in self.distribution_tables.items()},
        )

    @property
    def size(self) -> int:
        return len(self.contributions)

    def _check_shape(self, monoid_only: bool) -> None:
        N = self.size
        if N == 0:
            raise InvalidTable("a table needs at least one contribution", law="shape")
        if len(set(self.contributions)) != N:
            raise InvalidTable("contributions must be distinct", law="shape")
        if not 0 <= self.unit_index < N:
            raise InvalidTable(f"unit index {self.unit_index} out of range", law="shape")
        agg = self.aggregation_table
        if len(agg) != N or any(len(row) != N for row in agg):
            raise InvalidTable(f"aggregation table must be {N}x{N}", law="shape")
        for i, row in enumerate(agg):
            for j, k in enumerate(row):
                if type(k) is not int or not 0 <= k < N:
                    raise InvalidTable(f"aggregation entry ({i}, {j}) = {k!r} out of range", law="shape", indices=(i, j))
        if monoid_only:
            return
        if len(self.return_sets) != N:
            raise InvalidTable("one return set per contribution is required", law="shape")
        for i, rs in enumerate(self.return_sets):
            if len(set(rs)) != len(rs):
                raise InvalidTable(f"return set of contribution {i} has duplicates", law="shape", indices=(i,))
        nret = [len(rs) for rs in self.return_sets]
        for i in range(N):
            for j in range(N):
                if (i, j) not in self.distribution_tables:
                    raise InvalidTable(f"missing distribution table for ({i}, {j})", law="shape", indices=(i, j))
                entries = self.distribution_tables[i, j]
                k = agg[i][j]
                if len(entries) != nret[k]:
                    raise InvalidTable(
                        f"distribution table ({i}, {j}) needs {nret[k]} entries, has {len(entries)}",
                        law="shape",
                        indices=(i, j),
                    )
                for r, (a, b) in enumerate(entries):
                    if not (0 <= a < nret[i] and 0 <= b < nret[j]):
                        raise InvalidTable(f"distribution entry ({i}, {j})[{r}] = ({a}, {b}) out of range", law="shape", indices=(i, j, r))
        extra = set(self.distribution_tables) - {(i, j) for i in range(N) for j in range(N)}
        if extra:
            raise InvalidTable(f"distribution tables for unknown pairs {sorted(extra)}", law="shape")

    def encode(self):
        """Flat integer arrays in the kernel layout (see ``_kernels._tablecheck_py``)."""
        N = self.size
        agg = [k for row in self.aggregation_table for k in row]
        nret = [len(rs) for rs in self.return_sets]
        off, dl, dr = [], [], []
        for i in range(N):
            for j in range(N):
                off.append(len(dl))
                for a, b in self.distribution_tables[i, j]:
                    dl.append(a)
                    dr.append(b)
        return agg, nret, off, dl, dr

    def violations(self, kernel=None) -> list[tuple[str, tuple]]:
        """All violated laws with their first witnesses ``(i, j, k, r)``."""
        self._check_shape(False)
        kernel = kernel or check_table
        rows = kernel(*self.encode(), self.unit_index)
        return [(law, tuple(row[1:])) for law, row in zip(LAWS, rows) if row[0]]

    def validate(self, monoid_only: bool = False, kernel=None) -> None:
        self._check_shape(monoid_only)
        if monoid_only:
            self._validate_monoid()
            return
        found = self.violations(kernel)
        if found:
            law, idx = found[0]
            names = ", ".join(law for law, _ in found)
            raise InvalidTable(f"table violates {names}; first: {law} at indices {idx}", law=law, indices=idx, violations=found)

    def _validate_monoid(self) -> None:
        N, u, agg = self.size, self.unit_index, self.aggregation_table
        for i in range(N):
            if agg[i][u] != i or agg[u][i] != i:
                raise InvalidTable(f"unit law fails at {i}", law="monoid-unit", indices=(i,))
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    if agg[agg[i][j]][k] != agg[i][agg[j][k]]:
                        raise InvalidTable(f"associativity fails at {(i, j, k)}", law="monoid-assoc", indices=(i, j, k))


class TableCollective(Collective):
    name = "table_collective"
    can_enumerate = True
    can_sample = True

    def __init__(self, table: FiniteCollectiveTable, label=None, *, validate=True):
        # validate=False is for inspecting tables that are known to be unlawful
        if validate:
            table.validate()
        self.table = table
        self._cindex = {c: i for i, c in enumerate(table.contributions)}
        self._rindex = [{r: n for n, r in enumerate(rs)} for rs in table.return_sets]
        super().__init__(**({"fixture": label} if label else {}))

    def neutral(self):
        return self.table.contributions[self.table.unit_index]

    def aggregate(self, a, b):
        t = self.table
        return t.contributions[t.aggregation_table[self._cindex[a]][self._cindex[b]]]

    def distribute(self, a, b, r):
        t = self.table
        i, j = self._cindex[a], self._cindex[b]
        k = t.aggregation_table[i][j]
        ri, rj = t.distribution_tables[i, j][self._rindex[k][r]]
        return t.return_sets[i][ri], t.return_sets[j][rj]

    def is_contribution(self, c):
        try:
            return c in self._cindex
        except TypeError:
            return False

    def is_return(self, c, r):
        try:
            return r in self._rindex[self._cindex[c]]
        except TypeError:
            return False

    def enumerate_contributions(self, bound):
        return list(self.table.contributions)

    def enumerate_returns(self, c, bound):
        return list(self.table.return_sets[self._cindex[c]])

    def all_returns(self, c):
        return list(self.table.return_sets[self._cindex[c]])

    def gen_contribution(self, rng, size):
        return rng.choice(self.table.contributions)

    def gen_return(self, c, rng, size):
        from ..core import EmptyReturns

        rs = self.table.return_sets[self._cindex[c]]
        if not rs:
            raise EmptyReturns
        return rng.choice(rs)


def table_collective(table: FiniteCollectiveTable, label=None) -> TableCollective:
    return TableCollective(table, label)


def tabulate(C: Collective, contributions: Sequence) -> FiniteCollectiveTable:
    """Tables for ``C`` restricted to a finite fragment closed under aggregation.

    Every contribution in the fragment must have a finite ``all_returns``.
    """
    cs = list(contributions)
    index = {c: i for i, c in enumerate(cs)}
    rets = []
    for c in cs:
        rs = C.all_returns(c)
        if rs is None:
            raise InvalidTable(f"{C.name}: returns on {c!r} are not finitely listable", law="shape")
        rets.append(list(rs))
    rindex = [{r: n for n, r in enumerate(rs)} for rs in rets]
    agg = []
    for a in cs:
        row = []
        for b in cs:
            ab = C.aggregate(a, b)
            if ab not in index:
                raise InvalidTable(f"fragment not closed: {a!r} * {b!r} = {ab!r}", law="shape")
            row.append(index[ab])
        agg.append(row)
    dist = {}
    for i, a in enumerate(cs):
        for j, b in enumerate(cs):
            k = agg[i][j]
            entries = []
            for r in rets[k]:
                ra, rb = C.distribute(a, b, r)
                entries.append((rindex[i][ra], rindex[j][rb]))
            dist[i, j] = entries
    return FiniteCollectiveTable(cs, index[C.neutral()], rets, agg, dist)


# ---------------------------------------------------------------- fixtures

_E, _X = frozenset(), frozenset({"x"})


def _potluck1(first_served=False):
    # contributions: 0 = {}, 1 = {x}; returns on {x}: 0 = {}, 1 = {x}
    both = ((0, 0), (1, 0)) if first_served else ((0, 0), (1, 1))
    return FiniteCollectiveTable(
        contributions=[_E, _X],
        unit_index=0,
        return_sets=[[_E], [_E, _X]],
        aggregation_table=[[0, 1], [1, 1]],
        distribution_tables={
            (0, 0): [(0, 0)],
            (0, 1): [(0, 0), (0, 1)],
            (1, 0): [(0, 0), (1, 0)],
            (1, 1): both,
        },
    )


def _singleton():
    return FiniteCollectiveTable(["present"], 0, [["s"]], [[0]], {(0, 0): [(0, 0)]})


def _z2_donation():
    return FiniteCollectiveTable(
        [0, 1],
        0,
        [["go-team!"], ["go-team!"]],
        [[0, 1], [1, 0]],
        {(i, j): [(0, 0)] for i in range(2) for j in range(2)},
    )


def _left_zero():
    # e, x, y with x*y = x and y*x = y: a noncommutative monoid
    return FiniteCollectiveTable(
        ["e", "x", "y"],
        0,
        [["go-team!"]] * 3,
        [[0, 1, 2], [1, 1, 1], [2, 2, 2]],
        {(i, j): [(0, 0)] for i in range(3) for j in range(3)},
    )


def _last_wins(corrupt_eq3=False):
    # e, a, z with a*a = z and z absorbing; a prize (1) or nothing (0) always
    # goes to the later member
    R = [["*"], [0, 1], [0, 1]]
    dist = {(0, j): [(0, r) for r in range(len(R[j]))] for j in range(3)}
    dist.update({(i, 0): [(r, 0) for r in range(len(R[i]))] for i in range(3)})
    for key in ((1, 1), (1, 2), (2, 1), (2, 2)):
        dist[key] = [(0, 0), (0, 1)]
    if corrupt_eq3:
        # the prize on a*a is handed to both members
        dist[1, 1] = [(0, 0), (1, 1)]
    return FiniteCollectiveTable(["e", "a", "z"], 0, R, [[0, 1, 2], [1, 2, 2], [2, 2, 2]], dist)


TABLE_FIXTURES = {
    "singleton": _singleton,
    "potluck1": _potluck1,
    "potluck1_first": lambda: _potluck1(first_served=True),
    "z2_donation": _z2_donation,
    "left_zero": _left_zero,
    "last_wins": _last_wins,
}

# tables that must be rejected; each maps to the single law it breaks
CORRUPTED_FIXTURES = {
    "last_wins_eq3": (lambda: _last_wins(corrupt_eq3=True), "eq3"),
}


def table_fixture(name: str) -> FiniteCollectiveTable:
    """Raw tables by name, including the corrupted ones (which fail ``validate``)."""
    if name in TABLE_FIXTURES:
        return TABLE_FIXTURES[name]()
    if name in CORRUPTED_FIXTURES:
        return CORRUPTED_FIXTURES[name][0]()
    known = sorted(TABLE_FIXTURES) + sorted(CORRUPTED_FIXTURES)
    raise InvalidTable(f"unknown table fixture {name!r}; known: {known}", law="shape")
