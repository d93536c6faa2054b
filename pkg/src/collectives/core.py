"""The collective abstraction and its n-ary aggregation / distribution.

A collective is a monoid of contributions ``(C, neutral, aggregate)`` together
with, for every contribution ``c``, a set of returns ``R[c]`` and for every pair
``a, b`` a distribution map ``R[a*b] -> R[a] x R[b]`` obeying unit and
coassociativity laws.  Concrete collectives subclass :class:`Collective`.

The module-level functions (:func:`aggregate`, :func:`distribute`, ...) are the
checked entry points: they validate their inputs against the collective's
membership predicates before calling into the subclass.  Subclass methods are
the unchecked fast path used by the law engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .errors import CapabilityMissing, InvalidContribution, InvalidReturn
from .values import FrozenMap, Value, show, values_equal


class EmptyReturns(Exception):
    """Raised by ``gen_return`` when ``R[c]`` is empty; samplers drop the case."""


class Collective:
    """Base class for a runnable collective.

    Subclasses must provide :attr:`name`, :meth:`neutral`, :meth:`aggregate`,
    :meth:`distribute`, :meth:`is_contribution` and :meth:`is_return`.
    Enumerations and seeded generators are optional capabilities advertised by
    :attr:`can_enumerate` and :attr:`can_sample`.

    Instances are treated as immutable once constructed.
    """

    name: str = "collective"
    can_enumerate: bool = False
    can_sample: bool = False

    def __init__(self, **params):
        self.params = FrozenMap(params)

    # -- protocol -----------------------------------------------------------

    def neutral(self) -> Value:
        raise NotImplementedError

    def aggregate(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def distribute(self, a: Value, b: Value, r: Value) -> tuple[Value, Value]:
        raise NotImplementedError

    def is_contribution(self, c: Value) -> bool:
        raise NotImplementedError

    def is_return(self, c: Value, r: Value) -> bool:
        raise NotImplementedError

    # -- equality -----------------------------------------------------------

    def eq_contribution(self, a: Value, b: Value, tolerance=0) -> bool:
        return values_equal(a, b, tolerance)

    def eq_return(self, r: Value, s: Value, tolerance=0) -> bool:
        return values_equal(r, s, tolerance)

    # -- optional capabilities ------------------------------------------------

    def enumerate_contributions(self, bound: int) -> list[Value]:
        """Finite fragment of ``C`` whose size grows with ``bound``."""
        raise CapabilityMissing(f"{self.name} has no contribution enumeration")

    def enumerate_returns(self, c: Value, bound: int) -> list[Value]:
        """Finite fragment of ``R[c]`` (all of it when ``R[c]`` is finite)."""
        raise CapabilityMissing(f"{self.name} has no return enumeration")

    def all_returns(self, c: Value) -> list[Value] | None:
        """Every element of ``R[c]`` when that set is finite and listable, else ``None``."""
        return None

    def gen_contribution(self, rng: random.Random, size: int) -> Value:
        raise CapabilityMissing(f"{self.name} has no contribution generator")

    def gen_return(self, c: Value, rng: random.Random, size: int) -> Value:
        raise CapabilityMissing(f"{self.name} has no return generator")

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.name}({args})"


# ---------------------------------------------------------------- checked ops


def _require_contribution(C: Collective, c: Value) -> None:
    if not C.is_contribution(c):
        raise InvalidContribution(f"{show(c)} is not a contribution of {C.name}")


def _require_return(C: Collective, c: Value, r: Value) -> None:
    if not C.is_return(c, r):
        raise InvalidReturn(f"{show(r)} is not a return on contribution {show(c)} of {C.name}")


def neutral(C: Collective) -> Value:
    return C.neutral()


def aggregate(C: Collective, a: Value, b: Value) -> Value:
    _require_contribution(C, a)
    _require_contribution(C, b)
    return C.aggregate(a, b)


def distribute(C: Collective, a: Value, b: Value, r: Value) -> tuple[Value, Value]:
    _require_contribution(C, a)
    _require_contribution(C, b)
    _require_return(C, C.aggregate(a, b), r)
    return C.distribute(a, b, r)


def is_valid_return(C: Collective, c: Value, r: Value) -> bool:
    _require_contribution(C, c)
    return C.is_return(c, r)


def aggregate_all(C: Collective, cs: Sequence[Value]) -> Value:
    """Left fold of the aggregation starting from the neutral contribution."""
    for c in cs:
        _require_contribution(C, c)
    return _fold(C, cs)


def _fold(C: Collective, cs: Sequence[Value]) -> Value:
    acc = C.neutral()
    for c in cs:
        acc = C.aggregate(acc, c)
    return acc


def distribute_all(C: Collective, cs: Sequence[Value], r: Value) -> list[Value]:
    """Split ``r`` along the left-nested bracketing ``((c0*c1)*c2)*...``.

    The last member's share is split off the full return, then the prefix
    share is split recursively.  An empty member list yields ``[]`` provided
    ``r`` is a return on the neutral contribution.
    """
    cs = list(cs)
    for c in cs:
        _require_contribution(C, c)
    total = _fold(C, cs)
    _require_return(C, total, r)
    if not cs:
        return []
    prefixes = [cs[0]]
    for c in cs[1:-1]:
        prefixes.append(C.aggregate(prefixes[-1], c))
    shares = [None] * len(cs)
    current = r
    for i in range(len(cs) - 1, 0, -1):
        current, shares[i] = C.distribute(prefixes[i - 1], cs[i], current)
    shares[0] = current
    return shares


def distribute_all_right(C: Collective, cs: Sequence[Value], r: Value) -> list[Value]:
    """Oracle: split ``r`` along the right-nested bracketing ``c0*(c1*(c2*...))``."""
    cs = list(cs)
    if not cs:
        _require_return(C, C.neutral(), r)
        return []
    shares = []
    current = r
    for i in range(len(cs) - 1):
        rest = _fold(C, cs[i + 1 :])
        mine, current = C.distribute(cs[i], rest, current)
        shares.append(mine)
    shares.append(current)
    return shares


# ---------------------------------------------------------------- interfaces


@dataclass(frozen=True)
class PolynomialInterface:
    """Atoms with per-atom return sets: the data ``sum_c y^{R[c]}``.

    ``atoms(bound)`` and ``returns_of(atom, bound)`` enumerate finite fragments;
    generators are optional.
    """

    name: str
    is_atom: Callable[[Value], bool]
    is_atom_return: Callable[[Value, Value], bool]
    atoms: Callable[[int], list] | None = None
    returns_of: Callable[[Value, int], list] | None = None
    gen_atom: Callable[[random.Random, int], Value] | None = None
    gen_atom_return: Callable[[Value, random.Random, int], Value] | None = None
    all_returns_of: Callable[[Value], list | None] = field(default=lambda a: None)


def interface_of(C: Collective, name: str | None = None, atom_bound: int | None = None) -> PolynomialInterface:
    """The interface of a collective, forgetting its protocol.

    ``atom_bound`` caps the atom enumeration independently of the bound used
    for the enumerations built on top of the interface.
    """

    def atoms(bound):
        b = bound if atom_bound is None else min(bound, atom_bound)
        return C.enumerate_contributions(b)

    return PolynomialInterface(
        name=name or C.name,
        is_atom=C.is_contribution,
        is_atom_return=C.is_return,
        atoms=atoms if C.can_enumerate else None,
        returns_of=C.enumerate_returns if C.can_enumerate else None,
        gen_atom=C.gen_contribution if C.can_sample else None,
        gen_atom_return=C.gen_return if C.can_sample else None,
        all_returns_of=C.all_returns,
    )


def enumerate_lists(items: Iterable[Any], max_length: int):
    """All tuples over ``items`` of length 0..max_length, shortest first."""
    items = list(items)
    layer = [()]
    out = [()]
    for _ in range(max_length):
        layer = [t + (x,) for t in layer for x in items]
        out.extend(layer)
    return out
