"""Building collectives from collectives: parallel, product, composite and free."""

from __future__ import annotations

import inspect
import itertools
from typing import Callable

from .catalog.basic import single_question_survey
from .core import Collective, EmptyReturns, PolynomialInterface, enumerate_lists, interface_of
from .errors import CapabilityMissing, InvalidParameter, NonEnumerableStrategy, UnknownCollective
from .values import FrozenMap, Seq, Tagged, is_nat, left, register_kind, right


def _product_or_none(lists):
    if any(l is None for l in lists):
        return None
    return list(itertools.product(*lists))


# ---------------------------------------------------------------- parallel


class Parallel(Collective):
    """Both protocols run side by side on pairs of contributions and pairs of returns."""

    name = "parallel"

    def __init__(self, C: Collective, D: Collective):
        self.C, self.D = C, D
        self.can_enumerate = C.can_enumerate and D.can_enumerate
        self.can_sample = C.can_sample and D.can_sample
        super().__init__(left=C, right=D)

    def neutral(self):
        return (self.C.neutral(), self.D.neutral())

    def aggregate(self, a, b):
        return (self.C.aggregate(a[0], b[0]), self.D.aggregate(a[1], b[1]))

    def distribute(self, a, b, r):
        x, y = self.C.distribute(a[0], b[0], r[0])
        u, v = self.D.distribute(a[1], b[1], r[1])
        return (x, u), (y, v)

    def is_contribution(self, c):
        return type(c) is tuple and len(c) == 2 and self.C.is_contribution(c[0]) and self.D.is_contribution(c[1])

    def is_return(self, c, r):
        return type(r) is tuple and len(r) == 2 and self.C.is_return(c[0], r[0]) and self.D.is_return(c[1], r[1])

    def eq_contribution(self, a, b, tolerance=0):
        return self.C.eq_contribution(a[0], b[0], tolerance) and self.D.eq_contribution(a[1], b[1], tolerance)

    def eq_return(self, r, s, tolerance=0):
        return self.C.eq_return(r[0], s[0], tolerance) and self.D.eq_return(r[1], s[1], tolerance)

    def enumerate_contributions(self, bound):
        return list(itertools.product(self.C.enumerate_contributions(bound), self.D.enumerate_contributions(bound)))

    def enumerate_returns(self, c, bound):
        return list(itertools.product(self.C.enumerate_returns(c[0], bound), self.D.enumerate_returns(c[1], bound)))

    def all_returns(self, c):
        return _product_or_none([self.C.all_returns(c[0]), self.D.all_returns(c[1])])

    def gen_contribution(self, rng, size):
        return (self.C.gen_contribution(rng, size), self.D.gen_contribution(rng, size))

    def gen_return(self, c, rng, size):
        return (self.C.gen_return(c[0], rng, size), self.D.gen_return(c[1], rng, size))


def parallel(C: Collective, D: Collective) -> Parallel:
    return Parallel(C, D)


# ---------------------------------------------------------------- product


class Product(Collective):
    """Pairs of contributions, but a single return from either side is handed out."""

    name = "product"

    def __init__(self, C: Collective, D: Collective):
        self.C, self.D = C, D
        self.can_enumerate = C.can_enumerate and D.can_enumerate
        self.can_sample = C.can_sample and D.can_sample
        super().__init__(left=C, right=D)

    def neutral(self):
        return (self.C.neutral(), self.D.neutral())

    def aggregate(self, a, b):
        return (self.C.aggregate(a[0], b[0]), self.D.aggregate(a[1], b[1]))

    def distribute(self, a, b, r):
        if r.tag == "left":
            x, y = self.C.distribute(a[0], b[0], r.value)
            return left(x), left(y)
        x, y = self.D.distribute(a[1], b[1], r.value)
        return right(x), right(y)

    def is_contribution(self, c):
        return type(c) is tuple and len(c) == 2 and self.C.is_contribution(c[0]) and self.D.is_contribution(c[1])

    def is_return(self, c, r):
        if not isinstance(r, Tagged):
            return False
        if r.tag == "left":
            return self.C.is_return(c[0], r.value)
        return self.D.is_return(c[1], r.value)

    def eq_contribution(self, a, b, tolerance=0):
        return self.C.eq_contribution(a[0], b[0], tolerance) and self.D.eq_contribution(a[1], b[1], tolerance)

    def eq_return(self, r, s, tolerance=0):
        if r.tag != s.tag:
            return False
        side = self.C if r.tag == "left" else self.D
        return side.eq_return(r.value, s.value, tolerance)

    def enumerate_contributions(self, bound):
        return list(itertools.product(self.C.enumerate_contributions(bound), self.D.enumerate_contributions(bound)))

    def enumerate_returns(self, c, bound):
        return [left(r) for r in self.C.enumerate_returns(c[0], bound)] + [
            right(s) for s in self.D.enumerate_returns(c[1], bound)
        ]

    def all_returns(self, c):
        rs, ss = self.C.all_returns(c[0]), self.D.all_returns(c[1])
        if rs is None or ss is None:
            return None
        return [left(r) for r in rs] + [right(s) for s in ss]

    def gen_contribution(self, rng, size):
        return (self.C.gen_contribution(rng, size), self.D.gen_contribution(rng, size))

    def gen_return(self, c, rng, size):
        sides = [("left", self.C, c[0]), ("right", self.D, c[1])]
        if rng.random() < 0.5:
            sides.reverse()
        for tag, X, x in sides:
            try:
                return Tagged(tag, X.gen_return(x, rng, size))
            except EmptyReturns:
                continue
        raise EmptyReturns


def product(C: Collective, D: Collective) -> Product:
    return Product(C, D)


# ---------------------------------------------------------------- strategies

# A strategy sends each return of the first collective to a contribution of
# the second.  Explicit strategies are FrozenMap tables keyed by every return;
# the classes below are opaque and only meant for sessions.

_NAMED_STRATEGIES: dict[str, Callable] = {}


def register_strategy(name: str, fn: Callable) -> None:
    _NAMED_STRATEGIES[name] = fn


class NamedStrategy:
    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in _NAMED_STRATEGIES:
            raise UnknownCollective(f"unknown strategy {name!r}; registered: {sorted(_NAMED_STRATEGIES)}")
        self.name = name

    def __call__(self, r):
        return _NAMED_STRATEGIES[self.name](r)

    def __eq__(self, other):
        return isinstance(other, NamedStrategy) and other.name == self.name

    def __hash__(self):
        return hash(("strategy", self.name))

    def __repr__(self):
        return f"NamedStrategy({self.name!r})"


class ConstantStrategy:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __call__(self, r):
        return self.value

    def __eq__(self, other):
        return isinstance(other, ConstantStrategy) and other.value == self.value

    def __hash__(self):
        return hash(("constant", self.value))

    def __repr__(self):
        return f"ConstantStrategy({self.value!r})"


class ComposedStrategy:
    """``r -> f(share_a(r)) * g(share_b(r))``, evaluated lazily."""

    __slots__ = ("C", "D", "a", "f", "b", "g")

    def __init__(self, C, D, a, f, b, g):
        self.C, self.D, self.a, self.f, self.b, self.g = C, D, a, f, b, g

    def __call__(self, r):
        ra, rb = self.C.distribute(self.a, self.b, r)
        return self.D.aggregate(apply_strategy(self.f, ra), apply_strategy(self.g, rb))

    def _key(self):
        return (self.a, self.f, self.b, self.g)

    def __eq__(self, other):
        return isinstance(other, ComposedStrategy) and other._key() == self._key()

    def __hash__(self):
        return hash(("composed", self._key()))

    def __repr__(self):
        return f"ComposedStrategy({self.a!r}, {self.f!r}, {self.b!r}, {self.g!r})"


register_kind("strategy", NamedStrategy, lambda s, enc: {"name": s.name}, lambda d, dec: NamedStrategy(d["name"]))
register_kind(
    "constant_strategy",
    ConstantStrategy,
    lambda s, enc: {"value": enc(s.value)},
    lambda d, dec: ConstantStrategy(dec(d["value"], ".value")),
)

_OPAQUE = (NamedStrategy, ConstantStrategy, ComposedStrategy)


def apply_strategy(f, r):
    if isinstance(f, FrozenMap):
        return f[r]
    return f(r)


# ---------------------------------------------------------------- composite


class Composite(Collective):
    """First collective, then the second, with contributions chosen per first-stage return.

    A contribution is ``(c, f)`` where ``f`` picks a second-stage contribution
    for every return on ``c``.  A return is ``(r, s)`` with ``s`` a return on
    ``f(r)``.
    """

    name = "composite"

    def __init__(self, C: Collective, D: Collective):
        self.C, self.D = C, D
        self.can_enumerate = C.can_enumerate and D.can_enumerate
        self.can_sample = C.can_sample and D.can_sample
        super().__init__(left=C, right=D)

    def _returns_of(self, c):
        rs = self.C.all_returns(c)
        if rs is None:
            raise NonEnumerableStrategy(f"{self.C.name}: returns on {c!r} cannot be listed, so strategies cannot be tables")
        return rs

    def neutral(self):
        e, d = self.C.neutral(), self.D.neutral()
        rs = self.C.all_returns(e)
        if rs is None:
            return (e, ConstantStrategy(d))
        return (e, FrozenMap({r: d for r in rs}))

    def aggregate(self, a, b):
        (x, f), (y, g) = a, b
        xy = self.C.aggregate(x, y)
        rs = self.C.all_returns(xy)
        if rs is None or isinstance(f, _OPAQUE) or isinstance(g, _OPAQUE):
            return (xy, ComposedStrategy(self.C, self.D, x, f, y, g))
        table = {}
        for r in rs:
            ra, rb = self.C.distribute(x, y, r)
            table[r] = self.D.aggregate(f[ra], g[rb])
        return (xy, FrozenMap(table))

    def distribute(self, a, b, ret):
        (x, f), (y, g) = a, b
        r, s = ret
        ra, rb = self.C.distribute(x, y, r)
        sa, sb = self.D.distribute(apply_strategy(f, ra), apply_strategy(g, rb), s)
        return (ra, sa), (rb, sb)

    def is_contribution(self, c):
        if not (type(c) is tuple and len(c) == 2 and self.C.is_contribution(c[0])):
            return False
        x, f = c
        if isinstance(f, _OPAQUE):
            return True
        if not isinstance(f, FrozenMap):
            return False
        rs = self.C.all_returns(x)
        if rs is None or set(f) != set(rs):
            return False
        return all(self.D.is_contribution(d) for d in f.values())

    def is_return(self, c, ret):
        if not (type(ret) is tuple and len(ret) == 2):
            return False
        (x, f), (r, s) = c, ret
        if not self.C.is_return(x, r):
            return False
        try:
            d = apply_strategy(f, r)
        except (KeyError, TypeError):
            return False
        return self.D.is_return(d, s)

    def enumerate_contributions(self, bound):
        ds = self.D.enumerate_contributions(bound)
        out = []
        for x in self.C.enumerate_contributions(bound):
            rs = self._returns_of(x)
            for images in itertools.product(ds, repeat=len(rs)):
                out.append((x, FrozenMap(zip(rs, images))))
        return out

    def enumerate_returns(self, c, bound):
        x, f = c
        return [(r, s) for r in self.C.enumerate_returns(x, bound) for s in self.D.enumerate_returns(apply_strategy(f, r), bound)]

    def all_returns(self, c):
        x, f = c
        rs = self.C.all_returns(x)
        if rs is None:
            return None
        out = []
        for r in rs:
            ss = self.D.all_returns(apply_strategy(f, r))
            if ss is None:
                return None
            out.extend((r, s) for s in ss)
        return out

    def gen_contribution(self, rng, size):
        x = self.C.gen_contribution(rng, size)
        rs = self._returns_of(x)
        return (x, FrozenMap({r: self.D.gen_contribution(rng, size) for r in rs}))

    def gen_return(self, c, rng, size):
        x, f = c
        r = self.C.gen_return(x, rng, size)
        return (r, self.D.gen_return(apply_strategy(f, r), rng, size))


def composite(C: Collective, D: Collective) -> Composite:
    return Composite(C, D)


# ---------------------------------------------------------------- free


class Free(Collective):
    """Lists of atoms, concatenated; a return is one atom-return per list entry."""

    name = "free"

    def __init__(self, p: PolynomialInterface):
        self.p = p
        self.can_enumerate = p.atoms is not None and p.returns_of is not None
        self.can_sample = p.gen_atom is not None and p.gen_atom_return is not None
        super().__init__(interface=p.name)

    def neutral(self):
        return Seq()

    def aggregate(self, l, m):
        return l + m

    def distribute(self, l, m, r):
        n = len(l)
        return r[:n], r[n:]

    def is_contribution(self, c):
        return isinstance(c, Seq) and all(self.p.is_atom(x) for x in c)

    def is_return(self, c, r):
        return type(r) is tuple and len(r) == len(c) and all(self.p.is_atom_return(x, y) for x, y in zip(c, r))

    def enumerate_contributions(self, bound):
        return [Seq(t) for t in enumerate_lists(self.p.atoms(bound), bound)]

    def enumerate_returns(self, c, bound):
        return list(itertools.product(*(self.p.returns_of(x, bound) for x in c)))

    def all_returns(self, c):
        return _product_or_none([self.p.all_returns_of(x) for x in c])

    def gen_contribution(self, rng, size):
        return Seq(self.p.gen_atom(rng, size) for _ in range(rng.randint(0, size + 1)))

    def gen_return(self, c, rng, size):
        return tuple(self.p.gen_atom_return(x, rng, size) for x in c)


def _two_atom_interface() -> PolynomialInterface:
    # atom "b" has the single return "f"; atom "c" has returns "s1", "s2"
    R = {"b": ("f",), "c": ("s1", "s2")}
    return PolynomialInterface(
        name="two_atom",
        is_atom=lambda a: a in R if isinstance(a, str) else False,
        is_atom_return=lambda a, r: r in R[a],
        atoms=lambda bound: list(R),
        returns_of=lambda a, bound: list(R[a]),
        gen_atom=lambda rng, size: rng.choice(list(R)),
        gen_atom_return=lambda a, rng, size: rng.choice(R[a]),
        all_returns_of=lambda a: list(R[a]),
    )


def _survey_interface(atom_bound=None) -> PolynomialInterface:
    return interface_of(single_question_survey(), name="survey", atom_bound=atom_bound)


INTERFACES: dict[str, Callable[..., PolynomialInterface]] = {
    "survey": _survey_interface,
    "two_atom": _two_atom_interface,
}


def interface(name: str, **kwargs) -> PolynomialInterface:
    make = INTERFACES.get(name)
    if make is None:
        raise UnknownCollective(f"unknown interface {name!r}; known: {sorted(INTERFACES)}")
    accepted = inspect.signature(make).parameters
    extra = sorted(set(kwargs) - set(accepted))
    if extra:
        raise InvalidParameter(f"interface {name!r} takes no parameter {extra[0]!r}")
    return make(**kwargs)


def free(p: PolynomialInterface | str, atom_bound=None) -> Free:
    """The free collective on an interface (or on a registered interface name).

    ``atom_bound`` caps the atom enumeration; it is only accepted for
    interfaces whose atoms form an unbounded family (``survey``).
    """
    if isinstance(p, str):
        p = interface(p, **({} if atom_bound is None else {"atom_bound": atom_bound}))
    elif atom_bound is not None:
        raise CapabilityMissing("atom_bound applies to named interfaces only")
    return Free(p)


def multi_question_survey(max_factor=None) -> Free:
    """Surveys with several questions: the free collective on the survey interface."""
    if max_factor is not None and not is_nat(max_factor):
        raise ValueError("max_factor must be a natural number")
    C = free("survey", atom_bound=max_factor)
    C.name = "multi_question_survey"
    C.params = FrozenMap({} if max_factor is None else {"max": max_factor})
    return C
