"""Canned, narrated rounds."""

from __future__ import annotations

from fractions import Fraction

from ..catalog import trajectories
from ..catalog.trajectories import X1, X2, VectorField
from ..core import distribute_all
from ..errors import UnknownDemo
from ..session import new_session, settle, submit
from ..values import FrozenMap


def _q(x) -> str:
    return str(Fraction(x))


def _set(s) -> str:
    return "{" + ", ".join(sorted(s)) + "}"


def prediction_market() -> str:
    E = ("e1", "e2")
    s = new_session("prediction_market(E=[e1, e2])")
    s = submit(s, "team_a", (1, FrozenMap({"e1": Fraction(1, 3), "e2": Fraction(2, 3)})))
    s = submit(s, "team_b", (1, FrozenMap({"e1": Fraction(1, 2), "e2": Fraction(1, 2)})))
    s = settle(s, ("e2", Fraction(7)))
    k, p = s.aggregate
    lines = [
        "Two teams of one analyst each forecast a race between e1 and e2.",
        "  team_a predicts e1: 1/3, e2: 2/3",
        "  team_b predicts e1: 1/2, e2: 1/2",
        f"Pooled forecast ({k} analysts): " + ", ".join(f"{e}: {_q(p[e])}" for e in E),
        "e2 wins and the market pays out 7.",
    ]
    for m, (e, r) in s.distributed:
        lines.append(f"  {m} receives {_q(r)} for its weight on {e}")
    return "\n".join(lines)


def potluck() -> str:
    offers = [("alice", frozenset({"pie", "salad"})), ("bob", frozenset({"pie", "soup"}))]
    menu = frozenset({"pie", "soup"})
    lines = [f"{m} offers {_set(V)}" for m, V in offers]
    lines.append(f"The host picks the menu {_set(menu)}.")
    for variant in ("symmetric", "first_served", "last_served"):
        s = new_session(f"potluck(U=[pie, salad, soup], variant={variant})")
        for m, V in offers:
            s = submit(s, m, V)
        s = settle(s, menu)
        asked = ", ".join(f"{m} brings {_set(X)}" for m, X in s.distributed)
        lines.append(f"  {variant}: {asked}")
    return "\n".join(lines)


def trajectory_walk() -> str:
    T = trajectories()
    steps = [
        ("east", VectorField.constant(1, 0)),
        ("north", VectorField.constant(0, 1)),
        ("turn", VectorField(-X2, X1)),
    ]
    x0 = (Fraction(0), Fraction(0))
    starts = distribute_all(T, [v for _, v in steps], x0)
    lines = ["Three walkers follow their vector fields in turn, starting at (0, 0)."]
    for (name, v), x in zip(steps, starts):
        y = (x[0] + v(x)[0], x[1] + v(x)[1])
        lines.append(f"  {name:5s} field ({v.v1}, {v.v2}) starts at ({_q(x[0])}, {_q(x[1])}) and lands at ({_q(y[0])}, {_q(y[1])})")
    return "\n".join(lines)


DEMOS = {
    "prediction_market": prediction_market,
    "potluck": potluck,
    "trajectories": trajectory_walk,
}


def run_demo(name: str) -> str:
    try:
        return DEMOS[name]()
    except KeyError:
        raise UnknownDemo(f"unknown demo {name!r}; available: {', '.join(sorted(DEMOS))}") from None
