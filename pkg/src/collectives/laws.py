"""Checking the defining equations of a collective.

Each law is evaluated either exhaustively over the handle's bounded
enumerations or on seeded random samples.  Nothing here proves a law; a
passing verdict only means no counterexample was found in the cases run.

Law ids:

``monoid-unit``, ``monoid-assoc``
    the contribution monoid.
``eq1-left``, ``eq1-right``
    unit cancellation: splitting a return on ``a*e`` (resp. ``e*a``) hands
    ``a`` the whole return.
``eq2-left``, ``eq2-right``, ``eq3``
    coassociativity: both bracketings of ``a*b*c`` deliver the same share to
    ``a``, to ``c`` and to ``b``.
``comm-agg``, ``comm-dis``
    commutativity of aggregation, and order-insensitivity of distribution.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator

from .core import Collective, EmptyReturns
from .errors import CapabilityMissing, CollectiveError
from .values import encode_value

LAW_IDS = (
    "monoid-unit",
    "monoid-assoc",
    "eq1-left",
    "eq1-right",
    "eq2-left",
    "eq2-right",
    "eq3",
    "comm-agg",
    "comm-dis",
)
DEFINING_LAWS = LAW_IDS[:7]
COMMUTATIVITY_LAWS = LAW_IDS[7:]


@dataclass(frozen=True)
class LawConfig:
    mode: str = "exhaustive"
    enumeration_bound: int = 3
    sample_count: int = 200
    seed: int = 0
    tolerance: Fraction = Fraction(0)

    def __post_init__(self):
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"mode must be exhaustive or sampled, got {self.mode!r}")
        if self.enumeration_bound < 0 or self.sample_count < 0:
            raise ValueError("bound and sample count must be natural numbers")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit natural number")
        if Fraction(self.tolerance) < 0:
            raise ValueError("tolerance must be nonnegative")


@dataclass
class Counterexample:
    inputs: dict
    expected: Any
    actual: Any
    detail: str = ""

    def to_doc(self) -> dict:
        return {
            "inputs": {k: _encode_or_repr(v) for k, v in self.inputs.items()},
            "expected": _encode_or_repr(self.expected),
            "actual": _encode_or_repr(self.actual),
            "detail": self.detail,
        }


def _encode_or_repr(v):
    try:
        return encode_value(v)
    except TypeError:
        return repr(v)


@dataclass
class LawResult:
    law: str
    verdict: str  # pass | fail | skipped
    cases_run: int
    counterexample: Counterexample | None = None
    note: str = ""

    def to_doc(self) -> dict:
        doc = {"law": self.law, "verdict": self.verdict, "cases_run": self.cases_run}
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample.to_doc()
        if self.note:
            doc["note"] = self.note
        return doc


@dataclass
class LawReport:
    results: list[LawResult] = field(default_factory=list)

    def __getitem__(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def __contains__(self, law: str) -> bool:
        return any(r.law == law for r in self.results)

    def extend(self, other: "LawReport") -> "LawReport":
        self.results.extend(other.results)
        return self

    @property
    def passed(self) -> bool:
        return all(r.verdict != "fail" for r in self.results)

    def verdicts(self) -> dict[str, str]:
        return {r.law: r.verdict for r in self.results}

    def to_doc(self) -> dict:
        return {
            "overall": "pass" if self.passed else "fail",
            "laws": [r.to_doc() for r in self.results],
        }


class _Violation(Exception):
    def __init__(self, cx: Counterexample, closure: bool = False):
        self.cx = cx
        self.closure = closure


# ---------------------------------------------------------------- case sources


def _case_rng(cfg: LawConfig, law: str, i: int) -> random.Random:
    # str seeds are hashed with sha512 by random.seed, so this is stable across runs
    return random.Random(f"{cfg.seed}/{law}/{i}")


def _size_for(cfg: LawConfig, i: int) -> int:
    return i % (max(cfg.enumeration_bound, 1) + 1)


def _require_capability(C: Collective, cfg: LawConfig) -> None:
    if cfg.mode == "exhaustive" and not C.can_enumerate:
        raise CapabilityMissing(f"{C.name} has no enumerations; use sampled mode")
    if cfg.mode == "sampled" and not C.can_sample:
        raise CapabilityMissing(f"{C.name} has no generators; use exhaustive mode")


def _tuples(C: Collective, cfg: LawConfig, law: str, arity: int, *, diagonal: bool = False) -> Iterator[tuple]:
    """Contribution tuples for a law.

    In sampled mode with ``diagonal`` set, every other pair repeats its first
    component so that laws needing ``a*b == b*a`` see commuting pairs.
    """
    if cfg.mode == "exhaustive":
        cs = C.enumerate_contributions(cfg.enumeration_bound)
        yield from itertools.product(cs, repeat=arity)
        return
    for i in range(cfg.sample_count):
        rng = _case_rng(cfg, law, i)
        size = _size_for(cfg, i)
        xs = tuple(C.gen_contribution(rng, size) for _ in range(arity))
        if diagonal and i % 2 == 1:
            xs = (xs[0],) * arity
        yield xs, rng, size


def _cases(C: Collective, cfg: LawConfig, law: str, arity: int, target: Callable, *, diagonal=False):
    """Yield (contributions, return) pairs; returns range over R[target(contributions)]."""
    if cfg.mode == "exhaustive":
        for xs in _tuples(C, cfg, law, arity):
            for r in C.enumerate_returns(target(xs), cfg.enumeration_bound):
                yield xs, r
    else:
        for xs, rng, size in _tuples(C, cfg, law, arity, diagonal=diagonal):
            c = target(xs)
            try:
                r = C.gen_return(c, rng, size)
            except EmptyReturns:
                continue
            yield xs, r


# ---------------------------------------------------------------- helpers


def _run(law: str, cases: Iterator, body: Callable) -> LawResult:
    n = 0
    for case in cases:
        n += 1
        try:
            body(*case)
        except _Violation as v:
            cx = v.cx
            if v.closure:
                # report the law's own inputs; the inner split goes in the detail
                inner = ", ".join(f"{k}={x!r}" for k, x in cx.inputs.items())
                cx = Counterexample(_inputs_of(case), cx.expected, cx.actual, f"{cx.detail} (in distribute({inner}))")
            return LawResult(law, "fail", n, cx)
        except CollectiveError as exc:
            inputs = _inputs_of(case)
            return LawResult(law, "fail", n, Counterexample(inputs, "defined result", repr(exc), f"{type(exc).__name__}: {exc}"))
    return LawResult(law, "pass", n)


def _inputs_of(case) -> dict:
    out = dict(zip("abc", case[0]))
    if len(case) > 1:
        out["r"] = case[1]
    return out


def _split(C: Collective, a, b, r, *, check_closure=True):
    """Distribute ``r`` over ``a, b`` and verify both shares are returns."""
    ra, rb = C.distribute(a, b, r)
    if check_closure:
        if not C.is_return(a, ra):
            raise _Violation(Counterexample({"a": a, "b": b, "r": r}, "a return on a", ra, "closure: left share is not a return on a"), closure=True)
        if not C.is_return(b, rb):
            raise _Violation(Counterexample({"a": a, "b": b, "r": r}, "a return on b", rb, "closure: right share is not a return on b"), closure=True)
    return ra, rb


# ---------------------------------------------------------------- the checks


def check_monoid(C: Collective, cfg: LawConfig) -> LawReport:
    _require_capability(C, cfg)
    tol = cfg.tolerance
    e = C.neutral()

    def unit(xs):
        (a,) = xs
        for label, got in (("a*e", C.aggregate(a, e)), ("e*a", C.aggregate(e, a))):
            if not C.eq_contribution(got, a, tol):
                raise _Violation(Counterexample({"a": a}, a, got, f"{label} != a"))

    def assoc(xs):
        a, b, c = xs
        lhs = C.aggregate(C.aggregate(a, b), c)
        rhs = C.aggregate(a, C.aggregate(b, c))
        if not C.eq_contribution(lhs, rhs, tol):
            raise _Violation(Counterexample({"a": a, "b": b, "c": c}, lhs, rhs, "(a*b)*c != a*(b*c)"))

    return LawReport(
        [
            _run("monoid-unit", _unwrap(_tuples(C, cfg, "monoid-unit", 1), cfg), unit),
            _run("monoid-assoc", _unwrap(_tuples(C, cfg, "monoid-assoc", 3), cfg), assoc),
        ]
    )


def _unwrap(it, cfg):
    for t in it:
        yield (t if cfg.mode == "exhaustive" else t[0],)


def check_unit_cancellation(C: Collective, cfg: LawConfig) -> LawReport:
    _require_capability(C, cfg)
    tol = cfg.tolerance
    e = C.neutral()

    def left(xs, r):
        (a,) = xs
        share, _ = _split(C, a, e, r)
        if not C.eq_return(share, r, tol):
            raise _Violation(Counterexample({"a": a, "neutral": e, "r": r}, r, share, "left share of distribute(a, e, r) != r"))

    def right(xs, r):
        (a,) = xs
        _, share = _split(C, e, a, r)
        if not C.eq_return(share, r, tol):
            raise _Violation(Counterexample({"neutral": e, "a": a, "r": r}, r, share, "right share of distribute(e, a, r) != r"))

    return LawReport(
        [
            _run("eq1-left", _cases(C, cfg, "eq1-left", 1, lambda xs: C.aggregate(xs[0], e)), left),
            _run("eq1-right", _cases(C, cfg, "eq1-right", 1, lambda xs: C.aggregate(e, xs[0])), right),
        ]
    )


def check_coassociativity(C: Collective, cfg: LawConfig) -> LawReport:
    _require_capability(C, cfg)
    tol = cfg.tolerance

    def target(xs):
        a, b, c = xs
        return C.aggregate(C.aggregate(a, b), c)

    def paths(xs, r):
        a, b, c = xs
        ab, bc = C.aggregate(a, b), C.aggregate(b, c)
        if not C.is_return(C.aggregate(a, bc), r):
            raise _Violation(Counterexample({"a": a, "b": b, "c": c, "r": r}, "a return on a*(b*c)", r, "return on (a*b)*c is not a return on a*(b*c)"))
        r_ab, r_c = _split(C, ab, c, r)
        r_a2, r_bc = _split(C, a, bc, r)
        r_a1, r_b1 = _split(C, a, b, r_ab)
        r_b2, r_c2 = _split(C, b, c, r_bc)
        return (r_a1, r_a2), (r_c2, r_c), (r_b1, r_b2)

    def make(idx, law, text):
        def body(xs, r):
            lhs, rhs = paths(xs, r)[idx]
            if not C.eq_return(lhs, rhs, tol):
                a, b, c = xs
                raise _Violation(Counterexample({"a": a, "b": b, "c": c, "r": r}, lhs, rhs, text))

        return body

    return LawReport(
        [
            _run("eq2-left", _cases(C, cfg, "eq2-left", 3, target), make(0, "eq2-left", "share of a differs between bracketings")),
            _run("eq2-right", _cases(C, cfg, "eq2-right", 3, target), make(1, "eq2-right", "share of c differs between bracketings")),
            _run("eq3", _cases(C, cfg, "eq3", 3, target), make(2, "eq3", "share of b differs between bracketings")),
        ]
    )


def check_commutativity(C: Collective, cfg: LawConfig) -> LawReport:
    """Aggregation commutativity, then distribution symmetry.

    The distribution comparison is only well-posed for pairs with
    ``a*b == b*a``; other pairs are not counted.  ``comm-dis`` is skipped when
    no such pair (with a nonempty return set) occurs among the cases.
    """
    _require_capability(C, cfg)
    tol = cfg.tolerance

    def agg(xs):
        a, b = xs
        ab, ba = C.aggregate(a, b), C.aggregate(b, a)
        if not C.eq_contribution(ab, ba, tol):
            raise _Violation(Counterexample({"a": a, "b": b}, ab, ba, "a*b != b*a"))

    agg_result = _run("comm-agg", _unwrap(_tuples(C, cfg, "comm-agg", 2), cfg), agg)

    def commuting_cases():
        for xs, r in _cases(C, cfg, "comm-dis", 2, lambda xs: C.aggregate(*xs), diagonal=True):
            a, b = xs
            if C.eq_contribution(C.aggregate(a, b), C.aggregate(b, a), tol):
                yield xs, r

    def dis(xs, r):
        a, b = xs
        a_first, b_second = _split(C, a, b, r)
        b_first, a_second = _split(C, b, a, r)
        if not C.eq_return(a_first, a_second, tol):
            raise _Violation(Counterexample({"a": a, "b": b, "r": r}, a_first, a_second, "left-share: a's share of distribute(a, b, r) != a's share of distribute(b, a, r)"))
        if not C.eq_return(b_second, b_first, tol):
            raise _Violation(Counterexample({"a": a, "b": b, "r": r}, b_second, b_first, "right-share: b's share of distribute(a, b, r) != b's share of distribute(b, a, r)"))

    dis_result = _run("comm-dis", commuting_cases(), dis)
    if dis_result.cases_run == 0:
        dis_result = LawResult("comm-dis", "skipped", 0, note="no commuting pair with a nonempty return set")
    return LawReport([agg_result, dis_result])


def check_all(C: Collective, cfg: LawConfig | None = None, *, commutativity: bool = True) -> LawReport:
    cfg = cfg or LawConfig()
    report = check_monoid(C, cfg)
    report.extend(check_unit_cancellation(C, cfg))
    report.extend(check_coassociativity(C, cfg))
    if commutativity:
        report.extend(check_commutativity(C, cfg))
    return report


def report_document(expr: str, cfg: LawConfig, report: LawReport) -> dict:
    """The report schema shared with the command line."""
    doc = {
        "collective": expr,
        "config": {
            "mode": cfg.mode,
            "bound": cfg.enumeration_bound,
            "samples": cfg.sample_count,
            "seed": cfg.seed,
            "tolerance": encode_value(Fraction(cfg.tolerance)),
        },
    }
    doc.update(report.to_doc())
    return doc
