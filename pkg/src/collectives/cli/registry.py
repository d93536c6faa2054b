"""Name -> constructor table behind the expression grammar."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .. import catalog, combinators
from ..core import Collective
from ..errors import InvalidParameter, UnknownCollective
from .expr import Call, ListLit, SetLit, parse_expr, print_expr

_MISSING = object()


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # set | symbol | nat | bool | collective | data
    default: Any = _MISSING
    help: str = ""

    @property
    def required(self) -> bool:
        return self.default is _MISSING

    def describe(self) -> str:
        if self.required:
            return f"{self.name}: {self.kind}"
        d = self.default
        shown = "none" if d is None else str(d).lower() if isinstance(d, bool) else str(d)
        return f"{self.name}: {self.kind} = {shown}"


@dataclass(frozen=True)
class Constructor:
    name: str
    build: Callable[..., Collective]
    params: tuple = ()
    summary: str = ""
    combinator: bool = False

    def signature(self) -> str:
        return f"{self.name}(" + ", ".join(p.describe() for p in self.params) + ")"


# ---------------------------------------------------------------- literal conversion


def literal(node) -> Any:
    """AST literal -> value: lists become tuples, sets frozensets."""
    if isinstance(node, Call):
        raise InvalidParameter(f"expected a literal, found the expression {print_expr(node)}")
    if isinstance(node, ListLit):
        return tuple(literal(x) for x in node.items)
    if isinstance(node, SetLit):
        return frozenset(literal(x) for x in node.items)
    return node


def _coerce(spec: ParamSpec, node, owner: str):
    where = f"{owner}: parameter {spec.name!r}"
    if spec.kind == "collective":
        if not isinstance(node, Call):
            raise InvalidParameter(f"{where} must be a collective expression")
        return evaluate(node)
    v = literal(node)
    if spec.kind == "set":
        if not isinstance(v, (tuple, frozenset)):
            raise InvalidParameter(f"{where} must be a list or set")
        return frozenset(v)
    if spec.kind == "symbol":
        if not isinstance(v, str):
            raise InvalidParameter(f"{where} must be a symbol")
        return v
    if spec.kind == "nat":
        if type(v) is not int or v < 0:
            raise InvalidParameter(f"{where} must be a natural number")
        return v
    if spec.kind == "bool":
        if type(v) is not bool:
            raise InvalidParameter(f"{where} must be true or false")
        return v
    return v


def _bind(ctor: Constructor, call: Call) -> dict:
    specs = ctor.params
    out: dict = {}
    positional = [p for p in call.args if p.name is None]
    named = [p for p in call.args if p.name is not None]
    if len(positional) > len(specs):
        raise InvalidParameter(f"{ctor.name} takes at most {len(specs)} parameters, got {len(positional)} positional")
    for spec, p in zip(specs, positional):
        out[spec.name] = _coerce(spec, p.value, ctor.name)
    by_name = {s.name: s for s in specs}
    for p in named:
        spec = by_name.get(p.name) or by_name.get(_ALIASES.get((ctor.name, p.name), ""))
        if spec is None:
            known = ", ".join(s.name for s in specs) or "none"
            raise InvalidParameter(f"{ctor.name} has no parameter {p.name!r} (parameters: {known})")
        if spec.name in out:
            raise InvalidParameter(f"{ctor.name}: parameter {spec.name!r} given twice")
        out[spec.name] = _coerce(spec, p.value, ctor.name)
    for spec in specs:
        if spec.name not in out:
            if spec.required:
                raise InvalidParameter(f"{ctor.name}: missing required parameter {spec.name!r}")
            out[spec.name] = spec.default
    return out


# ---------------------------------------------------------------- data-form builders


def _build_donation_box(monoid, alphabet, fixture):
    if fixture is not None:
        return catalog.donation_box(catalog.table_fixture(fixture))
    return catalog.donation_box(monoid, None if alphabet is None else sorted(alphabet))


def _build_table(fixture, contributions, unit, returns, agg, dist):
    if fixture is not None:
        if any(x is not None for x in (contributions, unit, returns, agg, dist)):
            raise InvalidParameter("table_collective takes either fixture or explicit tables, not both")
        return catalog.table_collective(catalog.table_fixture(fixture), label=fixture)
    if any(x is None for x in (contributions, unit, returns, agg, dist)):
        raise InvalidParameter("table_collective needs fixture, or all of contributions, unit, returns, agg, dist")
    tables = {}
    try:
        for entry in dist:
            i, j, pairs = entry
            tables[i, j] = [tuple(p) for p in pairs]
    except (TypeError, ValueError):
        raise InvalidParameter("dist entries must be [i, j, [[l, r], ...]]") from None
    t = catalog.FiniteCollectiveTable(contributions, unit, returns, agg, tables)
    return catalog.table_collective(t)


def _build_presheaf(fixture, opens, sections, restrictions):
    if fixture is not None:
        return catalog.presheaf_fixture(fixture)
    if opens is None or sections is None:
        raise InvalidParameter("presheaf_collective needs fixture, or opens and sections")
    opens = [frozenset(U) for U in opens]
    if len(sections) != len(opens):
        raise InvalidParameter("give one section list per open")
    secs = {U: list(s) for U, s in zip(opens, sections)}
    res = {}
    try:
        for i, j, images in restrictions or ():
            res[opens[i], opens[j]] = dict(zip(secs[opens[i]], images))
    except (TypeError, ValueError, IndexError):
        raise InvalidParameter("restrictions must be [i, j, [images...]] with indices into opens") from None
    return catalog.presheaf_collective(opens, secs, res)


def _build_free(interface, max):
    return combinators.free(interface, atom_bound=max)


_P = ParamSpec

CONSTRUCTORS: dict[str, Constructor] = {}


def register(ctor: Constructor) -> None:
    CONSTRUCTORS[ctor.name] = ctor


for _c in [
    Constructor("donation_box", _build_donation_box,
                (_P("monoid", "symbol", "naturals_add"), _P("alphabet", "set", None), _P("fixture", "symbol", None)),
                "any monoid; everyone receives go-team!"),
    Constructor("distribution_list", catalog.distribution_list, (_P("S", "set"),),
                "one message copied to everyone present"),
    Constructor("stakeholders", catalog.stakeholders, (), "amounts added; returns split proportionally"),
    Constructor("reservation", catalog.reservation, (), "time requests queue; granted time fills earlier ones first"),
    Constructor("fcfs_scheduler", catalog.fcfs_scheduler, (_P("A", "set"),), "task lists concatenated; prefixes completed"),
    Constructor("balanced_scheduler", catalog.balanced_scheduler, (_P("A", "set"), _P("max_count", "nat", 2)),
                "priority lists of task bundles merged slot by slot"),
    Constructor("potluck", catalog.potluck,
                (_P("U", "set"), _P("variant", "symbol", "symmetric"), _P("as_printed", "bool", False)),
                "dishes offered, a menu chosen, offerers asked to bring them"),
    Constructor("single_question_survey", catalog.single_question_survey, (_P("max", "nat", None),),
                "question sizes multiply; answers split by mod and div"),
    Constructor("prediction_market", catalog.prediction_market, (_P("E", "set"),),
                "weighted forecasts pooled; reward split by predicted weight"),
    Constructor("probabilistic_events", catalog.probabilistic_events, (),
                "independent events combined; joint outcomes projected back"),
    Constructor("simplices", catalog.simplices, (), "ordinals added; monotone maps split by pullback"),
    Constructor("finset_coproduct", catalog.finset_coproduct, (_P("bound", "nat", 2),),
                "finite sets by disjoint union; functions restricted"),
    Constructor("finset_cartesian_closed", catalog.finset_cartesian_closed, (_P("bound", "nat", 2),),
                "finite sets by product; functions curried"),
    Constructor("presheaf_collective", _build_presheaf,
                (_P("fixture", "symbol", None), _P("opens", "data", None), _P("sections", "data", None),
                 _P("restrictions", "data", None)),
                "opens by union; sections restricted"),
    Constructor("table_collective", _build_table,
                (_P("fixture", "symbol", None), _P("contributions", "data", None), _P("unit", "nat", None),
                 _P("returns", "data", None), _P("agg", "data", None), _P("dist", "data", None)),
                "finite collective given by validated tables"),
    Constructor("trajectories", catalog.trajectories, (), "polynomial vector fields followed one after another"),
    Constructor("multi_question_survey", combinators.multi_question_survey, (_P("max", "nat", None),),
                "free collective on the survey interface"),
    Constructor("parallel", combinators.parallel, (_P("C", "collective"), _P("D", "collective")),
                "both protocols side by side", combinator=True),
    Constructor("product", combinators.product, (_P("C", "collective"), _P("D", "collective")),
                "pairs of contributions, one return from either side", combinator=True),
    Constructor("composite", combinators.composite, (_P("C", "collective"), _P("D", "collective")),
                "the first protocol, then the second", combinator=True),
    Constructor("free", _build_free, (_P("interface", "symbol"), _P("max", "nat", None)),
                "lists of atoms of a registered interface", combinator=True),
]:
    register(_c)

# alternative parameter names accepted in expressions
_ALIASES = {
    ("finset_coproduct", "codomain_bound"): "bound",
    ("finset_cartesian_closed", "codomain_bound"): "bound",
    ("single_question_survey", "max_factor"): "max",
    ("multi_question_survey", "max_factor"): "max",
}

_KWARG_NAMES = {
    ("finset_coproduct", "bound"): "codomain_bound",
    ("finset_cartesian_closed", "bound"): "codomain_bound",
    ("single_question_survey", "max"): "max_factor",
    ("multi_question_survey", "max"): "max_factor",
}


def evaluate(call: Call) -> Collective:
    ctor = CONSTRUCTORS.get(call.name)
    if ctor is None:
        raise UnknownCollective(f"unknown collective {call.name!r}; see 'list'")
    kwargs = {_KWARG_NAMES.get((ctor.name, k), k): v for k, v in _bind(ctor, call).items()}
    try:
        return ctor.build(**kwargs)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InvalidParameter) or getattr(exc, "kind", None):
            raise
        raise InvalidParameter(f"{ctor.name}: {exc}") from None


def build(text: str) -> Collective:
    """Parse and evaluate a collective expression."""
    return evaluate(parse_expr(text))
