import itertools
from fractions import Fraction as F

import pytest

from collectives import catalog, combinators
from collectives.catalog import TableCollective
from collectives.combinators import ComposedStrategy, ConstantStrategy, apply_strategy, composite, free, multi_question_survey, parallel, product
from collectives.errors import InvalidParameter, InvalidReturn, NonEnumerableStrategy
from collectives.core import distribute
from collectives.laws import LawConfig, check_all, check_commutativity
from collectives.values import FrozenMap, Seq, Tagged

from oracles import exhaustive_failures

DEFINING = dict(commutativity=False)


def test_parallel_example():
    P = parallel(catalog.stakeholders(), catalog.potluck(["pie", "salad"]))
    pie, salad = frozenset({"pie"}), frozenset({"salad"})
    assert P.distribute((2, pie), (3, salad), (10, pie)) == ((4, pie), (6, frozenset()))
    assert P.neutral() == (0, frozenset())


def test_parallel_survey_laws():
    S = catalog.single_question_survey()
    rep = check_all(parallel(S, S), LawConfig("exhaustive", enumeration_bound=3), **DEFINING)
    assert rep.passed


def test_product_cases():
    P = product(catalog.single_question_survey(), catalog.reservation())
    a, b = (7, 2), (4, 3)
    assert P.distribute(a, b, Tagged("left", 19)) == (Tagged("left", 5), Tagged("left", 2))
    assert P.distribute(a, b, Tagged("right", 4)) == (Tagged("right", 2), Tagged("right", 2))
    assert P.neutral() == (1, 0)
    with pytest.raises(InvalidReturn):
        distribute(P, a, b, Tagged("left", 28))
    with pytest.raises(ValueError):
        Tagged("middle", 1)


def test_product_laws_sampled():
    P = product(catalog.single_question_survey(), catalog.reservation())
    rep = check_all(P, LawConfig("sampled"))
    assert rep.verdicts()["comm-dis"] == "fail"
    assert all(rep.verdicts()[law] == "pass" for law in rep.verdicts() if law != "comm-dis")


# ---------------------------------------------------------------- composite, brute force


def _direct_aggregate(a, b):
    # survey then symmetric potluck, written straight from the two formulas
    (x, f), (y, g) = a, b
    return x * y, {r: f[r % x] | g[r // x] for r in range(x * y)}


def _direct_distribute(a, b, ret):
    (x, f), (y, g) = a, b
    r, s = ret
    i, j = r % x, r // x
    return (i, s & f[i]), (j, s & g[j])


def _strategies(x, dishes):
    subsets = [frozenset(c) for n in range(len(dishes) + 1) for c in itertools.combinations(dishes, n)]
    for images in itertools.product(subsets, repeat=x):
        yield (x, dict(enumerate(images)))


def test_composite_matches_direct_formulas():
    C = composite(catalog.single_question_survey(2), catalog.potluck(["x"]))
    mine = [s for x in range(3) for s in _strategies(x, ["x"])]
    as_values = [(x, FrozenMap(f)) for x, f in mine]
    assert sorted(map(repr, as_values)) == sorted(map(repr, C.enumerate_contributions(2)))
    for (a, va), (b, vb) in itertools.product(zip(mine, as_values), repeat=2):
        xy, h = _direct_aggregate(a, b)
        assert C.aggregate(va, vb) == (xy, FrozenMap(h))
        for r in range(xy):
            for s in [frozenset(), frozenset({"x"})]:
                if s <= h[r]:
                    assert C.distribute(va, vb, (r, s)) == _direct_distribute(a, b, (r, s))
                    assert C.is_return(C.aggregate(va, vb), (r, s))
                else:
                    assert not C.is_return(C.aggregate(va, vb), (r, s))


def test_composite_laws():
    C = composite(catalog.single_question_survey(2), catalog.potluck(["x"]))
    rep = check_all(C, LawConfig("exhaustive", enumeration_bound=2), **DEFINING)
    assert rep.passed
    assert C.neutral() == (1, FrozenMap({0: frozenset()}))


def test_composite_equality_is_extensional():
    C = composite(catalog.single_question_survey(2), catalog.potluck(["x"]))
    f = FrozenMap({0: frozenset(), 1: frozenset({"x"})})
    g = FrozenMap({1: frozenset({"x"}), 0: frozenset()})
    assert C.eq_contribution((2, f), (2, g))
    assert not C.eq_contribution((2, f), (2, FrozenMap({0: frozenset(), 1: frozenset()})))


def test_composite_over_unlistable_returns():
    # returns on a positive stake form an infinite set, so strategies there are opaque
    C = composite(catalog.stakeholders(), catalog.potluck(["x"]))
    e = C.neutral()
    assert e == (0, FrozenMap({F(0): frozenset()}))
    with pytest.raises(NonEnumerableStrategy):
        C.enumerate_contributions(1)
    a = (F(2), ConstantStrategy(frozenset({"x"})))
    b = (F(1), ConstantStrategy(frozenset()))
    ab = C.aggregate(a, b)
    assert isinstance(ab[1], ComposedStrategy)
    assert apply_strategy(ab[1], F(3)) == frozenset({"x"})
    assert C.distribute(a, b, (F(6), frozenset({"x"}))) == ((4, frozenset({"x"})), (2, frozenset()))
    assert C.distribute(a, e, (F(6), frozenset({"x"})))[0] == (F(6), frozenset({"x"}))


# ---------------------------------------------------------------- commutativity of parallel and product

SMALL_TABLES = ["potluck1", "potluck1_first", "left_zero", "z2_donation"]


def _comm(C):
    return check_commutativity(C, LawConfig("exhaustive", enumeration_bound=0)).verdicts()


@pytest.mark.parametrize("left, right", list(itertools.combinations_with_replacement(SMALL_TABLES, 2)))
def test_parallel_product_commutativity_is_conjunction(left, right):
    A = TableCollective(catalog.table_fixture(left))
    B = TableCollective(catalog.table_fixture(right))
    va, vb = _comm(A), _comm(B)
    for combo in (parallel(A, B), product(A, B)):
        got = _comm(combo)
        for law in ("comm-agg", "comm-dis"):
            both = va[law] == "pass" and vb[law] == "pass"
            assert (got[law] == "pass") == both, (combo.name, law)


@pytest.mark.parametrize("left, right", [("potluck1", "z2_donation"), ("left_zero", "potluck1_first")])
def test_table_combinators_preserve_laws(left, right):
    A = TableCollective(catalog.table_fixture(left))
    B = TableCollective(catalog.table_fixture(right))
    cfg = LawConfig("exhaustive", enumeration_bound=0)
    for combo in (parallel(A, B), product(A, B), composite(A, B)):
        assert check_all(combo, cfg, **DEFINING).passed, combo.name


# ---------------------------------------------------------------- free


def test_free_split():
    Fr = free("two_atom")
    assert Fr.distribute(Seq(["b"]), Seq(["c", "c"]), ("f", "s1", "s2")) == (("f",), ("s1", "s2"))
    assert Fr.distribute(Seq(["b", "c"]), Seq([]), ("f", "s2")) == (("f", "s2"), ())
    with pytest.raises(InvalidReturn):
        distribute(Fr, Seq(["b"]), Seq(["c"]), ("f",))
    with pytest.raises(InvalidReturn):
        distribute(Fr, Seq(["b"]), Seq(["c"]), ("f", "f"))


def test_free_is_not_comm_dis():
    Fr = free("two_atom")
    rep = check_commutativity(Fr, LawConfig("exhaustive", enumeration_bound=2))
    assert rep["comm-dis"].verdict == "fail"
    assert "comm-dis" in exhaustive_failures(Fr, 2)


def test_free_laws_length_three():
    rep = check_all(free("two_atom"), LawConfig("exhaustive", enumeration_bound=3), **DEFINING)
    assert rep.passed
    with pytest.raises(InvalidParameter):
        free("two_atom", atom_bound=3)


def test_multi_question_survey():
    M = multi_question_survey()
    assert M.name == "multi_question_survey"
    assert M.aggregate(Seq([7, 4]), Seq([2])) == Seq([7, 4, 2])
    assert M.distribute(Seq([7, 4]), Seq([2]), (5, 2, 1)) == ((5, 2), (1,))
    assert M.distribute(Seq([7]), Seq([4]), (5, 2)) == ((5,), (2,))
    assert M.is_return(Seq([7, 4]), (6, 3))
    assert not M.is_return(Seq([7, 4]), (7, 0))
    assert not M.is_return(Seq([7, 4]), (1,))


def test_interface_registry():
    assert set(combinators.INTERFACES) >= {"two_atom", "survey"}
    with pytest.raises(Exception) as info:
        combinators.interface("nope")
    assert getattr(info.value, "kind", None) == "unknown-collective"
