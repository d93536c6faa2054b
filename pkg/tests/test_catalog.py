from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collectives import catalog
from collectives.catalog import GO_TEAM, FiniteCollectiveTable, TableCollective
from collectives.core import aggregate_all, distribute, distribute_all
from collectives.errors import InvalidTable
from collectives.laws import LawConfig, check_all
from collectives.values import FrozenMap, Multiset, Seq

from oracles import exhaustive_failures, failing_laws
from strategies import random_tables


def ms(*names):
    return Multiset({n: names.count(n) for n in set(names)})


# ---------------------------------------------------------------- small collectives


def test_donation_box():
    D = catalog.donation_box()
    assert D.distribute(3, 4, GO_TEAM) == (GO_TEAM, GO_TEAM)
    S = catalog.donation_box("strings_concat", ["a", "b", "c"])
    assert S.aggregate("ab", "c") == "abc"


def test_distribution_list():
    L = catalog.distribution_list(["m"])
    assert L.distribute("m", "m", "m") == ("m", "m")
    L3 = catalog.distribution_list(["s", "t"])
    assert distribute_all(L3, [L3.neutral()] * 3, "s") == ["s", "s", "s"]


def test_stakeholders():
    S = catalog.stakeholders()
    assert S.neutral() == 0
    assert aggregate_all(S, [2, 3, 5]) == 10
    assert distribute_all(S, [2, 3, 5], 20) == [4, 6, 10]
    assert S.distribute(F(7, 2), 0, 5) == (5, 0)
    x, y = S.distribute(1, 2, 1)
    assert (x, y) == (F(1, 3), F(2, 3)) and isinstance(x, F)


def test_reservation():
    R = catalog.reservation()
    assert R.distribute(2, 3, 4) == (2, 2)
    assert R.distribute(2, 3, 1) == (1, 0)


def test_fcfs():
    S = catalog.fcfs_scheduler(["a", "b", "c"])
    k, l = Seq(["a", "b"]), Seq(["c"])
    assert S.neutral() == Seq([])
    assert S.distribute(k, l, Seq(["a"])) == (Seq(["a"]), Seq([]))
    assert S.distribute(k, l, Seq(["a", "b", "c"])) == (k, l)
    assert S.distribute(Seq([]), l, Seq(["c"])) == (Seq([]), Seq(["c"]))


def test_balanced():
    B = catalog.balanced_scheduler(["a", "b"])
    k, l = Seq([ms("a")]), Seq([ms("b"), ms("b")])
    assert B.aggregate(k, l) == Seq([ms("a", "b"), ms("b")])
    assert B.distribute(k, l, Seq([ms("a", "b")])) == (Seq([ms("a")]), Seq([ms("b")]))


def test_potluck_variants():
    pie, salad = frozenset({"pie"}), frozenset({"pie", "salad"})
    U = ["pie", "salad", "soup"]
    assert catalog.potluck(U).distribute(pie, salad, pie) == (pie, pie)
    assert catalog.potluck(U, "first_served").distribute(pie, salad, pie) == (pie, frozenset())
    assert catalog.potluck(U, "last_served").distribute(pie, salad, pie) == (frozenset(), pie)
    for v in catalog.POTLUCK_VARIANTS:
        assert catalog.potluck(U, v).distribute(salad, frozenset(), pie) == (pie, frozenset())
    with pytest.raises(ValueError):
        catalog.potluck(U, "nobody")


def test_survey():
    S = catalog.single_question_survey()
    assert S.neutral() == 1
    assert S.distribute(7, 4, 19) == (5, 2)
    assert S.distribute(5, 1, 3) == (3, 0)


def test_prediction_market():
    P = catalog.prediction_market(["e1", "e2"])
    a = (1, FrozenMap({"e1": F(1, 3), "e2": F(2, 3)}))
    b = (1, FrozenMap({"e1": F(1, 2), "e2": F(1, 2)}))
    assert P.is_contribution(a) and P.is_contribution(b)
    w, pooled = P.aggregate(a, b)
    assert w == 2 and pooled["e1"] == F(5, 12) and pooled["e2"] == F(7, 12)
    (ea, ra), (eb, rb) = P.distribute(a, b, ("e2", 7))
    assert (ea, ra, eb, rb) == ("e2", 4, "e2", 3)
    assert P.distribute(a, P.neutral(), ("e1", 5)) == (("e1", 5), ("e1", 0))


def test_probabilistic_events():
    E = catalog.probabilistic_events()
    coin = (2, (F(1, 3), F(2, 3)))
    die = (6, (F(1, 6),) * 6)
    assert E.aggregate(coin, die) == (12, (F(1, 18),) * 6 + (F(1, 9),) * 6)
    assert E.distribute(coin, die, 7) == (1, 1)
    assert E.aggregate(coin, E.neutral()) == coin


def test_simplices():
    S = catalog.simplices()
    assert S.distribute(1, 2, (4, (1, 2, 2, 3))) == ((1, (1,)), (3, (1, 1, 2)))
    assert S.distribute(2, 0, (2, (1, 2))) == ((2, (1, 2)), (0, ()))
    rep = check_all(S, LawConfig("exhaustive", enumeration_bound=3), commutativity=False)
    assert rep.passed


def test_finset_coproduct():
    C = catalog.finset_coproduct()
    assert C.distribute(1, 1, (2, (0, 1))) == ((2, (0,)), (2, (1,)))
    assert C.distribute(2, 0, (3, (2, 1))) == ((3, (2, 1)), (3, ()))
    assert check_all(C, LawConfig("exhaustive", enumeration_bound=2), commutativity=False).passed


def test_finset_cartesian_closed_currying():
    C = catalog.finset_cartesian_closed()
    assert C.distribute(2, 1, (2, (0, 1))) == ((2, (0, 1)), (4, (1,)))
    # unit on the right: the left share is the function itself
    assert C.distribute(3, 1, (2, (1, 0, 1)))[0] == (2, (1, 0, 1))


def test_finset_cartesian_closed_bracketings_differ_by_transpose():
    # c's share of f: 2*2*1 -> 2 is one point of 16 either way; the outer split
    # reads the row-major digits of f, the inner one the column codes of its matrix
    C = catalog.finset_cartesian_closed()
    r = (2, (0, 0, 1, 0))
    _, x_c = C.distribute(4, 1, r)
    _, y_bc = C.distribute(2, 2, r)
    assert y_bc == (4, (1, 0))
    assert x_c == (16, (2,))
    assert C.distribute(2, 1, y_bc)[1] == (16, (4,))


def test_presheaf_fixtures():
    for name in catalog.PRESHEAF_FIXTURES:
        P = catalog.presheaf_fixture(name)
        assert exhaustive_failures(P, 0) == set()


def test_presheaf_rejects_big_empty_stalk():
    opens = [frozenset(), frozenset({"p"})]
    with pytest.raises(ValueError):
        catalog.presheaf_collective(opens, {opens[0]: ["x", "y"], opens[1]: ["s"]}, {})


def test_presheaf_rejects_non_union_closed():
    opens = [frozenset(), frozenset({"p"}), frozenset({"q"})]
    secs = {U: ["s"] for U in opens}
    with pytest.raises(ValueError):
        catalog.presheaf_collective(opens, secs, {})


def test_trajectories_constant_fields():
    T = catalog.trajectories()
    t, u = catalog.VectorField.constant(1, 0), catalog.VectorField.constant(0, 1)
    assert T.distribute(t, u, (0, 0)) == ((0, 0), (1, 0))
    v = T.enumerate_contributions(2)[2]
    x0 = (F(1, 2), 3)
    assert T.distribute(v, catalog.ZERO_FIELD, x0) == (x0, (F(1, 2) - 3, 3 + F(1, 2)))


def test_trajectories_rotation_composition():
    X1, X2 = catalog.Poly.var(1), catalog.Poly.var(2)
    rot = catalog.VectorField(-X2, X1)
    w = rot.then(rot)
    # rot(x) + rot(x + rot(x)) = (-x2, x1) + (-(x2 + x1), x1 - x2)
    assert w(( 1, 0)) == (-1, 2)
    two = catalog.Poly.const(2)
    assert w == catalog.VectorField(-(two * X2) - X1, two * X1 - X2)
    assert str(w.v1) == "-2*x2 - x1"


# ---------------------------------------------------------------- conservation and unit cancellation


@settings(max_examples=60)
@given(st.lists(st.fractions(min_value=0, max_value=20, max_denominator=9), min_size=1, max_size=6),
       st.fractions(min_value=0, max_value=100, max_denominator=9))
def test_stakeholder_shares_conserve(amounts, t):
    S = catalog.stakeholders()
    t = F(0) if sum(amounts) == 0 else max(t, F(1, 9))
    shares = distribute_all(S, amounts, t)
    assert sum(shares) == t
    assert all(s >= 0 for s in shares)


@settings(max_examples=60)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=6), st.integers(0, 40))
def test_reservation_conserves(requests, d):
    R = catalog.reservation()
    d = min(d, sum(requests))
    shares = distribute_all(R, requests, d)
    assert sum(shares) == d
    assert all(0 <= s <= q for s, q in zip(shares, requests))


@settings(max_examples=60)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=5), st.data())
def test_survey_answers_recombine(sizes, data):
    S = catalog.single_question_survey()
    n = aggregate_all(S, sizes)
    i = data.draw(st.integers(0, n - 1))
    answers = distribute_all(S, sizes, i)
    # mixed-radix digits, least significant member first
    total, place = 0, 1
    for a, m in zip(answers, sizes):
        assert 0 <= a < m
        total += a * place
        place *= m
    assert total == i


# ---------------------------------------------------------------- tables


def test_tabulate_potluck_matches_fixture():
    P = catalog.potluck(["x"])
    t = catalog.tabulate(P, P.enumerate_contributions(0))
    assert t == catalog.table_fixture("potluck1")
    T = TableCollective(t)
    for a in P.enumerate_contributions(0):
        for b in P.enumerate_contributions(0):
            assert T.aggregate(a, b) == P.aggregate(a, b)
            for r in P.all_returns(P.aggregate(a, b)):
                assert T.distribute(a, b, r) == P.distribute(a, b, r)


def test_singleton_table_is_distribution_list():
    T = catalog.table_collective(catalog.table_fixture("singleton"))
    assert T.neutral() == T.enumerate_contributions(0)[0]
    e = T.neutral()
    (s,) = T.all_returns(e)
    assert T.distribute(e, e, s) == (s, s)


@pytest.mark.parametrize("name", sorted(catalog.TABLE_FIXTURES))
def test_valid_fixtures_validate(name):
    t = catalog.table_fixture(name)
    t.validate()
    assert t.violations() == []


def test_corrupted_table_names_eq3():
    t = catalog.table_fixture("last_wins_eq3")
    with pytest.raises(InvalidTable) as info:
        catalog.table_collective(t)
    assert info.value.law == "eq3"
    assert {law for law, _ in t.violations()} == {"eq3"}


def test_table_shape_errors():
    with pytest.raises(InvalidTable) as info:
        FiniteCollectiveTable(["e", "x"], 0, [["*"]], [[0, 1], [1, 1]], {}).validate()
    assert info.value.law == "shape"


@settings(max_examples=300, deadline=None)
@given(random_tables())
def test_table_accepted_iff_laws_hold(t):
    try:
        t._check_shape(monoid_only=False)
    except InvalidTable:
        return
    T = TableCollective(t, validate=False)
    expected = failing_laws(T, T.enumerate_contributions(0), lambda c: T.enumerate_returns(c, 0))
    expected -= {"comm-agg", "comm-dis"}
    try:
        catalog.table_collective(t)
        accepted = True
    except InvalidTable as exc:
        accepted = False
        assert exc.law in expected
    assert accepted == (not expected)
