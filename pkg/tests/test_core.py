from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from collectives import catalog
from collectives.core import (
    aggregate,
    aggregate_all,
    distribute,
    distribute_all,
    distribute_all_right,
    interface_of,
    is_valid_return,
    neutral,
)
from collectives.errors import CapabilityMissing, InvalidContribution, InvalidReturn
from collectives.values import Seq


def test_neutral_examples():
    assert neutral(catalog.stakeholders()) == 0
    assert neutral(catalog.fcfs_scheduler(["a"])) == Seq()
    assert neutral(catalog.single_question_survey()) == 1


def test_aggregate_examples():
    assert aggregate(catalog.stakeholders(), 2, 3) == 5
    P = catalog.probabilistic_events()
    coin = (2, (Fraction(1, 3), Fraction(2, 3)))
    die = (6, (Fraction(1, 6),) * 6)
    assert aggregate(P, coin, die) == (12, (Fraction(1, 18),) * 6 + (Fraction(1, 9),) * 6)


def test_aggregate_rejects_non_contributions():
    with pytest.raises(InvalidContribution):
        aggregate(catalog.stakeholders(), -1, 2)
    with pytest.raises(InvalidContribution):
        aggregate(catalog.single_question_survey(), Fraction(1, 2), 2)


def test_distribute_examples():
    assert distribute(catalog.stakeholders(), 2, 3, 10) == (4, 6)
    assert distribute(catalog.single_question_survey(), 7, 4, 19) == (5, 2)


def test_distribute_rejects_bad_return():
    with pytest.raises(InvalidReturn):
        distribute(catalog.single_question_survey(), 7, 4, 28)
    with pytest.raises(InvalidReturn):
        distribute(catalog.stakeholders(), 0, 0, 1)


def test_aggregate_all():
    S = catalog.stakeholders()
    assert aggregate_all(S, [2, 3, 5]) == 10
    assert aggregate_all(S, []) == 0
    F = catalog.fcfs_scheduler(["a", "b", "c"])
    assert aggregate_all(F, [Seq(["a"]), Seq(["b", "c"])]) == Seq(["a", "b", "c"])


def test_distribute_all():
    S = catalog.stakeholders()
    assert distribute_all(S, [2, 3, 5], 20) == [4, 6, 10]
    assert distribute_all(S, [7], 3) == [3]
    assert distribute_all(catalog.single_question_survey(), [7, 4], 19) == [5, 2]


def test_distribute_all_empty_needs_neutral_return():
    S = catalog.stakeholders()
    assert distribute_all(S, [], 0) == []
    with pytest.raises(InvalidReturn):
        distribute_all(S, [], 5)


def test_is_valid_return_examples():
    R = catalog.reservation()
    assert is_valid_return(R, 3, 2)
    assert not is_valid_return(R, 3, 5)
    P = catalog.potluck(["pie", "salad"])
    assert not is_valid_return(P, frozenset({"pie"}), frozenset({"pie", "salad"}))
    S = catalog.stakeholders()
    assert is_valid_return(S, 0, 0)
    assert not is_valid_return(S, 0, 1)
    with pytest.raises(InvalidContribution):
        is_valid_return(S, -2, 0)


@given(st.lists(st.integers(1, 6), min_size=0, max_size=5), st.data())
def test_survey_bracketings_agree(ns, data):
    C = catalog.single_question_survey()
    total = aggregate_all(C, ns)
    r = data.draw(st.integers(0, total - 1))
    left = distribute_all(C, ns, r)
    assert left == distribute_all_right(C, ns, r)
    assert len(left) == len(ns)


@given(st.lists(st.fractions(min_value=0, max_value=10, max_denominator=6), max_size=5),
       st.fractions(min_value=Fraction(1, 9), max_value=50, max_denominator=9))
def test_stakeholders_n_ary_shares_are_proportional(amounts, t):
    S = catalog.stakeholders()
    total = sum(amounts, Fraction(0))
    if total == 0:
        t = Fraction(0)
    shares = distribute_all(S, amounts, t)
    assert shares == distribute_all_right(S, amounts, t)
    assert sum(shares, Fraction(0)) == (t if amounts else 0)
    for a, s in zip(amounts, shares):
        assert s == (a * t / total if total else 0)


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_two_member_distribute_all_is_distribute(m, n, data):
    C = catalog.single_question_survey()
    i = data.draw(st.integers(0, m * n - 1))
    assert distribute_all(C, [m, n], i) == list(distribute(C, m, n, i))


def test_interface_of_bounds_atoms():
    p = interface_of(catalog.single_question_survey(), atom_bound=2)
    assert p.atoms(5) == [0, 1, 2]
    assert p.returns_of(3, 5) == [0, 1, 2]
    assert p.is_atom(4) and not p.is_atom(-1)


def test_missing_capabilities_raise():
    B = catalog.stakeholders()
    assert B.all_returns(3) is None
    from collectives.core import Collective

    class Bare(Collective):
        pass

    with pytest.raises(CapabilityMissing):
        Bare().enumerate_contributions(1)
    with pytest.raises(CapabilityMissing):
        Bare().gen_return(0, None, 0)
