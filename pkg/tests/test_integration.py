from fractions import Fraction

import pytest
from hypothesis import given, settings

from integration_losses import (
    Matching,
    MatchingScheme,
    Side,
    agent_gain,
    average_gains,
    gains_report,
    man,
    percentile_rank,
    raw_rank,
    stable_scheme,
    total_gains,
    trivial_lower_bound,
    woman,
    worst_case_value,
)
from integration_losses.generators import proposition1_instance, replicate, worst_case_instance
from conftest import count_rank, instances


@pytest.fixture
def prop1():
    p = proposition1_instance()
    return p, stable_scheme(p)


def zero_change_scheme(instance):
    """Society matching = union of the community matchings."""
    scheme = stable_scheme(instance)
    union = scheme.per_community[1]
    for c in instance.communities[1:]:
        union = union.union(scheme.per_community[c])
    return MatchingScheme(scheme.per_community, union)


def test_raw_rank_examples(prop1):
    p, _ = prop1
    assert raw_rank(p, man(2, 2), woman(2, 2)) == 4
    for a, ranking in p.prefs.items():
        assert raw_rank(p, a, ranking[0]) == 1
    r = replicate(p)
    # replica ids: m_2^1 -> M1.3, w_2^1 -> W1.3
    assert raw_rank(r, man(1, 3), woman(1, 3)) == 5
    assert percentile_rank(r, man(1, 3), woman(1, 3)) == Fraction(5, 8)


def test_raw_rank_same_side(prop1):
    with pytest.raises(ValueError):
        raw_rank(prop1[0], man(1, 1), man(1, 2))


@given(instances())
def test_raw_rank_matches_counting_definition(instance):
    for a, ranking in instance.prefs.items():
        for x in ranking:
            assert raw_rank(instance, a, x) == count_rank(instance, a, x)
            assert percentile_rank(instance, a, x) == Fraction(count_rank(instance, a, x), instance.kappa * instance.n)


def test_percentile_of_last_is_one(prop1):
    p, _ = prop1
    assert percentile_rank(p, man(2, 2), woman(2, 2)) == 1


def test_agent_gain_prop1(prop1):
    p, s = prop1
    assert agent_gain(p, s, man(1, 1)) == Fraction(1, 4)
    assert agent_gain(p, s, man(2, 2)) == Fraction(-3, 4)


def test_agent_gain_unmatched(prop1):
    p, s = prop1
    dropped = s.society.pairs[0]
    broken = MatchingScheme(s.per_community, Matching(s.society.pairs[1:]))
    with pytest.raises(ValueError, match="unmatched"):
        agent_gain(p, broken, dropped[0])


def test_totals_prop1(prop1):
    p, s = prop1
    assert total_gains(p, s) == Fraction(-3, 2)
    assert average_gains(p, s) == Fraction(-3, 16)
    report = gains_report(p, s)
    assert report.total_raw == -6
    assert (report.gainers, report.losers, report.unchanged) == (4, 4, 0)
    gainers = {a for a, (g, _) in report.per_agent.items() if g > 0}
    assert gainers == {man(1, 1), man(2, 1), woman(1, 1), woman(2, 1)}
    assert sum(report.raw_gains(Side.MAN).values()) == -3
    assert sum(report.raw_gains(Side.WOMAN).values()) == -3


def test_worst_2_4_totals():
    w = worst_case_instance(2, 4)
    s = stable_scheme(w)
    assert total_gains(w, s) == Fraction(-9, 2)
    assert average_gains(w, s) == Fraction(-9, 32)


def test_zero_change():
    w = worst_case_instance(2, 4)
    s = zero_change_scheme(w)
    assert total_gains(w, s) == 0
    assert average_gains(w, s) == 0
    report = gains_report(w, s)
    assert report.unchanged == 16 and report.gainers == report.losers == 0


def test_bounds():
    assert trivial_lower_bound(2, 2) == Fraction(-1, 4)
    assert trivial_lower_bound(1, 1) == Fraction(1, 2)
    assert worst_case_value(2, 2) == Fraction(-3, 16)
    assert worst_case_value(2, 4) == Fraction(-9, 32)
    # limits: decreasing towards -1/2 and -3/8 as kappa n grows
    sizes = [2 ** k for k in range(1, 20)]
    lows = [trivial_lower_bound(1, s) for s in sizes]
    worsts = [worst_case_value(1, s) for s in sizes]
    assert lows == sorted(lows, reverse=True) and all(x > Fraction(-1, 2) for x in lows)
    assert worsts == sorted(worsts, reverse=True) and all(x > Fraction(-3, 8) for x in worsts)
    assert abs(lows[-1] + Fraction(1, 2)) < Fraction(1, 10 ** 5)
    assert abs(worsts[-1] + Fraction(3, 8)) < Fraction(1, 10 ** 5)


def test_gains_require_society(prop1):
    p, s = prop1
    with pytest.raises(ValueError):
        total_gains(p.community(1), s)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_report_invariants(instance):
    for side in Side:
        scheme = stable_scheme(instance, side)
        r = gains_report(instance, scheme)
        size = instance.kappa * instance.n
        assert r.Gamma * size == r.total_raw
        assert r.Gamma_bar == r.Gamma / (2 * size)
        assert r.gainers + r.losers + r.unchanged == 2 * size
        assert -1 < r.Gamma_bar < 1
        for raw, pct in r.per_agent.values():
            assert pct == Fraction(raw, size)
            assert abs(pct) <= Fraction(size - 1, size)
        assert r.gainers >= r.losers
        if size >= 2:  # with a single agent per side nobody can lose a rank
            assert r.Gamma_bar >= trivial_lower_bound(instance.kappa, instance.n)
        assert r.Gamma == total_gains(instance, scheme)
