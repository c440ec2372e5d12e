from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eybound.curves import (
    CurveVanishingQuery,
    admissible_epsilon,
    conditions_check,
    embedding_dimension,
    epsilon_cap,
    exception_region,
    prop41_check,
    prop42_threshold,
    prop4a_class,
)
from eybound.singularity import DivisorClass


def test_prop4a_classes():
    assert prop4a_class(0, 5, "a") == DivisorClass(4, -2)
    assert prop4a_class(1, 4, "b") == DivisorClass(4, -2)
    assert prop4a_class(2, 6, "c") == DivisorClass(9, -6)
    with pytest.raises(ValueError):
        prop4a_class(0, 5, "b")
    with pytest.raises(ValueError):
        prop4a_class(2, 4, "c")
    with pytest.raises(ValueError):
        prop4a_class(2, 6, "z")


@pytest.mark.parametrize("g, d", [(0, 4), (0, 5), (0, 9), (1, 4), (1, 5), (1, 8)])
def test_prop41(g, d):
    n = embedding_dimension(g, d)
    variant = "a" if g == 0 else "b"
    assert prop4a_class(g, d, variant) == DivisorClass(n + 1, -(n - 1))
    assert prop41_check(g, d) == 1


def test_prop41_domain():
    with pytest.raises(ValueError):
        prop41_check(2, 6)
    with pytest.raises(ValueError):
        prop41_check(0, 3)


def test_conditions_example():
    rep = conditions_check(CurveVanishingQuery(2, 6, 3, 5, Fraction(1, 2)))
    assert rep.first.lhs == 8 and rep.first.rhs == 8 and not rep.first.strict
    assert rep.second.lhs == 4 and rep.second.rhs == 1 and rep.second.strict
    assert rep.status == "sufficient"
    assert rep.to_dict()["i"]["holds"]


def test_both_equalities_is_insufficient():
    # g = 5, d = 6, k = 1: (ii) reads 4e = 4 and (i) reads p + 6e = 8e, both tight at e = 1, p = 2
    rep = conditions_check(CurveVanishingQuery(5, 6, 1, 2, Fraction(1)))
    assert rep.first.holds and not rep.first.strict
    assert rep.second.holds and not rep.second.strict
    assert rep.status == "insufficient"


def test_query_validation():
    with pytest.raises(ValueError):
        CurveVanishingQuery(2, 4, 3, 5, Fraction(1, 2))
    with pytest.raises(ValueError):
        CurveVanishingQuery(2, 6, 3, 5, Fraction(0))
    with pytest.raises(ValueError):
        CurveVanishingQuery(2, 6, 3, 5, epsilon_cap(2, 6) + 1)
    CurveVanishingQuery(2, 6, 3, 5, epsilon_cap(2, 6))


def oracle_admissible(g, d, k, p):
    """Exact search: both conditions are affine in eps', so the sufficient set is
    an interval with endpoints among the breakpoints; test those and midpoints."""
    cap = epsilon_cap(g, d)
    if cap <= 0:
        return False
    pts = {cap, Fraction(p - 2 * k + 2, d - 4),
           (Fraction(2 * g - 2, d - 4) - (k - 1)) / (d - 2)}
    pts = sorted(x for x in pts if 0 < x <= cap)
    cands = set(pts)
    edges = [Fraction(0)] + pts + [cap]
    cands.update((a + b) / 2 for a, b in zip(edges, edges[1:]) if a < b)
    return any(conditions_check(CurveVanishingQuery(g, d, k, p, e)).sufficient
               for e in cands if 0 < e <= cap)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 25), st.integers(5, 14), st.integers(1, 30), st.integers(-5, 60))
def test_admissible_epsilon_matches_oracle(g, d, k, p):
    eps = admissible_epsilon(g, d, k, p)
    assert (eps is not None) == oracle_admissible(g, d, k, p)
    if eps is not None:
        assert conditions_check(CurveVanishingQuery(g, d, k, p, eps)).sufficient


def test_threshold_examples():
    assert prop42_threshold(1) == 5
    assert prop42_threshold(2) == 5
    assert prop42_threshold(10) == 10
    with pytest.raises(ValueError):
        prop42_threshold(-1)


def test_region_examples():
    assert exception_region(2, 5).empty
    assert exception_region(1, 5).empty
    reg = exception_region(10, 5)
    rows = reg.rows()
    assert rows[0][0] == 3 and max(k for k, _, _ in rows) == 16
    assert all(lo == 2 * k - 1 for k, lo, _ in rows)
    widths = [hi - lo for _, lo, hi in rows]
    assert widths == sorted(widths, reverse=True)
    assert reg.to_csv().splitlines()[0] == "k,p_min,p_max"


def test_region_cap_zero_case():
    reg = exception_region(0, 5)
    assert reg.empty and reg.note
    with pytest.raises(ValueError):
        exception_region(3, 4)


@pytest.mark.parametrize("g, d", [(6, 5), (10, 5), (9, 6), (14, 7), (20, 8)])
def test_region_matches_bruteforce_box(g, d):
    expected = {(k, p) for k in range(3, 45) for p in range(2 * k - 1, 2 * k + 60)
                if not oracle_admissible(g, d, k, p)}
    assert set(exception_region(g, d).pairs) == expected
