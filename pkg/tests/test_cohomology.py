import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from eybound.algebra.field import GF, QQ
from eybound.algebra.groebner import ideal_power
from eybound.algebra.poly import GradedIdeal, Polynomial
from eybound.algebra.resolution import GradedModulePresentation, free_resolution
from eybound.cohomology import (
    CohomologyEngine,
    ideal_module_resolution,
    ideal_sheaf_cohomology,
    line_bundle_cohomology,
    scan_window,
    sheaf_cohomology,
    vanishing_scan,
)

F = GF(32003)


def ideal(texts, nvars, fld=F):
    return GradedIdeal(nvars, [Polynomial.parse(t, nvars, fld) for t in texts], fld)


def twisted_cubic(fld=F):
    return ideal(["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"], 4, fld)


def elliptic_quartic(fld=F):
    return ideal(["x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2"], 4, fld)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(-12, 12))
def test_line_bundle_serre_duality(n, p):
    for i in range(n + 1):
        assert line_bundle_cohomology(n, p, i) == line_bundle_cohomology(n, -p - n - 1, n - i)


def test_line_bundle_values():
    assert line_bundle_cohomology(2, 2, 0) == 6
    assert line_bundle_cohomology(2, -3, 2) == 1
    assert line_bundle_cohomology(2, -5, 2) == 6
    assert line_bundle_cohomology(3, -2, 1) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("shift", [0, 1, 3])
def test_engine_on_twisted_free_modules(n, shift):
    res = free_resolution(GradedModulePresentation.free(n + 1, F, degrees=(shift,)))
    eng = CohomologyEngine(res)
    for p in range(-8, 9):
        for i in range(n + 1):
            assert eng.sheaf(i, p) == line_bundle_cohomology(n, p - shift, i)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_hypersurface_powers_are_line_bundles(k):
    # I^k of a cubic surface in P^3 is O(-3k)
    I = ideal(["x0^3 + x1^3 + x2^3 + x3^3"], 4)
    res = ideal_module_resolution(ideal_power(I, k))
    eng = CohomologyEngine(res)
    for p in range(3 * k - 6, 3 * k + 3):
        for i in range(4):
            assert eng.sheaf(i, p) == line_bundle_cohomology(3, p - 3 * k, i)


def _rr_h1_curve(deg, g, p):
    """h^1(O_C(p)) on a smooth curve whose hyperplane class has degree deg (g <= 1)."""
    if g == 0:
        return max(0, -deg * p - 1)
    # elliptic: omega is trivial, so h^1(O(p)) = h^0(O(-p))
    return 0 if p > 0 else (1 if p == 0 else -deg * p)


@pytest.mark.parametrize("make, deg, g", [(twisted_cubic, 3, 0), (elliptic_quartic, 4, 1)])
def test_curve_ideal_cohomology_matches_riemann_roch(make, deg, g):
    res = ideal_module_resolution(make())
    eng = CohomologyEngine(res)
    for p in range(-4, 6):
        assert eng.sheaf(1, p) == 0  # both curves are projectively normal
        assert eng.sheaf(2, p) == _rr_h1_curve(deg, g, p)
        assert eng.sheaf(3, p) == line_bundle_cohomology(3, p, 3)
        h0_curve = line_bundle_cohomology(3, p, 0) - eng.sheaf(0, p)
        assert h0_curve - _rr_h1_curve(deg, g, p) == deg * p + 1 - g
        assert eng.euler_characteristic(p) == eng.hilbert_polynomial(p)


def test_structure_sheaf_of_curve_via_quotient():
    I = elliptic_quartic()
    M = GradedModulePresentation.quotient_ring(I)
    for p in (-1, 0, 1, 2):
        assert sheaf_cohomology(M, 0, p) == (4 * p if p > 0 else (1 if p == 0 else 0))
        assert sheaf_cohomology(M, 1, p) == _rr_h1_curve(4, 1, p)


def test_rationals_match_prime_field():
    for p in (-2, 0, 1):
        for i in range(4):
            assert (ideal_sheaf_cohomology(twisted_cubic(QQ), i, p)
                    == ideal_sheaf_cohomology(twisted_cubic(F), i, p))


def test_engine_rejects_bad_index():
    eng = CohomologyEngine(ideal_module_resolution(twisted_cubic()))
    with pytest.raises(ValueError):
        eng.sheaf(4, 0)


def test_scan_window():
    assert scan_window(-1, 2, 3, 4) == (-1, 7)


def test_quadric_scan_is_tight():
    I = ideal(["x0*x3 - x1*x2"], 4)
    table, verdict = vanishing_scan(I, 2, -1, 3, 4, label="quadric")
    assert verdict.status == "pass"
    assert not table.euler_mismatches()
    # just below the threshold H^3 is nonzero, for every k
    for k in (1, 2, 3):
        assert table.get(3, k, 2 * k - 4) == 1
        assert (3, k, 2 * k - 4, 1) in verdict.subthreshold_nonvanishing


def test_scan_fails_when_threshold_is_too_low():
    table, verdict = vanishing_scan(twisted_cubic(), 2, 0, 2, 3)
    assert verdict.status == "fail"
    # N_C = O(5)+O(5) on P^1, so h^0(O/I^2 (2)) = 2*2 + 7 = 11 > 10 = h^0(O(2))
    assert verdict.violations == [(1, 2, 2, 1)]


def test_scan_outputs():
    table, verdict = vanishing_scan(twisted_cubic(), 2, 1, 2, 2, label="rnc:3")
    lines = table.to_csv().splitlines()
    assert lines[0] == "k,p,i,dim"
    assert len(lines) - 1 == len(table.entries) == 2 * 5 * 4
    data = json.loads(table.to_json())
    assert data["windows"] == {"1": [-1, 3], "2": [1, 5]}
    assert verdict.to_dict()["status"] == "pass"


def test_scan_marks_incomplete_on_time_cap():
    I = ideal(["x0*x3 - x1*x2", "x0*x4 - x1*x5", "x2*x4 - x3*x5"], 6)
    _, verdict = vanishing_scan(I, 2, -1, 2, 1, time_cap=1e-9)
    assert verdict.status == "incomplete"
    assert [k for k, _ in verdict.incomplete] == [1, 2]


def test_scan_argument_checks():
    with pytest.raises(ValueError):
        vanishing_scan(twisted_cubic(), 2, 1, 0, 2)
    with pytest.raises(ValueError):
        vanishing_scan(twisted_cubic(), 2, 1, 1, -1)
