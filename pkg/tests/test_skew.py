import json
from itertools import combinations
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eybound.algebra.field import GF
from eybound.skew import (
    SkewFamily,
    SkewNormalData,
    TruncationError,
    build_omega,
    divided_power,
    enumerate_normal_data,
    extract_normal_data,
    make_normal_data,
    normalize_vector,
    omega_counts,
    omega_tuple,
    random_family,
    reparametrize,
    sinv,
    smoothing,
    smul,
    two_form,
    wedge,
    wedge_power_limit,
)

F3 = GF(3)
FP = GF(32003)


def standard(dim, field, steps):
    """x_{2s} ^ x_{2s+1} at order t^s for each s in steps."""
    terms = {}
    for s, order in enumerate(steps):
        cs = [0] * (order + 1)
        cs[order] = 1
        terms[(2 * s, 2 * s + 1)] = cs
    return SkewFamily.from_terms(dim, terms, field)


def top(dim):
    return ((tuple(range(dim)), 1),)


# ------------------------------------------------------ exterior algebra


def random_skew(n, p, rng):
    a = rng.integers(0, p, size=(n, n))
    a = np.triu(a, 1)
    return (a - a.T) % p


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 5, 6]), st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_divided_power_times_factorial_is_wedge_power(n, r, seed):
    # over a large prime, r! alpha^(r) equals the r-fold wedge product
    if 2 * r > n:
        return
    p = FP.p
    m = random_skew(n, p, np.random.default_rng(seed))
    a = two_form(m, p)
    acc = {(): 1}
    for _ in range(r):
        acc = wedge(acc, a, p)
    dp = divided_power(m, r, p)
    assert acc == {I: v * factorial(r) % p for I, v in dp.items() if v * factorial(r) % p}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_wedge_is_graded_commutative(seed):
    rng = np.random.default_rng(seed)
    p = 7
    a = two_form(random_skew(5, p, rng), p)
    b = {(int(i),): int(rng.integers(1, p)) for i in rng.choice(5, 2, replace=False)}
    c = {(int(i),): int(rng.integers(1, p)) for i in rng.choice(5, 2, replace=False)}
    assert wedge(a, b, p) == wedge(b, a, p)
    assert wedge(b, c, p) == {K: -v % p for K, v in wedge(c, b, p).items()}
    assert wedge(wedge(a, b, p), c, p) == wedge(a, wedge(b, c, p), p)


def test_divided_power_works_in_characteristic_three():
    m = np.zeros((6, 6), dtype=np.int64)
    for s in range(3):
        m[2 * s, 2 * s + 1], m[2 * s + 1, 2 * s] = 1, -1
    assert divided_power(m, 3, 3) == {tuple(range(6)): 1}


def test_series_inverse():
    rng = np.random.default_rng(5)
    p = 32003
    a = rng.integers(0, p, size=(4, 3, 3))
    a[0] = [[1, 2, 0], [0, 1, 5], [0, 0, 1]]
    inv = sinv(a, FP)
    prod = smul(a, inv, p)
    assert (prod[0] == np.eye(3, dtype=np.int64)).all()
    assert not prod[1:].any()


# ------------------------------------------------------------- families


def test_family_validation_and_json():
    with pytest.raises(ValueError):
        SkewFamily(np.array([[[0, 1], [1, 0]]]), F3)
    with pytest.raises(ValueError):
        SkewFamily(np.zeros((2, 2, 2), dtype=np.int64), F3)
    with pytest.raises(ValueError):
        SkewFamily(np.array([[[0, 1], [-1, 0]]]), GF(None))
    with pytest.raises(TruncationError):
        SkewFamily.from_terms(2, {(0, 1): [1, 0, 0, 1]}, F3, truncation=2)
    fam = standard(4, F3, [0, 1])
    again = SkewFamily.from_json(fam.to_json())
    assert (again.coeffs == fam.coeffs).all()
    assert json.loads(fam.to_json())["entries"] == [[0, 1, [1]], [2, 3, [0, 1]]]


def test_wedge_limits_of_standard_examples():
    fam = standard(4, F3, [0, 1])
    assert fam.half_rank() == 2
    w2 = wedge_power_limit(fam, 2)
    assert (w2.d, w2.limit) == (1, top(4))
    w1 = wedge_power_limit(fam, 1)
    assert (w1.d, w1.limit) == (0, (((0, 1), 1),))
    fam6 = standard(6, FP, [0, 1, 2])
    w3 = wedge_power_limit(fam6, 3)
    assert (w3.d, w3.limit) == (3, top(6))
    with pytest.raises(ValueError):
        wedge_power_limit(fam, 3)


def test_truncation_too_small_is_reported():
    # at precision t^2 a rank-four family with a t^2 term looks degenerate
    fam = SkewFamily.from_terms(4, {(0, 1): [1]}, F3, truncation=2)
    assert fam.half_rank() == 1
    with pytest.raises(TruncationError):
        wedge_power_limit(fam, 2)


# ---------------------------------------------------------- normal data


def test_extract_n4_example():
    data = extract_normal_data(standard(4, F3, [0, 1]))
    assert data.ranks == (2, 2)
    B = data.basis(1)
    assert B.tolist() == [[0, 0], [0, 0], [1, 0], [0, 1]]
    assert data.form(1).tolist() == [[0, 1], [2, 0]]
    assert omega_tuple(data) == (wedge_power_limit(standard(4, F3, [0, 1]), 1).limit, top(4))


def test_extract_n6_two_step_example():
    fam = standard(6, F3, [0, 1, 2])
    data = extract_normal_data(fam)
    assert data.ranks == (2, 2, 2)
    assert [data.basis(i).shape[1] for i in (1, 2)] == [4, 2]
    assert build_omega(data, 3) == top(6)
    assert build_omega(data, 2) == ((tuple(range(4)), 1),)
    # the answer does not depend on the lifts
    for seed in range(5):
        assert build_omega(data, 2, seed=seed) == build_omega(data, 2)


def test_constant_nondegenerate_family():
    fam = standard(4, F3, [0, 0])
    data = extract_normal_data(fam)
    assert data.ranks == (4,) and data.flag == ()
    assert omega_counts(data, 2) == [2]


def test_make_normal_data_rejects_bad_input():
    f0 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    good_w = np.array([[0, 0], [0, 0], [1, 0], [0, 1]])
    f1 = np.array([[0, 1], [-1, 0]])
    make_normal_data(4, F3, [good_w], [f0, f1])
    with pytest.raises(ValueError):
        make_normal_data(4, F3, [np.array([[1, 0], [0, 0], [0, 0], [0, 1]])], [f0, f1])
    with pytest.raises(ValueError):
        make_normal_data(4, F3, [], [f0])
    with pytest.raises(ValueError):
        make_normal_data(4, F3, [good_w], [f0, np.zeros((2, 2))])


def test_data_serialization_roundtrip():
    data = extract_normal_data(standard(6, F3, [0, 1, 2]))
    assert SkewNormalData.from_dict(json.loads(json.dumps(data.to_dict()))) == data


def test_enumeration_counts_over_f3():
    # N = 3: every nonzero form has rank 2, (3^3 - 1)/2 classes.
    # N = 4: each of the (3^6 - 1)/2 classes is either nondegenerate or has a
    # 2-dimensional kernel carrying exactly one form up to scalar.
    counts = {n: sum(1 for _ in enumerate_normal_data(n, F3)) for n in (2, 3, 4)}
    assert counts == {2: 1, 3: 13, 4: 364}


@pytest.mark.parametrize("dim", [3, 4])
def test_exhaustive_roundtrip_and_injectivity(dim):
    seen = {}
    for data in enumerate_normal_data(dim, F3):
        fam = smoothing(data, seed=1)
        assert extract_normal_data(fam) == data
        om = omega_tuple(data)
        assert om == tuple(wedge_power_limit(fam, r).limit for r in range(1, data.l + 1))
        assert om not in seen
        seen[om] = data


@settings(max_examples=15, deadline=None)
@given(st.integers(4, 6), st.sampled_from([3, 32003]), st.integers(0, 10**6))
def test_random_family_compatibility(dim, p, seed):
    fam = random_family(dim, GF(p), seed)
    data = extract_normal_data(fam)
    assert sum(data.ranks) == 2 * (dim // 2)
    for r in range(1, data.l + 1):
        assert build_omega(data, r) == wedge_power_limit(fam, r).limit
    assert extract_normal_data(smoothing(data, seed)) == data


def test_reparametrized_family_keeps_compatibility():
    base = standard(6, F3, [0, 1, 2])
    for seed in range(4):
        fam = reparametrize(base, seed)
        data = extract_normal_data(fam)
        assert data.ranks == (2, 2, 2)
        assert omega_tuple(data) == tuple(wedge_power_limit(fam, r).limit for r in (1, 2, 3))


def test_adapted_smoothing_roundtrips_three_levels_in_dimension_eight():
    base = SkewFamily.from_terms(8, {(0, 1): [1], (2, 3): [0, 1], (4, 5): [0, 0, 1],
                                     (6, 7): [0, 0, 1]}, F3)
    data = extract_normal_data(reparametrize(base, 11))
    assert data.ranks == (2, 2, 4)
    for seed in range(3):
        assert extract_normal_data(smoothing(data, seed)) == data


def test_normalize_vector():
    assert normalize_vector({(1, 2): 2, (0, 3): 4}, 5) == (((0, 3), 1), ((1, 2), 3))
    with pytest.raises(ValueError):
        normalize_vector({}, 5)
