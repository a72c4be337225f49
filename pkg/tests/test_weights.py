import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wicat.addcat import CategorySpec, KarObject
from wicat.complexes import Complex, shift
from wicat.complexes.generate import random_complex
from wicat.exactlin import QQ, ExactMatrix, Product
from wicat.weights import (
    WeightClassQuery,
    complex_roundtrip,
    heart_roundtrip,
    heart_to_wkar,
    is_connective,
    is_member,
    required_range,
    stupid_truncate,
    verify_axioms,
    weight_membership,
    wkar_to_heart,
)

FULL_Q = CategorySpec.full(QQ)
R23 = CategorySpec.ranks(QQ, [2, 3])
F23 = Product(2, 3)

seeds = st.integers(0, 10**6)


def point(spec, r, degree=0):
    return Complex.concentrated(spec, KarObject.free(spec.ring, r), degree)


def test_ranges_follow_cohomological_convention():
    # w <= n means degrees >= -n
    assert required_range("w<=", 2)[0] == -2
    assert required_range("w>=", 2)[1] == -2


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(-3, 3))
def test_truncation_triangle_verifies(seed, n):
    M = random_complex(R23, random.Random(seed))
    w = stupid_truncate(M, n)
    assert w.verify()
    assert all(i >= n for i in w.L.degrees if w.L.term(i).size)
    assert all(i <= n - 1 for i in w.R.degrees if w.R.term(i).size)


def test_point_membership_by_degree():
    M = point(FULL_Q, 2, degree=1)
    # degree 1 is weight -1
    assert is_member(M, "w<=", -1) and is_member(M, "w>=", -1)
    assert not is_member(M, "w<=", -2)
    assert not is_member(M, "w>=", 0)
    assert is_member(M, "w=", -1)


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from(["w<=", "w>=", "w="]), st.integers(-2, 2))
def test_membership_certificates_verify(seed, side, level):
    M = random_complex(R23, random.Random(seed))
    c = weight_membership(WeightClassQuery(side, level, M), R23)
    if c is not None:
        assert c.verify(M, R23)


def test_contractible_junk_does_not_spoil_membership():
    # [k^2 -> k^3] in degrees 0,1 is a rank-1 object in degree 1 up to homotopy
    M = Complex.from_ranks(FULL_Q, 0, [2, 3], [ExactMatrix.identity(QQ, 3).block(0, 3, 0, 2)])
    assert is_member(M, "w=", -1)
    assert not is_member(M, "w<=", -2)


def test_axioms_on_small_samples():
    for spec, seed in ((FULL_Q, 1), (R23, 2), (CategorySpec.full(F23), 3)):
        rng = random.Random(seed)
        sample = [random_complex(spec, rng) for _ in range(16)]
        rep = verify_axioms(spec, sample, triangles=8, seed=seed)
        assert rep.passed, rep.to_json()


def test_connective_with_small_bound():
    v = is_connective(R23, 2)
    assert v.connective and v.full_faithful and v.fattened_checks == v.checks


def test_shift_moves_weight():
    M = point(R23, 3)
    assert is_member(shift(M, 2), "w=", 2)


@pytest.mark.parametrize("r", range(6))
def test_heart_round_trip_over_missing_rank(r):
    rt = heart_roundtrip(KarObject.free(QQ, r), R23)
    assert rt.ok and rt.verify(R23)


def test_rank_one_needs_two_terms():
    real = wkar_to_heart(KarObject.free(QQ, 1), R23)
    assert real.complex.ranks() == [2, 3]
    assert real.verify(R23)


def test_heart_objects_over_products():
    spec = CategorySpec.full(F23)
    assert heart_roundtrip(KarObject.standard(F23, (1, 1), 2), spec).verify(spec)
    # outside the weak completion there is nothing to realize
    assert not heart_roundtrip(KarObject.standard(F23, (1, 0), 1), spec).ok


def test_extraction_from_two_term_complex():
    M = Complex.from_ranks(R23, 0, [3, 2], [ExactMatrix.identity(QQ, 3).block(0, 2, 0, 3)])
    ext = heart_to_wkar(M, R23)
    assert ext.obj.multirank == (1,)
    assert ext.verify(R23)


def test_heart_object_equivalent_to_its_realization():
    rng = random.Random(8)
    M = None
    while M is None or not is_member(M, "w=", 0, R23):
        M = random_complex(R23, rng, lo=-1, hi=1)
    real, cert = complex_roundtrip(M, R23)
    assert cert.verify() and real.verify(R23)
