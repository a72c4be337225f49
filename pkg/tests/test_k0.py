import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wicat.addcat import CategorySpec, KarObject
from wicat.errors import UnstablePresentation
from wicat.exactlin import QQ, ZZ, Product
from wicat.k0 import (
    iso_class_keys,
    k0_induced_map,
    k0_presentation,
    small_kar_objects,
    wkar_by_k0,
    wkar_k0_crosscheck,
)

F23 = Product(2, 3)
R23 = CategorySpec.ranks(QQ, [2, 3])


def test_generators_respect_allowed_ranks():
    assert iso_class_keys(R23, 5) == [(0,), (2,), (3,), (4,), (5,)]
    keys = iso_class_keys(CategorySpec.full(F23, "kar"), 1)
    assert keys == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert iso_class_keys(CategorySpec.full(F23, "wkar"), 1) == [(0, 0), (1, 1)]


@pytest.mark.parametrize("spec,bound,free", [
    (CategorySpec.full(QQ), 12, 1),
    (R23, 12, 1),
    (CategorySpec.full(F23), 6, 1),
    (CategorySpec.full(F23, "kar"), 4, 2),
    (CategorySpec.full(F23, "wkar"), 4, 1),
    (CategorySpec.ranks(QQ, [2]), 8, 1),
])
def test_invariants(spec, bound, free):
    p = k0_presentation(spec, bound)
    assert p.invariants == {"free_rank": free, "torsion": []}
    assert p.stable and p.relations_vanish()


def test_coordinates_read_as_ranks():
    p = k0_presentation(R23, 12)
    assert [p.element((n,)) for n in (2, 3, 5, 12)] == [(2,), (3,), (5,), (12,)]
    pk = k0_presentation(CategorySpec.full(F23, "kar"), 4)
    assert pk.element(KarObject.standard(F23, (2, 1), 2)) == (2, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_class_is_additive(a, b):
    p = k0_presentation(R23, 12, check_stability=False)
    if a + b > 12 or not (R23.allows_rank(a) and R23.allows_rank(b)):
        return
    assert p.element((a + b,)) == tuple(x + y for x, y in zip(p.element((a,)), p.element((b,))))


def test_lift_inverts_reduce():
    p = k0_presentation(CategorySpec.full(F23, "kar"), 3)
    for c in [(1, 0), (0, 1), (3, -2)]:
        assert p.reduce(p.lift(c)) == c


def test_stability_detects_too_small_bounds():
    # [2] and [3] stay independent until 2 + 2 + 2 = 3 + 3 appears at rank 6
    assert k0_presentation(R23, 5, check_stability=False).free_rank == 2
    with pytest.raises(UnstablePresentation):
        k0_presentation(R23, 5)


def test_induced_maps():
    assert k0_induced_map(R23, CategorySpec.full(QQ), 12).bijective
    m = k0_induced_map(CategorySpec.full(F23), CategorySpec.full(F23, "kar"), 4)
    assert m.matrix == [[1], [1]]
    assert m.injective and not m.surjective
    assert k0_induced_map(CategorySpec.full(F23, "wkar"), CategorySpec.full(F23, "kar"), 4).injective


def test_lattice_test_agrees_with_witness_search():
    spec = CategorySpec.full(F23)
    assert wkar_by_k0(KarObject.standard(F23, (2, 2), 2), spec, 4).in_image
    v = wkar_by_k0(KarObject.standard(F23, (2, 1), 2), spec, 4)
    assert not v.in_image and v.witness is None


def test_small_object_enumeration_is_exhaustive_for_tiny_sizes():
    objs = small_kar_objects(F23, 1, random.Random(0))
    assert sorted(o.multirank for o in objs) == [(0, 0), (0, 0), (0, 1), (1, 0), (1, 1)]


def test_crosscheck_over_rank_restricted_spec():
    r = wkar_k0_crosscheck(R23, max_size=4, seed=1)
    assert r.checked > 0 and not r.disagreements
    assert r.in_wkar == r.checked


def test_integer_spec_presentation():
    assert k0_presentation(CategorySpec.full(ZZ), 6).invariants == {"free_rank": 1, "torsion": []}
