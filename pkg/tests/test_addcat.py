import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wicat.addcat import (
    AllowedRanks,
    CategorySpec,
    KarMorphism,
    KarObject,
    RingHom,
    complement_split_mono,
    direct_sum,
    injection,
    is_idempotent_complete,
    is_isomorphic,
    is_weakly_idempotent_complete,
    kar_functor,
    projection,
    random_idempotent,
    split_mono_transpose_is_split_epi,
    standard_split_mono,
    wkar_witness,
    wkar_witness_by_enumeration,
)
from wicat.errors import NotSplitMono, SplitMonoNoComplement
from wicat.exactlin import QQ, ExactMatrix, Product

F23 = Product(2, 3)
R23 = CategorySpec.ranks(QQ, [2, 3])


def test_allowed_ranks_are_the_generated_monoid():
    a = AllowedRanks((2, 3))
    assert [n for n in range(8) if n in a] == [0, 2, 3, 4, 5, 6, 7]
    assert a.gcd == 1


def test_spec_json_round_trip():
    for spec in (R23, CategorySpec.full(QQ), CategorySpec.full(F23, "kar"), R23.wkar()):
        assert CategorySpec.from_json(spec.to_json()) == spec


def test_layers_membership():
    half = KarObject.standard(F23, (1, 0), 1)
    spec = CategorySpec.full(F23)
    assert not spec.contains(half)
    assert spec.kar().contains(half)
    assert not spec.wkar().contains(half)
    assert spec.wkar().contains(KarObject.standard(F23, (1, 1), 2))


def test_multirank_of_conjugated_idempotent():
    rng = random.Random(1)
    e = random_idempotent(F23, 3, (2, 1), rng)
    assert KarObject(F23, 3, e).multirank == (2, 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3))
def test_complement_over_full_spec_verifies(a, extra):
    spec = CategorySpec.full(QQ)
    i, p = standard_split_mono(spec, a, a + extra)
    c = complement_split_mono(i, p, spec)
    assert c.verify(i)
    assert c.complement.constant_rank == extra


def test_missing_rank_has_no_complement():
    i, p = standard_split_mono(R23, 2, 3)
    with pytest.raises(SplitMonoNoComplement) as exc:
        complement_split_mono(i, p, R23)
    assert exc.value.complement.multirank == (1,)


def test_non_split_mono_is_rejected():
    i, p = standard_split_mono(R23, 2, 3)
    with pytest.raises(NotSplitMono):
        complement_split_mono(i, KarMorphism(p.source, p.target, ExactMatrix.zero(QQ, 2, 3)), R23)


def test_completeness_over_products_and_missing_ranks():
    assert is_weakly_idempotent_complete(CategorySpec.full(F23)).complete
    ic = is_idempotent_complete(CategorySpec.full(F23))
    assert not ic.complete and ic.witness.multirank == (1, 0)
    v = is_weakly_idempotent_complete(R23)
    assert not v.complete and v.counterexample.pair == (2, 3)
    assert split_mono_transpose_is_split_epi(v.counterexample)
    assert is_idempotent_complete(CategorySpec.full(F23, "kar")).complete


def test_weak_completion_witnesses_combine():
    v = is_weakly_idempotent_complete(R23.wkar(), samples=10, seed=3)
    assert v.complete and len(v.witnesses) == 10
    assert all(w.verify() for w in v.witnesses)


@pytest.mark.parametrize("r", range(6))
def test_every_rank_is_in_the_weak_completion(r):
    w = wkar_witness(KarObject.free(QQ, r), R23)
    assert w is not None and w.verify(R23)


def test_witness_search_agrees_with_enumeration():
    spec = CategorySpec.full(F23)
    for mr in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]:
        Z = KarObject.standard(F23, mr, max(mr))
        fast = wkar_witness(Z, spec)
        slow = wkar_witness_by_enumeration(Z, spec, 4)
        assert (fast is None) == (slow is None)


def test_isomorphism_by_multirank():
    rng = random.Random(4)
    A = KarObject(F23, 3, random_idempotent(F23, 3, (2, 1), rng))
    B = KarObject.standard(F23, (2, 1), 2)
    f, g = is_isomorphic(A, B)
    assert (g @ f).is_identity() and (f @ g).is_identity()
    assert is_isomorphic(A, KarObject.standard(F23, (1, 2), 2)) is None


def test_biproduct_maps():
    objs = [KarObject.standard(F23, (1, 0), 1), KarObject.free(F23, 2)]
    S = direct_sum(*objs)
    for k in range(2):
        assert (projection(objs, k) @ injection(objs, k)).is_identity()
    assert (projection(objs, 1) @ injection(objs, 0)).matrix.is_zero()
    assert S.multirank == (3, 2)


def test_kar_functor_on_projection():
    F = RingHom("projection", F23, 0)
    Z = KarObject.standard(F23, (1, 0), 1)
    image = kar_functor(F, Z)
    assert image.ring == F.target and image.multirank == (1,)
    f = KarMorphism.cut(Z, Z, ExactMatrix(F23, 1, 1, [[(1, 2)]]))
    assert kar_functor(F, f @ f) == kar_functor(F, f) @ kar_functor(F, f)
