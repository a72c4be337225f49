import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wicat.addcat import CategorySpec, KarObject
from wicat.complexes import (
    ChainMap,
    Complex,
    EquivalenceCertificate,
    FailureWitness,
    cone,
    disk,
    dual_splitting,
    hom_mod_homotopy,
    homology_ranks,
    identity_map,
    is_acyclic,
    is_contractible,
    minimal_model,
    pad_to_spec,
    same_complex,
    shift,
    split_contractible,
)
from wicat.complexes.generate import random_complex, random_contractible, retraction_complex
from wicat.errors import NotContractible
from wicat.exactlin import QQ, ZZ, ExactMatrix, Product

FULL_Q = CategorySpec.full(QQ)
R23 = CategorySpec.ranks(QQ, [2, 3])
F23 = Product(2, 3)

seeds = st.integers(0, 10**6)


def two_term(spec, entry):
    ring = spec.ring
    return Complex.from_ranks(spec, 0, [1, 1], [ExactMatrix(ring, 1, 1, [[entry]])])


def test_differentials_must_square_to_zero():
    one = ExactMatrix(QQ, 1, 1, [[1]])
    with pytest.raises(ValueError, match="d o d"):
        Complex.from_ranks(FULL_Q, 0, [1, 1, 1], [one, one])


def test_shift_convention():
    M = two_term(FULL_Q, 2)
    S = shift(M, 1)
    assert S.min_degree == -1
    assert S.d(-1) == ExactMatrix(QQ, 1, 1, [[-2]])


def test_cone_of_identity_is_contractible():
    M = Complex.concentrated(FULL_Q, KarObject.free(QQ, 2), 0)
    C = cone(identity_map(M))
    h = is_contractible(C)
    assert h is not None and h.witnesses(identity_map(C))


def test_integer_coefficients_do_not_invert_two():
    assert is_contractible(two_term(CategorySpec.full(ZZ), 2)) is None
    assert is_contractible(two_term(FULL_Q, 2)) is not None


def test_homology_of_split_mono():
    M = Complex.from_ranks(FULL_Q, 0, [2, 3], [ExactMatrix.identity(QQ, 3).block(0, 3, 0, 2)])
    assert homology_ranks(M) == {0: 0, 1: 1}
    assert not is_acyclic(M)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_contractibles_split(seed):
    M = random_contractible(FULL_Q, random.Random(seed))
    assert is_acyclic(M)
    s = split_contractible(M)
    assert s.ok and s.verify()


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_dual_splitting_verifies(seed):
    M = random_contractible(FULL_Q, random.Random(seed), max_length=4, max_rank=4)
    s = dual_splitting(M)
    assert s.ok and s.verify()


def test_retraction_complex_needs_a_missing_rank():
    w = split_contractible(retraction_complex(R23, 2, 3), R23)
    assert isinstance(w, FailureWitness)
    assert w.degree == 0 and w.complement.multirank == (1,) and w.verify()
    s = split_contractible(retraction_complex(FULL_Q, 2, 3))
    assert s.ok and s.verify()


def test_splitting_refuses_non_contractible():
    with pytest.raises(NotContractible):
        split_contractible(Complex.concentrated(FULL_Q, KarObject.free(QQ, 1), 0))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_minimal_model_certificate(seed):
    M = random_complex(R23, random.Random(seed))
    H, cert = minimal_model(M)
    assert cert.verify()
    assert all(H.d(i).is_zero() for i in H.degrees)
    assert {i: r for i, r in homology_ranks(M).items() if r} == {i: H.term(i).size for i in H.degrees
                                                                   if H.term(i).size}


def test_minimal_model_over_products():
    rng = random.Random(2)
    M = random_complex(CategorySpec.full(F23), rng)
    H, cert = minimal_model(M)
    assert cert.verify()


def test_padding_realizes_rank_one_in_two_terms():
    H = Complex.concentrated(CategorySpec.full(QQ, "kar"), KarObject.free(QQ, 1), 0)
    P, cert = pad_to_spec(H, R23, (-1, 0))
    assert P.ranks() == [2, 3] and P.in_spec(R23)
    assert cert.verify()


def test_equivalence_certificates_compose():
    rng = random.Random(7)
    M = random_complex(FULL_Q, rng)
    H, a = minimal_model(M)
    loop = a.then(a.inverse())
    assert loop.verify() and same_complex(loop.source, M) and same_complex(loop.target, M)
    assert EquivalenceCertificate.identity(M).verify()


def test_hom_modulo_homotopy_counts_shifts():
    X = Complex.concentrated(FULL_Q, KarObject.free(QQ, 2), 0)
    Y = Complex.concentrated(FULL_Q, KarObject.free(QQ, 3), 0)
    assert hom_mod_homotopy(X, Y).dimension == 6
    assert hom_mod_homotopy(X, shift(Y, 1)).dimension == 0
    assert hom_mod_homotopy(shift(Y, 1), X).dimension == 0


def test_hom_basis_are_chain_maps():
    rng = random.Random(11)
    S, T = random_complex(FULL_Q, rng), random_complex(FULL_Q, rng)
    h = hom_mod_homotopy(S, T)
    assert all(isinstance(f, ChainMap) and f.is_chain_map() for f in h.basis)
    assert len(h.basis) == h.dimension


def test_disk_is_identity_cone():
    D = disk(KarObject.free(QQ, 2), 3, FULL_Q)
    assert D.ranks() == [2, 2] and D.min_degree == 3
    assert is_contractible(D) is not None
