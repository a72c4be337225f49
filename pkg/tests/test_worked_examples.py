"""Small hand-checkable cases, each with its expected answer written out."""
from fractions import Fraction

from wicat.addcat import (
    CategorySpec,
    KarMorphism,
    KarObject,
    RingHom,
    complement_split_mono,
    direct_sum,
    is_isomorphic,
    kar_functor,
    wkar_witness,
)
from wicat.complexes import (
    Complex,
    cone,
    hom_mod_homotopy,
    identity_map,
    is_contractible,
    minimal_model,
    pad_to_spec,
    shift,
    split_contractible,
    zero_map,
)
from wicat.complexes.generate import retraction_complex
from wicat.exactlin import QQ, ZZ, ExactMatrix, Product, rank_factor, snf, solve
from wicat.k0 import k0_induced_map, k0_presentation, wkar_by_k0
from wicat.weights import WeightClassQuery, heart_to_wkar, is_member, stupid_truncate, weight_membership

F23 = Product(2, 3)
FULL_Q = CategorySpec.full(QQ)
R23 = CategorySpec.ranks(QQ, [2, 3])


def q(rows):
    return ExactMatrix(QQ, len(rows), len(rows[0]) if rows else 0, rows)


def test_smith_form_2_4_6_8():
    S, U, V = snf(ExactMatrix(ZZ, 2, 2, [[2, 4], [6, 8]]))
    assert S == ExactMatrix(ZZ, 2, 2, [[2, 0], [0, 4]])


def test_two_x_equals_one_has_no_integer_solution():
    assert solve(ExactMatrix(ZZ, 1, 1, [[2]]), ExactMatrix(ZZ, 1, 1, [[1]])) is None


def test_rank_factor_of_rank_one_projector():
    a, b, r = rank_factor(q([[1, 1], [0, 0]]))
    assert (a, b, r) == (q([[1], [0]]), q([[1, 1]]), 1)


def test_sum_of_complementary_halves_is_free():
    x, y = KarObject.standard(F23, (1, 0), 1), KarObject.standard(F23, (0, 1), 1)
    s = direct_sum(x, y)
    assert s.multirank == (1, 1)
    f, g = is_isomorphic(s, KarObject.free(F23, 1))
    assert (g @ f).is_identity()


def test_isomorphism_examples():
    assert is_isomorphic(KarObject(QQ, 2, q([[1, 1], [0, 0]])), KarObject.free(QQ, 1)) is not None
    assert is_isomorphic(KarObject.standard(F23, (1, 0), 1), KarObject.free(F23, 1)) is None


def test_complement_of_diagonal():
    X, Y = KarObject.free(QQ, 1), KarObject.free(QQ, 2)
    i = KarMorphism(X, Y, q([[1], [1]]))
    p = KarMorphism(Y, X, q([[1, 0]]))
    c = complement_split_mono(i, p, FULL_Q)
    assert c.complement.multirank == (1,)
    assert c.inverse.matrix == q([[1, 0], [1, 1]])


def test_rank_one_witness():
    w = wkar_witness(KarObject.free(QQ, 1), R23)
    assert (w.x.size, w.y.size) == (2, 3)
    assert wkar_witness(KarObject.standard(F23, (1, 0), 1), CategorySpec.full(F23)) is None


def test_projection_functor_on_halves():
    F = RingHom("projection", F23, 0)
    assert kar_functor(F, KarObject.standard(F23, (1, 0), 1)).idem == ExactMatrix(F.target, 1, 1, [[1]])
    assert kar_functor(F, KarObject.standard(F23, (0, 1), 1)).idem == ExactMatrix(F.target, 1, 1, [[0]])


def test_cone_of_zero_map_is_sum():
    M = Complex.concentrated(FULL_Q, KarObject.free(QQ, 1), 0)
    N = Complex.concentrated(FULL_Q, KarObject.free(QQ, 2), 0)
    C = cone(zero_map(M, N))
    assert C.term(-1).size == 1 and C.term(0).size == 2
    assert hom_mod_homotopy(C, shift(M, 1)).dimension == 1


def test_multiplication_by_two():
    two_q = Complex.from_ranks(FULL_Q, 0, [1, 1], [q([[2]])])
    assert is_contractible(two_q).comps[1] == q([[Fraction(1, 2)]])
    two_z = Complex.from_ranks(CategorySpec.full(ZZ), 0, [1, 1], [ExactMatrix(ZZ, 1, 1, [[2]])])
    assert is_contractible(two_z) is None


def test_cone_of_identity_has_no_maps_out():
    M = Complex.concentrated(FULL_Q, KarObject.free(QQ, 1), 0)
    assert hom_mod_homotopy(cone(identity_map(M)), M).dimension == 0


def test_retraction_complex_summands_over_full_spec():
    s = split_contractible(retraction_complex(FULL_Q, 2, 3))
    assert [(N.size, m) for N, m in s.summands] == [(2, 0), (1, 1), (2, 2)]


def test_minimal_model_of_split_epi():
    M = Complex.from_ranks(FULL_Q, 0, [3, 2], [ExactMatrix.identity(QQ, 3).block(0, 2, 0, 3)])
    H, cert = minimal_model(M)
    assert [(i, H.term(i).size) for i in H.degrees if H.term(i).size] == [(0, 1)]


def test_padding_into_the_upper_window_uses_a_split_epi():
    H = Complex.concentrated(CategorySpec.full(QQ, "kar"), KarObject.free(QQ, 1), 0)
    P, cert = pad_to_spec(H, R23, (0, 1))
    assert P.min_degree == 0 and P.ranks() == [3, 2]
    assert cert.verify()


def test_padding_leaves_allowed_ranks_alone():
    H = Complex.concentrated(CategorySpec.full(QQ, "kar"), KarObject.free(QQ, 3), 0)
    P, _ = pad_to_spec(H, R23, (0, 0))
    assert P.ranks() == [3]


def test_truncating_identity_cone():
    M = Complex.from_ranks(FULL_Q, -1, [1, 1], [q([[1]])])
    w = stupid_truncate(M, 0)
    assert w.L.ranks() == [1] and w.L.min_degree == 0
    assert w.R.ranks() == [1] and w.R.min_degree == -1
    assert w.connecting[-1] == q([[1]])
    assert w.verify()


def test_low_degree_obstructs_nonpositive_weight():
    M = Complex.concentrated(FULL_Q, KarObject.free(QQ, 1), -2)
    assert weight_membership(WeightClassQuery("w<=", 0, M)) is None


def test_split_epi_is_a_heart_object_padded_to_allowed_ranks():
    M = Complex.from_ranks(R23, 0, [3, 2], [ExactMatrix.identity(QQ, 3).block(0, 2, 0, 3)])
    c = weight_membership(WeightClassQuery("w=", 0, M), R23)
    assert c is not None and c.verify(M, R23)
    assert sorted(t.size for t in c.representative.terms if t.size) == [2, 3]


def test_heart_extraction_reports_witness():
    M = Complex.from_ranks(R23, -1, [2, 3], [ExactMatrix.identity(QQ, 3).block(0, 3, 0, 2)])
    assert is_member(M, "w=", 0, R23)
    ext = heart_to_wkar(M, R23)
    assert ext.obj.multirank == (1,)
    assert (ext.witness.x.size, ext.witness.y.size) == (2, 3)


def test_k0_generators_and_maps():
    p = k0_presentation(R23, 12)
    assert p.element((3,)) != p.element((2,))
    assert tuple(a - b for a, b in zip(p.element((3,)), p.element((2,)))) == (1,)
    m = k0_induced_map(R23, R23, 12)
    assert m.matrix == [[1]] and m.bijective
    spec = CategorySpec.full(F23)
    diag = KarObject(F23, 2, ExactMatrix(F23, 2, 2, [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]))
    assert wkar_by_k0(diag, spec, 4).in_image
    assert not wkar_by_k0(KarObject.standard(F23, (1, 0), 1), spec, 4).in_image
