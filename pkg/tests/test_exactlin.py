from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wicat.errors import NotIdempotent, UnsupportedRing
from wicat.exactlin import (
    QQ,
    ZZ,
    ExactMatrix,
    Product,
    RingDescriptor,
    Zmod,
    int_det,
    inverse,
    invariant_factors,
    kernel,
    rank,
    rank_factor,
    snf,
    solve,
    standard_idempotent,
)

F23 = Product(2, 3)


def small_ints(m, n):
    return st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)


@st.composite
def int_matrices(draw, max_dim=6):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return ExactMatrix(ZZ, m, n, draw(small_ints(m, n)))


@st.composite
def rational_square(draw, max_dim=5):
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5),
                                  min_size=n, max_size=n), min_size=n, max_size=n))
    return ExactMatrix(QQ, n, n, rows)


def test_rationals_stay_reduced():
    a = ExactMatrix(QQ, 1, 2, [["2/4", Fraction(3, 9)]])
    assert a[0, 0] == Fraction(1, 2) and a[0, 0].denominator == 2
    b = a @ ExactMatrix(QQ, 2, 1, [[2], [3]])
    assert b[0, 0] == 2 and b[0, 0].denominator == 1


def test_ring_json_round_trip():
    for r in (QQ, ZZ, Zmod(6), Zmod(7), F23):
        assert RingDescriptor.from_json(r.to_json()) == r


def test_matrix_json_round_trip():
    for m in (ExactMatrix(QQ, 2, 2, [[1, "1/3"], [0, -2]]), ExactMatrix(F23, 1, 2, [[(1, 2), (0, 1)]]),
              ExactMatrix(Zmod(6), 1, 1, [[5]]), ExactMatrix(ZZ, 0, 3, [])):
        assert ExactMatrix.from_json(m.ring, m.to_json()) == m


def test_zmod_arithmetic_wraps():
    a = ExactMatrix(Zmod(6), 1, 1, [[4]])
    assert (a @ a)[0, 0] == 4
    assert (a + a)[0, 0] == 2


def test_product_entries_are_componentwise():
    e = ExactMatrix(F23, 1, 1, [[(1, 0)]])
    assert e @ e == e
    assert (e + e)[0, 0] == (0, 0)


def test_matrices_are_immutable():
    m = ExactMatrix(QQ, 1, 1, [[1]])
    with pytest.raises(AttributeError):
        m.rows = 3


@settings(max_examples=60, deadline=None)
@given(rational_square())
def test_inverse_or_kernel(a):
    n = a.rows
    if rank(a) == n:
        assert a @ inverse(a) == ExactMatrix.identity(QQ, n)
    else:
        k = kernel(a)
        assert k.cols == n - rank(a)
        assert (a @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(rational_square(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_returns_exact_solutions(a, xs):
    x = ExactMatrix(QQ, a.cols, 1, [[v] for v in xs[:a.cols]])
    b = a @ x
    y = solve(a, b)
    assert y is not None and a @ y == b


@settings(max_examples=80, deadline=None)
@given(int_matrices(max_dim=8))
def test_smith_form_identities(a):
    S, U, V = snf(a)
    assert U @ a @ V == S
    assert abs(int_det([list(r) for r in U.data])) == 1
    assert abs(int_det([list(r) for r in V.data])) == 1
    d = invariant_factors(a)
    assert all(x > 0 for x in d)
    assert all(b % c == 0 for c, b in zip(d, d[1:]))
    assert len(d) == rank(ExactMatrix(QQ, a.rows, a.cols, a.data))


def test_smith_form_of_known_matrix():
    a = ExactMatrix(ZZ, 2, 2, [[2, 4], [6, 8]])
    assert invariant_factors(a) == [2, 4]


def test_snf_needs_integers():
    with pytest.raises(UnsupportedRing):
        snf(ExactMatrix(QQ, 1, 1, [[1]]))


def test_integer_solve_respects_lattice():
    two = ExactMatrix(ZZ, 1, 1, [[2]])
    assert solve(two, ExactMatrix(ZZ, 1, 1, [[1]])) is None
    assert solve(two, ExactMatrix(ZZ, 1, 1, [[4]])) == ExactMatrix(ZZ, 1, 1, [[2]])


@pytest.mark.parametrize("ring,multirank,size", [(QQ, (2,), 3), (F23, (1, 0), 1), (F23, (2, 1), 3)])
def test_rank_factor_splits_idempotents(ring, multirank, size):
    e = standard_idempotent(ring, size, multirank)
    a, b, r = rank_factor(e)
    assert a @ b == e
    assert r == (multirank[0] if ring.factor_count == 1 else multirank)


def test_rank_factor_rejects_non_idempotents():
    with pytest.raises(NotIdempotent):
        rank_factor(ExactMatrix(QQ, 1, 1, [[2]]))
