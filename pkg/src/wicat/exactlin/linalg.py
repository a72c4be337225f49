"""Exact solving, rank, kernels and idempotent factorization."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..errors import NotIdempotent, RingMismatch, ShapeMismatch, UnsupportedRing
from .matrix import ExactMatrix, hstack
from .rings import RingDescriptor, ZZ, qfrac
from .snf import smith_int


# -- field elimination ---------------------------------------------------


def _rref(ring: RingDescriptor, data, ncols: int | None = None):
    """Reduced row echelon form over a field.

    Pivots are searched only among the first ``ncols`` columns (all by
    default).  Returns ``(rows, pivots)`` with ``rows`` a fresh list of lists.
    """
    M = [list(r) for r in data]
    if not M:
        return M, []
    width = len(M[0]) if ncols is None else ncols
    if ring.kind == "Q":
        return _rref_q(M, width)
    p = ring.modulus
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def _rref_q(M, width):
    """Fraction-free Gauss-Jordan on integer rows, converted back at the end."""
    rows = []
    for row in M:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        rows.append([x.numerator * (den // x.denominator) for x in row])
    pivots = []
    r = 0
    n = len(rows)
    for c in range(width):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        lead = pr[c]
        nz = [j for j, x in enumerate(pr) if x]
        for i in range(n):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(lead, f)
            a, b = lead // g, f // g
            if a != 1:
                row[:] = [a * x for x in row]
            for j in nz:
                row[j] -= b * pr[j]
            cont = 0
            for x in row:
                if x:
                    cont = gcd(cont, x)
                    if cont == 1:
                        break
            if cont > 1:
                row[:] = [x // cont for x in row]
        pivots.append(c)
        r += 1
        if r == n:
            break
    out = []
    for k, row in enumerate(rows):
        if k < len(pivots):
            lead = row[pivots[k]]
            out.append([qfrac(x, lead) if x else _QZERO for x in row])
        else:
            out.append([qfrac(x) if x else _QZERO for x in row])
    return out, pivots


_QZERO = Fraction(0)


def _require_field_like(ring: RingDescriptor, what: str):
    if not ring.is_field_like:
        raise UnsupportedRing(f"{what} needs a field or a product of fields, not {ring}")


def rref(a: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    if not a.ring.is_field:
        raise UnsupportedRing(f"rref needs a field, not {a.ring}")
    rows, piv = _rref(a.ring, a.data)
    return ExactMatrix(a.ring, a.rows, a.cols, rows), piv


def rank(a: ExactMatrix):
    """Rank over a field; a tuple of ranks (one per factor) over a product."""
    ring = a.ring
    if ring.kind == "product":
        return tuple(rank(c) for c in a.components())
    if ring.is_field:
        return len(_rref(ring, a.data)[1])
    if ring == ZZ:
        S, _, _ = smith_int([list(r) for r in a.data], a.rows, a.cols)
        return sum(1 for i in range(min(a.rows, a.cols)) if S[i][i])
    raise UnsupportedRing(f"rank over {ring} is not defined here")


def kernel(a: ExactMatrix) -> ExactMatrix:
    """Columns forming a basis of the right null space (fields only)."""
    ring = a.ring
    if not ring.is_field:
        raise UnsupportedRing(f"kernel basis needs a field, not {ring}")
    n = a.cols
    rows, piv = _rref(ring, a.data)
    free = [j for j in range(n) if j not in set(piv)]
    z, o = ring.zero, ring.one
    cols = []
    for f in free:
        v = [z] * n
        v[f] = o
        for r, pc in enumerate(piv):
            v[pc] = ring.neg(rows[r][f])
        cols.append(v)
    if not cols:
        return ExactMatrix.zero(ring, n, 0)
    return ExactMatrix(ring, len(cols), n, cols).transpose()


def column_basis(a: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """A reduced basis of the column space.

    Returns ``(B, rows)`` where ``B`` has full column rank, the rows of ``B``
    listed in ``rows`` form an identity block, and every column of ``a`` is
    ``B`` times that column restricted to ``rows``.
    """
    ring = a.ring
    if not ring.is_field:
        raise UnsupportedRing(f"column basis needs a field, not {ring}")
    rows, piv = _rref(ring, a.transpose().data)
    basis = rows[: len(piv)]
    if not basis:
        return ExactMatrix.zero(ring, a.rows, 0), []
    return ExactMatrix(ring, len(basis), a.rows, basis).transpose(), piv


def inverse(a: ExactMatrix) -> ExactMatrix:
    """Inverse over a field (componentwise over products) or over Z."""
    if a.rows != a.cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    x = solve(a, ExactMatrix.identity(a.ring, a.rows))
    if x is None or not (x @ a).is_identity():
        raise ZeroDivisionError("matrix is not invertible")
    return x


# -- solving ---------------------------------------------------------------


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """Some ``X`` with ``a @ X == b``, or ``None`` if no solution exists."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve: {a.shape} against {b.shape}")
    ring = a.ring
    if ring.kind == "product":
        parts = []
        for ca, cb in zip(a.components(), b.components()):
            x = solve(ca, cb)
            if x is None:
                return None
            parts.append(x)
        return ExactMatrix.from_components(ring, parts)
    if ring.is_field:
        return _solve_field(a, b)
    if ring == ZZ:
        return _solve_int(a, b)
    # Z/n with n composite: A X + n W = B over the integers
    n = ring.modulus
    lifted_a = [list(r) + [n if i == j else 0 for j in range(a.rows)] for i, r in enumerate(a.data)]
    sol = _solve_int_lists(lifted_a, [list(r) for r in b.data], a.rows, a.cols + a.rows, b.cols)
    if sol is None:
        return None
    return ExactMatrix(ring, a.cols, b.cols, sol[: a.cols])


def _solve_field(a: ExactMatrix, b: ExactMatrix):
    ring = a.ring
    n = a.cols
    if a.rows == 0:
        return ExactMatrix.zero(ring, n, b.cols)
    aug = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    rows, piv = _rref(ring, aug, ncols=n)
    iz = ring.is_zero
    for r in range(len(piv), len(rows)):
        if not all(iz(x) for x in rows[r][n:]):
            return None
    z = ring.zero
    x = [[z] * b.cols for _ in range(n)]
    for r, pc in enumerate(piv):
        x[pc] = rows[r][n:]
    return ExactMatrix(ring, n, b.cols, x)


def _solve_int(a: ExactMatrix, b: ExactMatrix):
    sol = _solve_int_lists([list(r) for r in a.data], [list(r) for r in b.data], a.rows, a.cols, b.cols)
    if sol is None:
        return None
    return ExactMatrix(ZZ, a.cols, b.cols, sol)


def _solve_int_lists(A, B, m, n, k):
    """Integer solution of A X = B via Smith form, or None."""
    S, U, V = smith_int(A, m, n)
    UB = [[sum(U[i][t] * B[t][j] for t in range(m)) for j in range(k)] for i in range(m)]
    Y = [[0] * k for _ in range(n)]
    for i in range(m):
        d = S[i][i] if i < n else 0
        for j in range(k):
            v = UB[i][j]
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d:
                    return None
                Y[i][j] = v // d
    return [[sum(V[i][t] * Y[t][j] for t in range(n)) for j in range(k)] for i in range(n)]


# -- idempotents -----------------------------------------------------------


def standard_idempotent(ring: RingDescriptor, size: int, multirank) -> ExactMatrix:
    """Diagonal idempotent of the given size whose factor-``k`` rank is ``multirank[k]``.

    Over a single field this is ``diag(1, .., 1, 0, .., 0)``.
    """
    if ring.kind != "product":
        (r,) = tuple(multirank) if not isinstance(multirank, int) else (multirank,)
        return ExactMatrix.diagonal(ring, [1] * r + [0] * (size - r))
    diag = [tuple(1 if i < r else 0 for r in multirank) for i in range(size)]
    return ExactMatrix.diagonal(ring, diag)


def rank_factor(p: ExactMatrix):
    """Split an idempotent as ``p == a @ b`` with ``b @ a`` the identity.

    Returns ``(a, b, r)``.  Over a field ``r`` is the rank and ``b @ a`` is
    the ``r x r`` identity.  Over a product of fields ``r`` is the multirank
    tuple; ``a``/``b`` are padded to ``max(r)`` columns/rows and ``b @ a`` is
    the standard idempotent of that multirank.
    """
    ring = p.ring
    _require_field_like(ring, "rank_factor")
    if p.rows != p.cols:
        raise ShapeMismatch("idempotent must be square")
    if p @ p != p:
        raise NotIdempotent("p @ p != p")
    if ring.kind != "product":
        a, piv = column_basis(p)
        b = p.submatrix(piv, range(p.cols))
        return a, b, len(piv)
    parts = [rank_factor(c) for c in p.components()]
    ranks = tuple(r for _, _, r in parts)
    top = max(ranks)
    n = p.rows
    a_parts, b_parts = [], []
    for (a, b, r), f in zip(parts, ring.factors):
        a_parts.append(hstack([a, ExactMatrix.zero(f, n, top - r)], f, n))
        b_parts.append(_vpad(b, top - r))
    return (ExactMatrix.from_components(ring, a_parts),
            ExactMatrix.from_components(ring, b_parts), ranks)


def _vpad(b: ExactMatrix, extra: int) -> ExactMatrix:
    from .matrix import vstack

    return vstack([b, ExactMatrix.zero(b.ring, extra, b.cols)], b.ring, b.cols)
