"""Smith normal form over the integers and over Z/n."""
from __future__ import annotations

from ..errors import UnsupportedRing
from .matrix import ExactMatrix
from .rings import ZZ


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_int(a: list[list[int]], m: int, n: int):
    """Return ``(S, U, V)`` as int lists with ``U @ A @ V == S``.

    ``U`` and ``V`` are unimodular; the nonzero diagonal entries of ``S`` are
    positive and each divides the next.
    """
    S = [list(r) for r in a]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in S:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return S, U, V
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            piv = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // piv))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // piv))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(S[i][j] % piv for j in range(t + 1, n))),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if piv < 0:
                S[t] = [-x for x in S[t]]
                U[t] = [-x for x in U[t]]
            break
    return S, U, V


def snf(a: ExactMatrix):
    """Smith normal form ``(S, U, V)`` with ``U @ a @ V == S``.

    Over Z/n the computation is lifted to the integers and reduced; integer
    unimodular transforms stay invertible mod n and the divisibility chain
    survives the reduction.
    """
    ring = a.ring
    if ring.kind not in ("Z", "Zmod"):
        raise UnsupportedRing(f"Smith normal form needs Z or Z/n, not {ring}")
    lifted = [[int(x) for x in row] for row in a.data]
    S, U, V = smith_int(lifted, a.rows, a.cols)
    return (
        ExactMatrix(ring, a.rows, a.cols, S),
        ExactMatrix(ring, a.rows, a.rows, U),
        ExactMatrix(ring, a.cols, a.cols, V),
    )


def invariant_factors(a: ExactMatrix) -> list[int]:
    """Nonzero diagonal entries of the integer Smith form."""
    if a.ring != ZZ:
        raise UnsupportedRing("invariant factors are computed over Z")
    S, _, _ = smith_int([list(r) for r in a.data], a.rows, a.cols)
    return [S[i][i] for i in range(min(a.rows, a.cols)) if S[i][i]]


def int_det(rows: list[list[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    M = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
