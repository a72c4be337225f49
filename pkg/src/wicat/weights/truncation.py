"""Stupid truncations and the weight decompositions they give."""
from __future__ import annotations

from dataclasses import dataclass

from ..exactlin import ExactMatrix, block_matrix, hstack, vstack
from ..complexes import ChainMap, Complex, Homotopy, cone, identity_map, shift

# Degree ranges of the stupid weight structure.  A complex lies in
# C_{w<=n} iff it is homotopy equivalent to one in degrees >= -n, and in
# C_{w>=n} iff it is equivalent to one in degrees <= -n.  Every other
# degree computation in this package goes through these two functions.


def lower_bound_for_w_le(n: int) -> int:
    return -n


def upper_bound_for_w_ge(n: int) -> int:
    return -n


def required_range(side: str, n: int) -> tuple[float, float]:
    """Degree interval a representative must live in (inclusive, may be infinite)."""
    inf = float("inf")
    if side == "w<=":
        return lower_bound_for_w_le(n), inf
    if side == "w>=":
        return -inf, upper_bound_for_w_ge(n)
    if side == "w=":
        return lower_bound_for_w_le(n), upper_bound_for_w_ge(n)
    raise ValueError(f"unknown side {side!r}")


def support_within(M: Complex, lo: float, hi: float) -> bool:
    sup = M.support()
    return sup is None or (lo <= sup[0] and sup[1] <= hi)


def _cut(M: Complex, lo: int, hi: int) -> Complex:
    """The terms of ``M`` in degrees ``[lo, hi]`` with the differentials between them."""
    if not M.terms or hi < lo:
        return Complex.zero(M.spec)
    lo, hi = max(lo, M.min_degree), min(hi, M.max_degree)
    if hi < lo:
        return Complex.zero(M.spec)
    return M.reindexed(lo, hi)


@dataclass
class WeightDecomposition:
    """``L -> M -> R -> L[1]`` with ``L`` in degrees ``>= n`` and ``R`` in degrees ``<= n - 1``.

    ``to_cone``/``from_cone`` identify ``R`` with ``cone(incl)``; the triangle is
    distinguished for the convention in which the standard triangle of
    ``f: X -> Y`` is ``X -> Y -> cone(f) -> X[1]`` with third map minus the
    projection.
    """

    level: int
    M: Complex
    L: Complex
    R: Complex
    incl: ChainMap
    proj: ChainMap
    connecting: ChainMap
    to_cone: ChainMap
    from_cone: ChainMap
    cone_homotopy: Homotopy

    def verify(self) -> bool:
        M, L, R, n = self.M, self.L, self.R, self.level
        C = self.to_cone.target
        degs = range(min(M.degrees.start, n - 1), max(M.degrees.stop, n + 1))
        maps_ok = all(f.is_chain_map() for f in
                      (self.incl, self.proj, self.connecting, self.to_cone, self.from_cone))
        # degreewise split short exact: proj o incl = 0 and the term sizes add up
        exact = all((self.proj[i] @ self.incl[i]).is_zero() for i in degs) and all(
            M.term(i).size == L.term(i).size + R.term(i).size for i in degs)
        j = ChainMap(M, C, {i: vstack([ExactMatrix.zero(M.ring, L.term(i + 1).size, M.term(i).size),
                                       M.term(i).idem], M.ring, M.term(i).size) for i in M.degrees})
        third = ChainMap(C, shift(L, 1), {i: -hstack([L.term(i + 1).idem,
                                                      ExactMatrix.zero(M.ring, L.term(i + 1).size,
                                                                       M.term(i).size)],
                                                     M.ring, L.term(i + 1).size)
                                          for i in C.degrees})
        squares = (self.from_cone @ j).equals(self.proj) and (third @ self.to_cone).equals(self.connecting)
        iso = (self.from_cone @ self.to_cone).equals(identity_map(R)) and self.cone_homotopy.witnesses(
            identity_map(C), self.to_cone @ self.from_cone)
        return maps_ok and exact and squares and iso


def stupid_truncate(M: Complex, n: int = 0) -> WeightDecomposition:
    """Cut ``M`` between degrees ``n - 1`` and ``n``."""
    ring = M.ring
    L = _cut(M, n, M.max_degree if M.terms else n)
    R = _cut(M, M.min_degree if M.terms else n - 1, n - 1)
    incl = ChainMap(L, M, {i: M.term(i).idem for i in L.degrees})
    proj = ChainMap(M, R, {i: M.term(i).idem for i in R.degrees})
    L1 = shift(L, 1)
    dn = M.d(n - 1)
    connecting = ChainMap(R, L1, {n - 1: dn} if R.terms and L.terms else {})
    C = cone(incl)
    to_cone, from_cone, hom = {}, {}, {}
    for i in C.degrees:
        top = L.term(i + 1).size
        p = M.term(i).idem
        if i <= n - 1:
            upper = -dn if i == n - 1 else ExactMatrix.zero(ring, top, p.cols)
            to_cone[i] = vstack([upper, p], ring, p.cols)
            from_cone[i] = hstack([ExactMatrix.zero(ring, p.rows, top), p], ring, p.rows)
        else:
            # C^i = L^{i+1} (+) M^i -> C^{i-1} = L^i (+) M^{i-1}: (l, m) -> (m, 0)
            below = M.term(i - 1).size
            hom[i] = block_matrix([
                [ExactMatrix.zero(ring, p.rows, top), p],
                [ExactMatrix.zero(ring, below, top), ExactMatrix.zero(ring, below, p.cols)],
            ])
    return WeightDecomposition(
        n, M, L, R, incl, proj, connecting,
        ChainMap(R, C, {i: m for i, m in to_cone.items() if i in R.degrees}),
        ChainMap(C, R, {i: m for i, m in from_cone.items() if i in R.degrees}),
        Homotopy(C, C, hom),
    )
