"""Splitting contractible complexes into identity cones.

Peeling always starts at the lowest degree ``m``: the contracting homotopy
gives ``h^{m+1} d^m = id``, so ``d^m`` is a split mono and a complement of
it in ``M^{m+1}`` lets us write ``M = cone(id_{M^m})[-1-m] (+) M'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..addcat import CategorySpec, KarMorphism, KarObject
from ..errors import CertificateInvalid, NotContractible, SplitMonoNoComplement
from ..addcat.witness import complement_split_mono
from ..exactlin import ExactMatrix, block_diag
from .core import ChainMap, Complex, Homotopy, _degrees_of, direct_sum_complex, disk
from .homotopy import is_contractible


@dataclass
class Splitting:
    """``u: M -> S`` and ``v: S -> M`` are mutually inverse isomorphisms, ``S = (+) disks``."""

    summands: list
    source: Complex
    target: Complex
    u: ChainMap
    v: ChainMap
    ok: bool = field(default=True, init=False)

    def verify(self) -> bool:
        M, S = self.source, self.target
        expect = direct_sum_complex(*[disk(N, m, S.spec) for N, m in self.summands]) if self.summands \
            else Complex.zero(S.spec)
        same = [S.term(i) for i in S.degrees] == [expect.term(i) for i in S.degrees] and all(
            S.d(i) == expect.d(i) for i in S.degrees)
        deg = _degrees_of(M, S)
        return (
            same
            and self.u.is_chain_map()
            and self.v.is_chain_map()
            and all((self.v @ self.u)[i] == M.term(i).idem for i in deg)
            and all((self.u @ self.v)[i] == S.term(i).idem for i in deg)
        )


@dataclass
class FailureWitness:
    """The split mono ``d^degree`` has no complement among the allowed objects."""

    degree: int
    complement: KarObject
    reason: str
    mono: KarMorphism
    retraction: KarMorphism
    summands: list = field(default_factory=list)
    ok: bool = field(default=False, init=False)

    def verify(self) -> bool:
        """Re-check that the datum is a split mono whose ambient complement is ``complement``."""
        from ..addcat.witness import _ambient_complement

        if not (self.retraction @ self.mono).is_identity():
            return False
        Z, _, _ = _ambient_complement(self.mono, self.retraction)
        return Z.multirank == self.complement.multirank


def split_contractible(M: Complex, spec: CategorySpec | None = None,
                       homotopy: Homotopy | None = None) -> Splitting | FailureWitness:
    spec = M.spec if spec is None else spec
    if homotopy is None:
        homotopy = is_contractible(M)
        if homotopy is None:
            raise NotContractible("the complex admits no contracting homotopy")
    elif not homotopy.witnesses(ChainMap(M, M, {i: M.term(i).idem for i in M.degrees})):
        raise NotContractible("supplied homotopy is not contracting")
    ring = M.ring
    summands: list[tuple[KarObject, int]] = []
    acc: dict[int, list[KarObject]] = {}
    cur = M
    h = {i: homotopy[i] for i in M.degrees}
    U = {i: M.term(i).idem for i in M.degrees}
    V = dict(U)

    def acc_idem(i):
        objs = acc.get(i, [])
        return block_diag([o.idem for o in objs], ring) if objs else ExactMatrix.zero(ring, 0, 0)

    while cur.terms:
        m = cur.min_degree
        X = cur.terms[0]
        if X.size == 0 or X.idem.is_zero():
            # a zero object at the bottom: drop it
            a = acc_idem(m)
            U[m] = U[m].block(0, a.rows, 0, U[m].cols)
            V[m] = V[m].block(0, V[m].rows, 0, a.cols)
            cur = _drop_bottom(cur)
            continue
        Y = cur.term(m + 1)
        i = KarMorphism(X, Y, cur.d(m))
        r = KarMorphism(Y, X, h.get(m + 1, ExactMatrix.zero(ring, X.size, Y.size)))
        if not (r @ i).is_identity():
            raise NotContractible(f"homotopy does not split the differential in degree {m}")
        try:
            comp = complement_split_mono(i, r, spec)
        except SplitMonoNoComplement as exc:
            return FailureWitness(m, exc.complement, exc.reason, i, r, summands)
        Z = comp.complement
        iso, inv = comp.iso.matrix, comp.inverse.matrix
        iota = inv.block(0, Y.size, X.size, X.size + Z.size)
        pi = iso.block(X.size, X.size + Z.size, 0, Y.size)
        sign_idem = X.idem if (m + 1) % 2 == 0 else -X.idem

        # the rest of the complex, with Z in degree m + 1
        terms = (Z,) + cur.terms[2:]
        diffs = ((cur.d(m + 1) @ iota,) + cur.diffs[2:]) if len(cur.terms) > 2 else ()
        nxt = Complex(cur.spec, m + 1, terms, diffs)
        new_h = {}
        for j in nxt.degrees:
            left = pi if j - 1 == m + 1 else None
            right = iota if j == m + 1 else None
            hj = h.get(j)
            if hj is None or j - 1 < m + 1:
                continue
            if left is not None:
                hj = left @ hj
            if right is not None:
                hj = hj @ right
            new_h[j] = hj

        # update the running isomorphism M -> acc (+) cur
        for deg, w, wi in ((m, sign_idem, sign_idem), (m + 1, iso, inv)):
            a = acc_idem(deg)
            if deg in U:
                U[deg] = block_diag([a, w], ring) @ U[deg]
                V[deg] = V[deg] @ block_diag([a, wi], ring)
        acc.setdefault(m, []).append(X)
        acc.setdefault(m + 1, []).append(X)
        summands.append((X, m))
        cur, h = nxt, new_h
        if cur.terms and cur.terms[0].size == 0:
            cur = _drop_bottom(cur)

    S = direct_sum_complex(*[disk(N, m, spec) for N, m in summands]) if summands else Complex.zero(spec)
    S = S.with_spec(spec) if S.terms else Complex.zero(spec)
    u = ChainMap(M, S, {i: U[i] for i in M.degrees if i in U})
    v = ChainMap(S, M, {i: V[i] for i in M.degrees if i in V})
    out = Splitting(summands, M, S, u, v)
    if not out.verify():
        raise CertificateInvalid("assembled splitting isomorphism does not verify")
    return out


def _drop_bottom(cur: Complex) -> Complex:
    if len(cur.terms) <= 1:
        return Complex.zero(cur.spec)
    return Complex(cur.spec, cur.min_degree + 1, cur.terms[1:], cur.diffs[1:])


def dual_splitting(M: Complex, spec: CategorySpec | None = None) -> Splitting | FailureWitness:
    """Peel from the top instead: split the transposed complex."""
    from .core import transpose_dual

    return split_contractible(transpose_dual(M), spec)
