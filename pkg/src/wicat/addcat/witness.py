"""Isomorphisms, complements of split monos and weak-completion witnesses."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import (
    CrossCheckFailure,
    NotSplitMono,
    SplitMonoNoComplement,
    UnsupportedRing,
    WitnessInvalid,
)
from ..exactlin import ExactMatrix, block_diag, hstack, inverse, rank_factor, snf, vstack
from .objects import KarMorphism, KarObject, direct_sum, permutation, resize, sum_morphism
from .spec import CategorySpec


def free_factorization(obj: KarObject):
    """``(a, b)`` with ``a @ b == idem`` and ``b @ a`` the standard idempotent.

    Works over fields, products of fields and (via Smith form) the integers.
    """
    ring = obj.ring
    if ring.is_field_like:
        a, b, _ = rank_factor(obj.idem)
        return a, b
    if ring.kind == "Z":
        return integer_rank_factor(obj.idem)
    raise UnsupportedRing(f"cannot split idempotents over {ring}")


def integer_rank_factor(e: ExactMatrix):
    """Integer idempotent ``e = a @ b`` with ``b @ a`` the identity.

    The image of an integer idempotent is a direct summand, so all its
    invariant factors are 1 and the Smith transforms give the splitting.
    """
    S, U, V = snf(e)
    r = sum(1 for i in range(min(S.rows, S.cols)) if S[i, i] != 0)
    if any(S[i, i] != 1 for i in range(r)):
        raise ValueError("not an idempotent: invariant factor other than 1")
    Ui, Vi = inverse(U), inverse(V)
    a = Ui.block(0, e.rows, 0, r)
    b = Vi.block(0, r, 0, e.cols)
    return a, b


def is_isomorphic(A: KarObject, B: KarObject) -> tuple[KarMorphism, KarMorphism] | None:
    """Mutually inverse morphisms ``A -> B``, ``B -> A`` when ``A`` and ``B`` are isomorphic."""
    ring = A.ring
    if ring.kind == "Z" or (ring.kind == "Zmod" and not ring.is_field):
        if not (A.is_free and B.is_free):
            raise UnsupportedRing(f"isomorphism test for non-free objects over {ring}")
        if A.size != B.size:
            return None
        return A.identity, B.identity
    if A.multirank != B.multirank:
        return None
    aA, bA = free_factorization(A)
    aB, bB = free_factorization(B)
    there = KarMorphism(A, B, aB @ bA)
    back = KarMorphism(B, A, aA @ bB)
    return there, back


@dataclass(frozen=True)
class Complement:
    """``iso: target -> source (+) complement`` identifying ``i`` with the first injection."""

    complement: KarObject
    iso: KarMorphism
    inverse: KarMorphism

    def verify(self, i: KarMorphism) -> bool:
        X = i.source
        XZ = direct_sum(X, self.complement)
        inj = block_diag([X.idem, ExactMatrix.zero(X.ring, self.complement.size, 0)], X.ring)
        return (
            self.iso.target == XZ
            and (self.iso @ self.inverse).is_identity()
            and (self.inverse @ self.iso).is_identity()
            and self.iso.matrix @ i.matrix == inj
        )


def _ambient_complement(i: KarMorphism, p: KarMorphism):
    """Complement in the idempotent completion: ``(Z, iso, inverse)``."""
    X, Y = i.source, i.target
    ring = X.ring
    e = Y.idem - i.matrix @ p.matrix
    if ring.is_field_like:
        a, b, r = rank_factor(e)
        Z = KarObject.standard(ring, r, size=a.cols)
    elif ring.kind == "Z":
        a, b = integer_rank_factor(e)
        Z = KarObject.free(ring, a.cols)
    else:
        raise UnsupportedRing(f"complements over {ring} are not computed")
    iso = KarMorphism(Y, direct_sum(X, Z), vstack([p.matrix, b], ring, Y.size))
    inv = KarMorphism(direct_sum(X, Z), Y, hstack([i.matrix, a], ring, Y.size))
    return Z, iso, inv


def complement_split_mono(i: KarMorphism, p: KarMorphism, spec: CategorySpec) -> Complement:
    """Complement ``Z`` with ``target(i) = source(i) (+) Z`` inside ``spec``.

    Raises :class:`SplitMonoNoComplement` carrying the ambient complement when
    the complement exists only outside ``spec``.
    """
    if p.source != i.target or p.target != i.source:
        raise NotSplitMono("p must go back from the target of i to its source")
    if not (p @ i).is_identity():
        raise NotSplitMono("p o i is not the identity")
    Z, iso, inv = _ambient_complement(i, p)
    X = i.source
    if spec.layer == "base":
        c = Z.constant_rank
        if c is None:
            raise SplitMonoNoComplement(Z, f"complement has non-constant multirank {Z.multirank}", iso, inv)
        if not spec.allows_rank(c):
            raise SplitMonoNoComplement(Z, f"complement of rank {c} is not an allowed rank", iso, inv)
        return Complement(Z, iso, inv)
    if spec.layer == "wkar" and not spec.in_wkar_by_rank(Z.multirank):
        raise SplitMonoNoComplement(
            Z, f"complement of multirank {Z.multirank} is not in the weak idempotent completion", iso, inv)
    if spec.allows_rank(Z.size):
        return Complement(Z, iso, inv)
    target_size = spec.smallest_allowed_at_least(Z.size)
    if target_size is None:
        raise SplitMonoNoComplement(Z, "no allowed ambient rank large enough for the complement", iso, inv)
    Z2, there, back = resize(Z, target_size)
    fwd = sum_morphism([X.identity, there]) @ iso
    bwd = inv @ sum_morphism([X.identity, back])
    return Complement(Z2, fwd, bwd)


# -- weak completion witnesses -------------------------------------------------


@dataclass(frozen=True)
class WkarWitness:
    """``iso: x (+) obj -> y`` with ``x``, ``y`` objects of the base category."""

    obj: KarObject
    x: KarObject
    y: KarObject
    iso: KarMorphism
    inverse: KarMorphism
    search_bound: int | None = None

    def verify(self, spec: CategorySpec | None = None) -> bool:
        XZ = direct_sum(self.x, self.obj)
        ok = (
            self.iso.source == XZ
            and self.iso.target == self.y
            and self.inverse.source == self.y
            and self.inverse.target == XZ
            and (self.iso @ self.inverse).is_identity()
            and (self.inverse @ self.iso).is_identity()
            and self.x.is_free
            and self.y.is_free
        )
        if ok and spec is not None:
            base = spec.base()
            ok = base.contains(self.x) and base.contains(self.y)
        return ok


def default_search_bound(obj: KarObject, spec: CategorySpec) -> int:
    return max(obj.multirank, default=0) + spec.max_generator + 4


def _witness_from(obj: KarObject, a: int, spec: CategorySpec, bound) -> WkarWitness:
    ring = obj.ring
    c = obj.constant_rank
    fa, fb = free_factorization(obj)
    X = KarObject.free(ring, a)
    Y = KarObject.free(ring, a + c)
    iso = KarMorphism(direct_sum(X, obj), Y, block_diag([X.idem, fb], ring))
    inv = KarMorphism(Y, direct_sum(X, obj), block_diag([X.idem, fa], ring))
    w = WkarWitness(obj, X, Y, iso, inv, bound)
    if not w.verify(spec):
        raise CrossCheckFailure("constructed witness failed verification")
    return w


def wkar_witness(obj: KarObject, spec: CategorySpec, search_bound: int | None = None,
                 cross_check: bool = True) -> WkarWitness | None:
    """Base objects ``X``, ``Y`` with ``X (+) obj = Y``, searched up to ``search_bound``.

    ``None`` means no witness with ``rank X <= search_bound``; the bound is
    part of the answer, not a proof of absence.
    """
    bound = default_search_bound(obj, spec) if search_bound is None else search_bound
    found = None
    c = obj.constant_rank
    if c is not None:
        for a in spec.allowed_ranks(bound):
            if spec.allows_rank(a + c):
                found = a
                break
    if cross_check:
        oracle = wkar_witness_by_enumeration(obj, spec, bound)
        if (found is None) != (oracle is None):
            raise CrossCheckFailure(
                f"rank search says {found}, enumeration oracle says {oracle} for {obj!r}")
    if found is None:
        return None
    return _witness_from(obj, found, spec, bound)


def wkar_witness_by_enumeration(obj: KarObject, spec: CategorySpec, bound: int):
    """Generic oracle: try every pair of base objects with the isomorphism test."""
    ring = obj.ring
    base = spec.base()
    top = bound + max(obj.multirank, default=0)
    ys = [KarObject.free(ring, n) for n in base.allowed_ranks(top)]
    for a in base.allowed_ranks(bound):
        XZ = direct_sum(KarObject.free(ring, a), obj)
        for Y in ys:
            if is_isomorphic(XZ, Y) is not None:
                return a, Y.size
    return None


def _check(w: WkarWitness, what: str):
    if not w.verify():
        raise WitnessInvalid(f"{what} does not verify")


def combine_witnesses(wx: WkarWitness, wy: WkarWitness, obj: KarObject,
                      iso: KarMorphism, inv: KarMorphism) -> WkarWitness:
    """Witness for ``obj`` from witnesses of ``X``, ``Y`` and ``iso: X (+) obj -> Y``.

    With ``X1 (+) X = X2`` and ``Y1 (+) Y = Y2`` the result is
    ``(X2 (+) Y1) (+) obj = Y2 (+) X1`` built from explicit block isomorphisms.
    """
    _check(wx, "witness for X")
    _check(wy, "witness for Y")
    X, Y = wx.obj, wy.obj
    XZ = direct_sum(X, obj)
    if iso.source != XZ or iso.target != Y or inv.source != Y or inv.target != XZ:
        raise WitnessInvalid("iso does not go from X (+) Z to Y")
    if not ((iso @ inv).is_identity() and (inv @ iso).is_identity()):
        raise WitnessInvalid("iso and inverse are not mutually inverse")
    X1, X2, Y1, Y2 = wx.x, wx.y, wy.x, wy.y

    # X2 (+) Y1 (+) Z -> X1 (+) X (+) Y1 (+) Z
    s1 = sum_morphism([wx.inverse, Y1.identity, obj.identity])
    # X1, X, Y1, Z -> X, Z, Y1, X1
    s2 = permutation([X1, X, Y1, obj], [1, 3, 2, 0])
    # (X (+) Z) (+) Y1 (+) X1 -> Y (+) Y1 (+) X1
    s3 = sum_morphism([iso, Y1.identity, X1.identity])
    # Y, Y1, X1 -> Y1, Y, X1
    s4 = permutation([Y, Y1, X1], [1, 0, 2])
    s5 = sum_morphism([wy.iso, X1.identity])
    # regroup block structure: the composite starts at (X2 (+) Y1) (+) Z
    newX = direct_sum(X2, Y1)
    newY = direct_sum(Y2, X1)
    start = direct_sum(newX, obj)
    fwd_m = s5.matrix @ s4.matrix @ s3.matrix @ s2.matrix @ s1.matrix
    bwd_m = (
        sum_morphism([wx.iso, Y1.identity, obj.identity]).matrix
        @ permutation([X, obj, Y1, X1], [3, 0, 2, 1]).matrix
        @ sum_morphism([inv, Y1.identity, X1.identity]).matrix
        @ permutation([Y1, Y, X1], [1, 0, 2]).matrix
        @ sum_morphism([wy.inverse, X1.identity]).matrix
    )
    fwd = KarMorphism(start, newY, fwd_m)
    bwd = KarMorphism(newY, start, bwd_m)
    w = WkarWitness(obj, newX, newY, fwd, bwd)
    _check(w, "combined witness")
    return w
