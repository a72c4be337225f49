"""Objects and morphisms of the Karoubi envelope of a matrix category.

An object is a pair ``(n, p)``: a free module of rank ``n`` together with an
idempotent ``p``.  The free object of rank ``n`` is ``(n, id)``.  Morphisms
``(n, p) -> (m, q)`` are ``m x n`` matrices ``f`` with ``q f = f = f p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..errors import NotIdempotent, RingMismatch, ShapeMismatch, UnsupportedRing
from ..exactlin import ExactMatrix, RingDescriptor, block_diag, rank, standard_idempotent


@dataclass(frozen=True)
class KarObject:
    ring: RingDescriptor
    size: int
    idem: ExactMatrix

    def __post_init__(self):
        if self.idem.shape != (self.size, self.size):
            raise ShapeMismatch(f"idempotent must be {self.size}x{self.size}")
        if self.idem.ring != self.ring:
            raise RingMismatch("idempotent over a different ring")
        if not self.idem.is_identity() and self.idem @ self.idem != self.idem:
            raise NotIdempotent("p @ p != p")

    @classmethod
    def free(cls, ring: RingDescriptor, n: int) -> "KarObject":
        return cls(ring, n, ExactMatrix.identity(ring, n))

    @classmethod
    def standard(cls, ring: RingDescriptor, multirank, size: int | None = None) -> "KarObject":
        """Diagonal representative of a multirank class."""
        mr = (multirank,) if isinstance(multirank, int) else tuple(multirank)
        if size is None:
            size = max(mr) if mr else 0
        if mr and len(set(mr)) == 1 and mr[0] == size:
            return cls.free(ring, size)
        return cls(ring, size, standard_idempotent(ring, size, mr))

    @cached_property
    def is_free(self) -> bool:
        return self.idem.is_identity()

    @cached_property
    def multirank(self) -> tuple[int, ...]:
        """Rank of the image per field factor (free objects also over Z)."""
        if self.is_free:
            return (self.size,) * self.ring.factor_count
        if not self.ring.is_field_like:
            if self.ring.kind == "Z":
                return (rank(self.idem),)
            raise UnsupportedRing(f"multirank of a non-free object over {self.ring}")
        r = rank(self.idem)
        return r if isinstance(r, tuple) else (r,)

    @property
    def constant_rank(self) -> int | None:
        mr = self.multirank
        return mr[0] if len(set(mr)) == 1 else None

    @property
    def identity(self) -> "KarMorphism":
        return KarMorphism(self, self, self.idem)

    def to_json(self) -> dict:
        return {
            "rank": [self.size] * self.ring.factor_count,
            "idem": self.idem.to_json(),
        }

    @classmethod
    def from_json(cls, ring: RingDescriptor, doc) -> "KarObject":
        if isinstance(doc, int):
            return cls.free(ring, doc)
        size = doc["rank"]
        if isinstance(size, list):
            if len(set(size)) != 1:
                raise ValueError("base rank vector of a Kar object must be constant")
            size = size[0]
        size = int(size)
        if doc.get("idem") is None:
            return cls.free(ring, size)
        return cls(ring, size, ExactMatrix.from_json(ring, doc["idem"]))

    def __repr__(self):
        if self.is_free:
            return f"KarObject({self.ring}, free {self.size})"
        return f"KarObject({self.ring}, size {self.size}, multirank {self.multirank})"


@dataclass(frozen=True)
class KarMorphism:
    source: KarObject
    target: KarObject
    matrix: ExactMatrix

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.target.size, self.source.size):
            raise ShapeMismatch(
                f"morphism matrix {m.shape} does not match {self.target.size}x{self.source.size}"
            )
        if not (self.target.idem @ m == m and m @ self.source.idem == m):
            raise ValueError("matrix does not satisfy p' f = f = f p")

    @classmethod
    def cut(cls, source: KarObject, target: KarObject, m: ExactMatrix) -> "KarMorphism":
        """The morphism ``q m p``: project an arbitrary matrix into the hom-set."""
        return cls(source, target, target.idem @ m @ source.idem)

    def __matmul__(self, other: "KarMorphism") -> "KarMorphism":
        if other.target != self.source:
            raise ShapeMismatch("composition of non-composable morphisms")
        return KarMorphism(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "KarMorphism") -> "KarMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise ShapeMismatch("sum of morphisms with different endpoints")
        return KarMorphism(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self):
        return KarMorphism(self.source, self.target, -self.matrix)

    def __sub__(self, other):
        return self + (-other)

    def is_identity(self) -> bool:
        return self.source == self.target and self.matrix == self.source.idem


def zero_morphism(source: KarObject, target: KarObject) -> KarMorphism:
    return KarMorphism(source, target, ExactMatrix.zero(source.ring, target.size, source.size))


def zero_object(ring: RingDescriptor) -> KarObject:
    return KarObject.free(ring, 0)


def direct_sum(*objs: KarObject, ring: RingDescriptor | None = None) -> KarObject:
    if not objs:
        return zero_object(ring)
    ring = objs[0].ring
    for o in objs:
        if o.ring != ring:
            raise RingMismatch("direct sum over different rings")
    return KarObject(ring, sum(o.size for o in objs), block_diag([o.idem for o in objs], ring))


def _offsets(objs: Sequence[KarObject]) -> list[int]:
    out, acc = [], 0
    for o in objs:
        out.append(acc)
        acc += o.size
    return out


def injection(objs: Sequence[KarObject], k: int) -> KarMorphism:
    """Canonical morphism ``objs[k] -> direct_sum(objs)``."""
    total = direct_sum(*objs, ring=objs[0].ring)
    off = _offsets(objs)[k]
    obj = objs[k]
    ring = obj.ring
    rows = [[ring.zero] * obj.size for _ in range(total.size)]
    for i in range(obj.size):
        for j in range(obj.size):
            rows[off + i][j] = obj.idem[i, j]
    return KarMorphism(obj, total, ExactMatrix(ring, total.size, obj.size, rows))


def projection(objs: Sequence[KarObject], k: int) -> KarMorphism:
    """Canonical morphism ``direct_sum(objs) -> objs[k]``."""
    inj = injection(objs, k)
    return KarMorphism(inj.target, inj.source, inj.matrix.transpose())


def sum_morphism(maps: Sequence[KarMorphism]) -> KarMorphism:
    """Block-diagonal direct sum of morphisms."""
    ring = maps[0].matrix.ring
    return KarMorphism(
        direct_sum(*[f.source for f in maps]),
        direct_sum(*[f.target for f in maps]),
        block_diag([f.matrix for f in maps], ring),
    )


def permutation(objs: Sequence[KarObject], order: Sequence[int]) -> KarMorphism:
    """Isomorphism ``(+) objs -> (+) objs[order]`` moving summands around."""
    if sorted(order) != list(range(len(objs))):
        raise ValueError("order must be a permutation")
    ring = objs[0].ring
    src = direct_sum(*objs)
    new = [objs[k] for k in order]
    tgt = direct_sum(*new)
    so, to = _offsets(objs), _offsets(new)
    rows = [[ring.zero] * src.size for _ in range(tgt.size)]
    for pos, k in enumerate(order):
        o = objs[k]
        for i in range(o.size):
            for j in range(o.size):
                rows[to[pos] + i][so[k] + j] = o.idem[i, j]
    return KarMorphism(src, tgt, ExactMatrix(ring, tgt.size, src.size, rows))


def resize(obj: KarObject, n: int) -> tuple[KarObject, KarMorphism, KarMorphism]:
    """Re-embed ``obj`` in a free module of rank ``n`` (zero-padded idempotent).

    Returns ``(obj', there, back)`` with mutually inverse isomorphisms.
    """
    if n < obj.size:
        if obj.idem.block(n, obj.size, 0, obj.size).is_zero() and obj.idem.block(0, obj.size, n, obj.size).is_zero():
            new = KarObject(obj.ring, n, obj.idem.block(0, n, 0, n))
        else:
            raise ShapeMismatch("cannot shrink an object whose idempotent uses the dropped rows")
    else:
        new = KarObject(obj.ring, n, block_diag([obj.idem, ExactMatrix.zero(obj.ring, n - obj.size, n - obj.size)], obj.ring))
    emb = ExactMatrix.identity(obj.ring, max(n, obj.size)).block(0, n, 0, obj.size)
    there = KarMorphism.cut(obj, new, emb)
    back = KarMorphism.cut(new, obj, emb.transpose())
    return new, there, back
