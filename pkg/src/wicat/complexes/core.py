"""Bounded cochain complexes, chain maps, homotopies and equivalences.

Sign conventions (fixed once, used everywhere):

* ``M[k]^i = M^{i+k}`` with differential ``(-1)^k d``;
* ``cone(f)^i = M^{i+1} (+) N^i`` with differential ``[[-d_M, 0], [f, d_N]]``.

Terms are :class:`KarObject` values, so complexes over a base category and
over its idempotent completion share one representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Mapping

from ..addcat import CategorySpec, KarObject, direct_sum
from ..errors import CertificateInvalid, ShapeMismatch, SpecMismatch
from ..exactlin import ExactMatrix, RingDescriptor, block_diag, block_matrix

_LAYER_ORDER = {"base": 0, "wkar": 1, "kar": 2}


@lru_cache(maxsize=None)
def _empty(ring) -> KarObject:
    return KarObject.free(ring, 0)


def join_specs(a: CategorySpec, b: CategorySpec) -> CategorySpec:
    """The common ambient of two specs; they must share ring and allowed ranks."""
    if a.ring != b.ring or a.allowed != b.allowed:
        raise SpecMismatch(f"{a.describe()} vs {b.describe()}")
    return a if _LAYER_ORDER[a.layer] >= _LAYER_ORDER[b.layer] else b


def _is_zero_object(obj: KarObject) -> bool:
    return obj.size == 0 or obj.idem.is_zero()


@dataclass(frozen=True)
class Complex:
    """``terms[k]`` sits in degree ``min_degree + k``; ``diffs[k]: terms[k] -> terms[k+1]``."""

    spec: CategorySpec
    min_degree: int
    terms: tuple[KarObject, ...]
    diffs: tuple[ExactMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        n = len(self.terms)
        if len(self.diffs) != max(n - 1, 0):
            raise ShapeMismatch(f"{n} terms need {max(n - 1, 0)} differentials, got {len(self.diffs)}")
        for t in self.terms:
            if t.ring != self.spec.ring:
                raise SpecMismatch("term over a different ring")
        for k, d in enumerate(self.diffs):
            src, tgt = self.terms[k], self.terms[k + 1]
            if d.shape != (tgt.size, src.size):
                raise ShapeMismatch(f"differential {k} has shape {d.shape}, expected {(tgt.size, src.size)}")
            if not (tgt.idem @ d == d and d @ src.idem == d):
                raise ValueError(f"differential in degree {self.min_degree + k} is not a morphism of the completion")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise ValueError(f"d o d != 0 at degree {self.min_degree + k}")

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, spec: CategorySpec) -> "Complex":
        return cls(spec, 0, (), ())

    @classmethod
    def concentrated(cls, spec: CategorySpec, obj: KarObject, degree: int = 0) -> "Complex":
        return cls(spec, degree, (obj,), ())

    @classmethod
    def from_ranks(cls, spec: CategorySpec, min_degree: int, ranks, diffs) -> "Complex":
        terms = tuple(KarObject.free(spec.ring, r) for r in ranks)
        return cls(spec, min_degree, terms, tuple(diffs))

    # -- access ------------------------------------------------------------

    @property
    def ring(self) -> RingDescriptor:
        return self.spec.ring

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.min_degree, self.min_degree + len(self.terms))

    def term(self, i: int) -> KarObject:
        k = i - self.min_degree
        if 0 <= k < len(self.terms):
            return self.terms[k]
        return _empty(self.ring)

    def d(self, i: int) -> ExactMatrix:
        """Differential ``M^i -> M^{i+1}`` (a zero matrix outside the support)."""
        k = i - self.min_degree
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return ExactMatrix.zero(self.ring, self.term(i + 1).size, self.term(i).size)

    def ranks(self) -> list[int]:
        return [t.size for t in self.terms]

    def is_zero(self) -> bool:
        return all(_is_zero_object(t) for t in self.terms)

    def trim(self) -> "Complex":
        """Drop zero terms at both ends."""
        lo, hi = 0, len(self.terms)
        while lo < hi and _is_zero_object(self.terms[lo]):
            lo += 1
        while hi > lo and _is_zero_object(self.terms[hi - 1]):
            hi -= 1
        if lo == hi:
            return Complex.zero(self.spec)
        if (lo, hi) == (0, len(self.terms)):
            return self
        return Complex(self.spec, self.min_degree + lo, self.terms[lo:hi], self.diffs[lo:hi - 1])

    @property
    def essential_length(self) -> int:
        t = self.trim()
        return max(len(t.terms) - 1, 0)

    def support(self) -> tuple[int, int] | None:
        t = self.trim()
        if not t.terms:
            return None
        return t.min_degree, t.max_degree

    def with_spec(self, spec: CategorySpec) -> "Complex":
        return replace(self, spec=spec)

    def in_spec(self, spec: CategorySpec | None = None) -> bool:
        spec = self.spec if spec is None else spec
        return all(spec.contains(t) or _is_zero_object(t) and t.size == 0 for t in self.terms)

    def reindexed(self, lo: int, hi: int) -> "Complex":
        """Same complex listed over the degree window ``[lo, hi]`` (padding with zeros)."""
        if hi < lo:
            return Complex.zero(self.spec)
        terms = tuple(self.term(i) for i in range(lo, hi + 1))
        diffs = tuple(self.d(i) for i in range(lo, hi))
        return Complex(self.spec, lo, terms, diffs)

    def component(self, k: int) -> "Complex":
        """The complex over the ``k``-th field factor of a product ring."""
        f = self.ring.factors[k]
        spec = CategorySpec(f, self.spec.allowed, self.spec.layer)
        terms = tuple(KarObject(f, t.size, t.idem.component(k)) for t in self.terms)
        return Complex(spec, self.min_degree, terms, tuple(d.component(k) for d in self.diffs))

    def __repr__(self):
        return f"Complex({self.spec.ring}, degrees {self.min_degree}..{self.max_degree}, ranks {self.ranks()})"


# -- chain maps --------------------------------------------------------------


def _degrees_of(*cxs: Complex) -> range:
    lows = [c.min_degree for c in cxs if c.terms]
    highs = [c.max_degree for c in cxs if c.terms]
    if not lows:
        return range(0)
    return range(min(lows), max(highs) + 1)


@dataclass(frozen=True)
class ChainMap:
    source: Complex
    target: Complex
    comps: Mapping[int, ExactMatrix] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, m in dict(self.comps).items():
            s, t = self.source.term(i), self.target.term(i)
            if m.shape != (t.size, s.size):
                raise ShapeMismatch(f"component {i} has shape {m.shape}, expected {(t.size, s.size)}")
            if s.size and t.size:
                clean[i] = m
        object.__setattr__(self, "comps", clean)

    def __getitem__(self, i: int) -> ExactMatrix:
        m = self.comps.get(i)
        if m is None:
            return ExactMatrix.zero(self.source.ring, self.target.term(i).size, self.source.term(i).size)
        return m

    def degrees(self) -> range:
        return _degrees_of(self.source, self.target)

    def is_chain_map(self) -> bool:
        S, T = self.source, self.target
        for i in self.degrees():
            f = self[i]
            if not (T.term(i).idem @ f == f and f @ S.term(i).idem == f):
                return False
        for i in range(self.degrees().start - 1, self.degrees().stop):
            if T.d(i) @ self[i] != self[i + 1] @ S.d(i):
                return False
        return True

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.target.terms != self.source.terms or (
            other.target.terms and other.target.min_degree != self.source.min_degree
        ):
            if [other.target.term(i) for i in self.degrees()] != [self.source.term(i) for i in self.degrees()]:
                raise ShapeMismatch("composing chain maps with mismatched middle complex")
        degs = _degrees_of(other.source, self.target)
        return ChainMap(other.source, self.target, {i: self[i] @ other[i] for i in degs})

    def _combine(self, other: "ChainMap", op) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: op(self[i], other[i]) for i in self.degrees()})

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return ChainMap(self.source, self.target, {i: -m for i, m in self.comps.items()})

    def equals(self, other: "ChainMap") -> bool:
        return all(self[i] == other[i] for i in _degrees_of(self.source, self.target, other.source, other.target))

    def is_identity(self) -> bool:
        return all(self[i] == self.source.term(i).idem for i in self.degrees()) and all(
            self.source.term(i) == self.target.term(i) for i in self.degrees()
        )


def identity_map(M: Complex) -> ChainMap:
    return ChainMap(M, M, {i: M.term(i).idem for i in M.degrees})


def zero_map(M: Complex, N: Complex) -> ChainMap:
    return ChainMap(M, N, {})


# -- homotopies --------------------------------------------------------------


@dataclass(frozen=True)
class Homotopy:
    """Components ``h^i: M^i -> N^{i-1}`` with ``d h + h d = f - g``."""

    source: Complex
    target: Complex
    comps: Mapping[int, ExactMatrix] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, m in dict(self.comps).items():
            s, t = self.source.term(i), self.target.term(i - 1)
            if m.shape != (t.size, s.size):
                raise ShapeMismatch(f"homotopy component {i} has shape {m.shape}")
            if s.size and t.size:
                clean[i] = m
        object.__setattr__(self, "comps", clean)

    def __getitem__(self, i: int) -> ExactMatrix:
        m = self.comps.get(i)
        if m is None:
            return ExactMatrix.zero(self.source.ring, self.target.term(i - 1).size, self.source.term(i).size)
        return m

    def boundary(self) -> ChainMap:
        """The null-homotopic map ``d h + h d``."""
        S, T = self.source, self.target
        degs = _degrees_of(S, T)
        return ChainMap(S, T, {i: T.d(i - 1) @ self[i] + self[i + 1] @ S.d(i) for i in degs})

    def witnesses(self, f: ChainMap, g: ChainMap | None = None) -> bool:
        diff = f if g is None else f - g
        return self.boundary().equals(diff)

    def __add__(self, other: "Homotopy") -> "Homotopy":
        degs = _degrees_of(self.source, self.target)
        return Homotopy(self.source, self.target, {i: self[i] + other[i] for i in degs})

    def pre(self, f: ChainMap) -> "Homotopy":
        """``h o f``"""
        return Homotopy(f.source, self.target, {i: self[i] @ f[i] for i in _degrees_of(f.source, self.target)})

    def post(self, g: ChainMap) -> "Homotopy":
        """``g o h``"""
        return Homotopy(self.source, g.target, {i: g[i - 1] @ self[i] for i in _degrees_of(self.source, g.target)})


def zero_homotopy(M: Complex, N: Complex) -> Homotopy:
    return Homotopy(M, N, {})


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Homotopy equivalence ``u: M -> N``, ``v: N -> M``.

    ``h_source`` witnesses ``id_M - v u = d h + h d`` and ``h_target``
    witnesses ``id_N - u v``.
    """

    u: ChainMap
    v: ChainMap
    h_source: Homotopy
    h_target: Homotopy

    @property
    def source(self) -> Complex:
        return self.u.source

    @property
    def target(self) -> Complex:
        return self.u.target

    def verify(self) -> bool:
        M, N = self.source, self.target
        return (
            self.u.is_chain_map()
            and self.v.is_chain_map()
            and self.h_source.witnesses(identity_map(M), self.v @ self.u)
            and self.h_target.witnesses(identity_map(N), self.u @ self.v)
        )

    def check(self) -> "EquivalenceCertificate":
        if not self.verify():
            raise CertificateInvalid("equivalence certificate does not verify")
        return self

    def inverse(self) -> "EquivalenceCertificate":
        return EquivalenceCertificate(self.v, self.u, self.h_target, self.h_source)

    def then(self, other: "EquivalenceCertificate") -> "EquivalenceCertificate":
        """Compose ``M -> N`` (self) with ``N -> P`` (other)."""
        u = other.u @ self.u
        v = self.v @ other.v
        # id_M - v1 v2 u2 u1 = (id - v1 u1) + v1 (id - v2 u2) u1
        hs = self.h_source + other.h_source.pre(self.u).post(self.v)
        ht = other.h_target + self.h_target.pre(other.v).post(other.u)
        return EquivalenceCertificate(u, v, hs, ht)

    @classmethod
    def from_iso(cls, u: ChainMap, v: ChainMap) -> "EquivalenceCertificate":
        return cls(u, v, zero_homotopy(u.source, u.source), zero_homotopy(u.target, u.target))

    @classmethod
    def identity(cls, M: Complex) -> "EquivalenceCertificate":
        return cls.from_iso(identity_map(M), identity_map(M))


# -- constructions -----------------------------------------------------------


def shift(M: Complex, k: int) -> Complex:
    """``M[k]^i = M^{i+k}``, differential multiplied by ``(-1)^k``."""
    if not M.terms:
        return M
    sign = -1 if k % 2 else 1
    diffs = tuple(d if sign == 1 else -d for d in M.diffs)
    return Complex(M.spec, M.min_degree - k, M.terms, diffs)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    """``f[k]`` has components ``f^{i+k}`` (no sign)."""
    return ChainMap(shift(f.source, k), shift(f.target, k), {i - k: m for i, m in f.comps.items()})


def direct_sum_complex(*cxs: Complex) -> Complex:
    spec = cxs[0].spec
    for c in cxs[1:]:
        spec = join_specs(spec, c.spec)
    degs = _degrees_of(*cxs)
    if not degs:
        return Complex.zero(spec)
    ring = spec.ring
    terms = tuple(direct_sum(*[c.term(i) for c in cxs], ring=ring) for i in degs)
    diffs = tuple(block_diag([c.d(i) for c in cxs], ring) for i in degs[:-1])
    return Complex(spec, degs.start, terms, diffs)


def sum_maps(*maps: ChainMap) -> ChainMap:
    src = direct_sum_complex(*[f.source for f in maps])
    tgt = direct_sum_complex(*[f.target for f in maps])
    ring = src.ring
    return ChainMap(src, tgt, {i: block_diag([f[i] for f in maps], ring) for i in _degrees_of(src, tgt)})


def sum_homotopies(*hs: Homotopy) -> Homotopy:
    src = direct_sum_complex(*[h.source for h in hs])
    tgt = direct_sum_complex(*[h.target for h in hs])
    ring = src.ring
    return Homotopy(src, tgt, {i: block_diag([h[i] for h in hs], ring) for i in _degrees_of(src, tgt)})


def cone(f: ChainMap) -> Complex:
    """``cone(f)^i = M^{i+1} (+) N^i`` with differential ``[[-d_M, 0], [f, d_N]]``."""
    M, N = f.source, f.target
    spec = join_specs(M.spec, N.spec)
    degs = _degrees_of(shift(M, 1), N)
    if not degs:
        return Complex.zero(spec)
    ring = spec.ring
    terms = tuple(direct_sum(M.term(i + 1), N.term(i), ring=ring) for i in degs)
    diffs = []
    for i in degs[:-1]:
        diffs.append(block_matrix([
            [-M.d(i + 1), ExactMatrix.zero(ring, M.term(i + 2).size, N.term(i).size)],
            [f[i + 1], N.d(i)],
        ]))
    return Complex(spec, degs.start, terms, tuple(diffs))


def disk(obj: KarObject, m: int, spec: CategorySpec) -> Complex:
    """``cone(id_obj)[-1-m]``: ``obj`` in degrees ``m`` and ``m + 1``."""
    base = Complex.concentrated(spec, obj, 0)
    return shift(cone(identity_map(base)), -1 - m)


def elementary(obj: KarObject, m: int, spec: CategorySpec) -> Complex:
    """``[obj --id--> obj]`` in degrees ``m``, ``m + 1`` (isomorphic to ``disk``)."""
    return Complex(spec, m, (obj, obj), (obj.idem,))


def transpose_dual(M: Complex) -> Complex:
    """Transpose every matrix and reverse degrees (the opposite category)."""
    if not M.terms:
        return M
    terms = tuple(KarObject(t.ring, t.size, t.idem.transpose()) for t in reversed(M.terms))
    diffs = tuple(d.transpose() for d in reversed(M.diffs))
    return Complex(M.spec, -M.max_degree, terms, diffs)


def transpose_homotopy(h: Homotopy) -> Homotopy:
    """Dual of a homotopy on ``M``: components ``(h^{1-i})^T``."""
    D = transpose_dual(h.source)
    E = transpose_dual(h.target)
    return Homotopy(E, D, {1 - i: m.transpose() for i, m in h.comps.items()})


def shift_homotopy(h: Homotopy, k: int) -> Homotopy:
    """``h[k]`` has components ``(-1)^k h^{i+k}`` so it stays compatible with shifted differentials."""
    sign = -1 if k % 2 else 1
    return Homotopy(shift(h.source, k), shift(h.target, k),
                    {i - k: (m if sign == 1 else -m) for i, m in h.comps.items()})


def shift_certificate(c: EquivalenceCertificate, k: int) -> EquivalenceCertificate:
    return EquivalenceCertificate(shift_map(c.u, k), shift_map(c.v, k),
                                  shift_homotopy(c.h_source, k), shift_homotopy(c.h_target, k))


def same_complex(a: Complex, b: Complex) -> bool:
    """Equal as complexes after trimming zero-size ends (specs ignored)."""
    degs = _degrees_of(a, b)
    return all(a.term(i) == b.term(i) for i in degs) and all(a.d(i) == b.d(i) for i in degs)
