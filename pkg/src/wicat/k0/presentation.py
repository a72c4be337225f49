"""Truncated presentations of split Grothendieck groups.

Isomorphism classes are keyed by multirank (by rank over a field or Z),
which is exact because every object is a sum of indecomposables in a
unique way.  Generators are the classes whose objects fit in the rank
bound; relations are ``[A (+) C] - [A] - [C]`` whenever all three do.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..addcat import CategorySpec, KarObject
from ..errors import UnstablePresentation
from ..exactlin import smith_int


def _largest_size(spec: CategorySpec, bound: int) -> int:
    sizes = spec.base().allowed_ranks(bound)
    return max(sizes) if sizes else 0


def iso_class_keys(spec: CategorySpec, bound: int) -> list[tuple[int, ...]]:
    """Multiranks of the objects of ``spec`` with size at most ``bound``."""
    k = spec.ring.factor_count
    if spec.layer == "base":
        return [(r,) * k for r in spec.allowed_ranks(bound)]
    top = _largest_size(spec, bound)
    # small classes first, (1, 0) before (0, 1), so coordinates read as multiranks
    keys = sorted(product(range(top + 1), repeat=k), key=lambda mr: (sum(mr), [-x for x in mr]))
    if spec.layer == "wkar":
        keys = [mr for mr in keys if spec.in_wkar_by_rank(mr)]
    return keys


def key_of(obj: KarObject) -> tuple[int, ...]:
    return tuple(obj.multirank)


def _invert_unimodular(V: list[list[int]]) -> list[list[int]]:
    """Inverse of an integer matrix of determinant +-1 by exact elimination."""
    n = len(V)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


@dataclass
class K0Presentation:
    """Generators, relations and the Smith form of the relation matrix.

    ``reduce`` sends an integer vector over the generators to canonical
    coordinates: ``free_rank`` integers followed by residues modulo the
    torsion invariants.
    """

    spec: CategorySpec
    bound: int
    generators: list
    relations: list
    free_rank: int
    torsion: list
    stable: bool | None = None
    _v: list = field(default_factory=list, repr=False)
    _diag: list = field(default_factory=list, repr=False)
    _w: list = field(default_factory=list, repr=False)

    @property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.generators)}

    def class_of(self, obj) -> list[int]:
        key = obj if isinstance(obj, tuple) else key_of(obj)
        idx = self.index
        if key not in idx:
            raise ValueError(f"object of multirank {key} is outside the presentation bound {self.bound}")
        vec = [0] * len(self.generators)
        vec[idx[key]] = 1
        return vec

    def reduce(self, vec) -> tuple[int, ...]:
        n = len(self.generators)
        y = [sum(vec[t] * self._v[t][j] for t in range(n)) for j in range(n)]
        tors = [(j, d) for j, d in enumerate(self._diag) if d > 1]
        raw = y[len(self._diag):]
        f = self.free_rank
        free = [sum(raw[t] * self._w[t][j] for t in range(f)) for j in range(f)]
        return tuple(free + [y[j] % d for j, d in tors])

    def element(self, obj) -> tuple[int, ...]:
        """Canonical coordinates of the class of ``obj`` (a KarObject or a multirank)."""
        return self.reduce(self.class_of(obj))

    def lift(self, coords) -> list[int]:
        """An integer vector over the generators whose reduction is ``coords`` (free part only)."""
        n = len(self.generators)
        r = len(self._diag)
        f = self.free_rank
        winv = _invert_unimodular(self._w)
        c = list(coords[:f])
        y = [0] * r + [sum(c[t] * winv[t][j] for t in range(f)) for j in range(f)]
        vinv = _invert_unimodular(self._v)
        return [sum(y[t] * vinv[t][j] for t in range(n)) for j in range(n)]

    def relations_vanish(self) -> bool:
        return all(not any(self.reduce(row)) for row in self.relations)

    @property
    def invariants(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "bound": self.bound,
            "invariants": self.invariants,
            "stable": self.stable,
            "generators": [list(g) for g in self.generators],
            "relation_count": len(self.relations),
        }


def _present(spec: CategorySpec, bound: int) -> K0Presentation:
    gens = iso_class_keys(spec, bound)
    idx = {g: i for i, g in enumerate(gens)}
    n = len(gens)
    rels = []
    for a in range(n):
        for c in range(a, n):
            s = tuple(x + y for x, y in zip(gens[a], gens[c]))
            if s not in idx:
                continue
            row = [0] * n
            row[idx[s]] += 1
            row[a] -= 1
            row[c] -= 1
            rels.append(row)
    m = len(rels)
    # the group is Z^n modulo the row space; U R V = S
    if m:
        S, _, V = smith_int([list(r) for r in rels], m, n)
    else:
        S, V = [], [[int(i == j) for j in range(n)] for i in range(n)]
    diag = []
    for i in range(min(m, n)):
        if S[i][i] == 0:
            break
        diag.append(S[i][i])
    torsion = [d for d in diag if d > 1]
    r = len(diag)
    G = [[V[i][j] for j in range(r, n)] for i in range(n)]
    W = _column_hermite(G, n - r)
    return K0Presentation(spec, bound, gens, rels, n - r, torsion, None, V, diag, W)


def _column_hermite(G: list[list[int]], f: int) -> list[list[int]]:
    """Unimodular ``W`` putting the generator images ``G`` in column Hermite form.

    Rows are scanned in generator order; each row that is independent of the
    earlier ones gets a positive pivot, and entries left of it are reduced
    modulo the pivot.  The result is canonical, so coordinates do not depend
    on the Smith transform that produced ``G``.
    """
    G = [list(row) for row in G]
    W = [[int(i == j) for j in range(f)] for i in range(f)]

    def add_col(dst, src, q):
        for M in (G, W):
            for row in M:
                row[dst] += q * row[src]

    def swap_cols(a, b):
        for M in (G, W):
            for row in M:
                row[a], row[b] = row[b], row[a]

    c = 0
    for row in G:
        if c == f:
            break
        while True:
            nz = [j for j in range(c, f) if row[j]]
            if not nz:
                break
            j = min(nz, key=lambda t: abs(row[t]))
            if len(nz) == 1:
                swap_cols(c, j)
                if row[c] < 0:
                    add_col(c, c, -2)
                for k in range(c):
                    add_col(k, c, -(row[k] // row[c]))
                c += 1
                break
            for t in nz:
                if t != j:
                    add_col(t, j, -(row[t] // row[j]))
    return W


def k0_presentation(spec: CategorySpec, bound: int, check_stability: bool = True) -> K0Presentation:
    """Presentation with ranks up to ``bound``; invariants are re-derived at ``bound + 1``."""
    p = _present(spec, bound)
    if check_stability:
        q = _present(spec, bound + 1)
        p.stable = q.invariants == p.invariants
        if not p.stable:
            raise UnstablePresentation(
                f"invariants change from {p.invariants} to {q.invariants} at bound {bound + 1}")
    return p
