"""Maps between split Grothendieck groups and the lattice test for the weak completion."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from ..addcat import CategorySpec, KarObject, WkarWitness, wkar_witness
from ..errors import CrossCheckFailure
from ..exactlin import ExactMatrix, ZZ, smith_int, solve
from ..sampling import random_unimodular
from .presentation import K0Presentation, k0_presentation


@dataclass
class K0Map:
    """``matrix[i][j]``: coordinate ``i`` in the target of the image of basis vector ``j`` of the source."""

    source: K0Presentation
    target: K0Presentation
    matrix: list

    @property
    def _smith_diag(self) -> list[int]:
        m, n = self.target.free_rank, self.source.free_rank
        if not m or not n:
            return []
        S, _, _ = smith_int([list(r) for r in self.matrix], m, n)
        return [S[i][i] for i in range(min(m, n)) if S[i][i]]

    @property
    def injective(self) -> bool:
        return len(self._smith_diag) == self.source.free_rank

    @property
    def surjective(self) -> bool:
        d = self._smith_diag
        return len(d) == self.target.free_rank and all(x == 1 for x in d)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def apply(self, coords) -> tuple[int, ...]:
        return tuple(sum(row[j] * coords[j] for j in range(len(coords))) for row in self.matrix)

    def sends_generators_correctly(self) -> bool:
        """Each source generator goes to the class of the same object in the target."""
        return all(self.apply(self.source.element(g)) == self.target.element(g) for g in self.source.generators)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": [list(r) for r in self.matrix],
            "injective": self.injective,
            "surjective": self.surjective,
            "bijective": self.bijective,
        }


def _require_torsion_free(p: K0Presentation):
    if p.torsion:
        raise ValueError(f"maps are computed between torsion-free groups; {p.spec.describe()} has torsion {p.torsion}")


def k0_induced_map(inner: CategorySpec, outer: CategorySpec, bound: int,
                   outer_bound: int | None = None) -> K0Map:
    """The map induced by the inclusion of ``inner`` into ``outer``."""
    src = k0_presentation(inner, bound)
    tgt = k0_presentation(outer, bound if outer_bound is None else outer_bound)
    _require_torsion_free(src)
    _require_torsion_free(tgt)
    missing = [g for g in src.generators if g not in tgt.index]
    if missing:
        raise ValueError(f"objects of multirank {missing[0]} of the inner spec are not in the outer one")
    cols = []
    for j in range(src.free_rank):
        unit = tuple(int(i == j) for i in range(src.free_rank))
        vec = src.lift(unit)
        outer_vec = [0] * len(tgt.generators)
        for g, c in zip(src.generators, vec):
            outer_vec[tgt.index[g]] += c
        cols.append(tgt.reduce(outer_vec))
    matrix = [[cols[j][i] for j in range(src.free_rank)] for i in range(tgt.free_rank)]
    k = K0Map(src, tgt, matrix)
    if not k.sends_generators_correctly():
        raise CrossCheckFailure("induced map does not send generators to their classes")
    return k


@dataclass
class K0Verdict:
    """Whether the class of ``obj`` lies in the image of the base group, with both certificates."""

    obj: KarObject
    class_coords: tuple
    in_image: bool
    coefficients: list | None
    witness: WkarWitness | None

    def to_json(self) -> dict:
        return {
            "object": self.obj.to_json(),
            "class": list(self.class_coords),
            "in_image": self.in_image,
            "coefficients": self.coefficients,
            "witness": None if self.witness is None else {"x": self.witness.x.size, "y": self.witness.y.size},
        }


def wkar_by_k0(Z: KarObject, spec: CategorySpec, bound: int, induced: K0Map | None = None) -> K0Verdict:
    """Decide membership in the weak completion by the image lattice, cross-checked by witness search."""
    k = induced if induced is not None else k0_induced_map(spec.base(), spec.kar(), bound)
    y = k.target.element(Z)
    coeffs = None
    if k.source.free_rank and k.target.free_rank:
        A = ExactMatrix(ZZ, k.target.free_rank, k.source.free_rank, k.matrix)
        b = ExactMatrix(ZZ, k.target.free_rank, 1, [[v] for v in y])
        x = solve(A, b)
        if x is not None:
            coeffs = [int(r[0]) for r in x.data]
    elif not any(y):
        coeffs = [0] * k.source.free_rank
    in_image = coeffs is not None
    w = wkar_witness(Z, spec.base())
    if (w is not None) != in_image:
        raise CrossCheckFailure(
            f"lattice test says {in_image} but witness search says {w is not None} for {Z!r}")
    return K0Verdict(Z, y, in_image, coeffs, w)


# -- enumeration of small Kar objects ----------------------------------------


def _field_idempotents(p: int, n: int) -> list[list[list[int]]]:
    """Every idempotent ``n x n`` matrix over F_p (only sensible for tiny ``n``)."""
    out = []
    for flat in product(range(p), repeat=n * n):
        m = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        sq = [[sum(m[i][t] * m[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
        if sq == m:
            out.append(m)
    return out


def small_kar_objects(ring, max_size: int, rng: random.Random, exhaustive_upto: int = 2,
                      conjugates: int = 3) -> list[KarObject]:
    """Kar objects of size ``<= max_size``.

    Every idempotent is listed for sizes up to ``exhaustive_upto`` (products of
    prime fields only); larger sizes get the standard idempotent of every
    multirank plus ``conjugates`` random conjugates of it.
    """
    objs = []
    k = ring.factor_count
    for n in range(max_size + 1):
        if n <= exhaustive_upto and ring.kind == "product":
            per = [_field_idempotents(f.modulus, n) for f in ring.factors]
            for combo in product(*per):
                data = [[tuple(combo[c][i][j] for c in range(k)) for j in range(n)] for i in range(n)]
                objs.append(KarObject(ring, n, ExactMatrix(ring, n, n, data)))
            continue
        for mr in product(range(n + 1), repeat=k):
            base = KarObject.standard(ring, mr, n)
            objs.append(base)
            for _ in range(conjugates if n else 0):
                g, gi = random_unimodular(ring, n, rng)
                objs.append(KarObject(ring, n, g @ base.idem @ gi))
    return objs


@dataclass
class CrossCheckReport:
    spec: CategorySpec
    checked: int
    in_wkar: int
    disagreements: list

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "checked": self.checked, "in_wkar": self.in_wkar,
                "disagreements": self.disagreements}


def wkar_k0_crosscheck(spec: CategorySpec, max_size: int = 4, seed: int = 0,
                       bound: int | None = None) -> CrossCheckReport:
    """Run :func:`wkar_by_k0` on every small Kar object; disagreements are collected, not raised."""
    rng = random.Random(seed)
    base = spec.base()
    b = max(bound if bound is not None else 0, max_size, base.max_generator + 1)
    induced = k0_induced_map(base, spec.kar(), b)
    objs = small_kar_objects(spec.ring, max_size, rng)
    objs = [Z for Z in objs if spec.kar().contains(Z)]
    bad, yes = [], 0
    for Z in objs:
        try:
            v = wkar_by_k0(Z, base, b, induced)
        except CrossCheckFailure as e:
            bad.append({"object": Z.to_json(), "error": str(e)})
            continue
        yes += v.in_image
    return CrossCheckReport(spec, len(objs), yes, bad)

