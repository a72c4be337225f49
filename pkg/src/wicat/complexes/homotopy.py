"""Homotopy problems as exact linear systems.

Every unknown is a matrix block; equations are sums of terms ``A X B``.
The system is assembled sparsely and handed to :func:`solve`, so the
answer is exact over every supported ring (over Z solvability is decided
by Smith form, not by rank).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..addcat import KarObject
from ..errors import CrossCheckFailure, UnsupportedRing
from ..exactlin import ExactMatrix, RingDescriptor, kernel, rank, rank_factor, rref, solve
from .core import ChainMap, Complex, Homotopy, identity_map


class _Layout:
    """Offsets of matrix blocks inside one flat coordinate vector."""

    def __init__(self):
        self.blocks: dict = {}
        self.size = 0

    def add(self, key, rows: int, cols: int):
        if rows and cols:
            self.blocks[key] = (self.size, rows, cols)
            self.size += rows * cols

    def flatten(self, ring: RingDescriptor, values: dict) -> list:
        out = [ring.zero] * self.size
        for key, (off, r, c) in self.blocks.items():
            m = values.get(key)
            if m is None:
                continue
            for i in range(r):
                row = m.data[i]
                for j in range(c):
                    out[off + i * c + j] = row[j]
        return out

    def unflatten(self, ring: RingDescriptor, vec) -> dict:
        out = {}
        for key, (off, r, c) in self.blocks.items():
            out[key] = ExactMatrix(ring, r, c, tuple(tuple(vec[off + i * c: off + (i + 1) * c]) for i in range(r)),
                                   _trusted=True)
        return out


def _system(ring: RingDescriptor, eqs: _Layout, unknowns: _Layout, terms) -> ExactMatrix:
    """Matrix of ``X -> sum A X B`` for ``terms = [(eq_key, var_key, A, B), ...]``."""
    acc: dict[int, dict[int, object]] = {}
    add, mul, iz = ring.add, ring.mul, ring.is_zero
    for ek, vk, A, B in terms:
        if ek not in eqs.blocks or vk not in unknowns.blocks:
            continue
        eo, er, ec = eqs.blocks[ek]
        vo, vr, vc = unknowns.blocks[vk]
        a_nz = [(r, s, A.data[r][s]) for r in range(er) for s in range(vr) if not iz(A.data[r][s])]
        b_nz = [(c, c2, B.data[c][c2]) for c in range(vc) for c2 in range(ec) if not iz(B.data[c][c2])]
        for r, s, x in a_nz:
            for c, c2, y in b_nz:
                row = acc.setdefault(eo + r * ec + c2, {})
                col = vo + s * vc + c
                v = mul(x, y)
                row[col] = add(row[col], v) if col in row else v
    z = ring.zero
    data = []
    for i in range(eqs.size):
        row = [z] * unknowns.size
        for j, v in acc.get(i, {}).items():
            row[j] = v
        data.append(tuple(row))
    return ExactMatrix(ring, eqs.size, unknowns.size, tuple(data), _trusted=True)


def _column(ring, vec) -> ExactMatrix:
    return ExactMatrix(ring, len(vec), 1, tuple((x,) for x in vec), _trusted=True)


def _degrees(*cxs: Complex) -> range:
    lows = [c.min_degree for c in cxs if c.terms]
    if not lows:
        return range(0)
    return range(min(lows) - 1, max(c.max_degree for c in cxs if c.terms) + 2)


def find_homotopy(source: Complex, target: Complex, rhs: dict) -> Homotopy | None:
    """Some ``h`` with ``d h + h d`` equal to the degreewise matrices ``rhs``."""
    ring = source.ring
    degs = _degrees(source, target)
    unknowns, eqs = _Layout(), _Layout()
    for i in degs:
        unknowns.add(i, target.term(i - 1).size, source.term(i).size)
        eqs.add(i, target.term(i).size, source.term(i).size)
    terms = []
    for i in degs:
        n_s, n_t = source.term(i).size, target.term(i).size
        terms.append((i, i, target.d(i - 1), ExactMatrix.identity(ring, n_s)))
        terms.append((i, i + 1, ExactMatrix.identity(ring, n_t), source.d(i)))
    if eqs.size == 0:
        return Homotopy(source, target, {})
    C = _system(ring, eqs, unknowns, terms)
    b = _column(ring, eqs.flatten(ring, rhs))
    x = solve(C, b)
    if x is None:
        return None
    raw = unknowns.unflatten(ring, [row[0] for row in x.data])
    comps = {i: target.term(i - 1).idem @ m @ source.term(i).idem for i, m in raw.items()}
    h = Homotopy(source, target, comps)
    want = ChainMap(source, target, {i: rhs[i] for i in rhs})
    if not h.boundary().equals(want):
        raise CrossCheckFailure("solved homotopy does not satisfy d h + h d = rhs")
    return h


def is_contractible(M: Complex) -> Homotopy | None:
    """A contracting homotopy (``d h + h d = id``), or ``None``."""
    return find_homotopy(M, M, dict(identity_map(M).comps))


def is_null_homotopic(f: ChainMap) -> Homotopy | None:
    return find_homotopy(f.source, f.target, dict(f.comps))


def are_homotopic(f: ChainMap, g: ChainMap) -> Homotopy | None:
    return is_null_homotopic(f - g)


# -- field computations ----------------------------------------------------


def freeify(M: Complex) -> tuple[Complex, ChainMap, ChainMap]:
    """Isomorphic complex with standard-idempotent terms.

    Over a field the new terms are free.  Returns ``(F, u: M -> F, v: F -> M)``.
    """
    ring = M.ring
    if not ring.is_field_like:
        raise UnsupportedRing(f"freeify needs field coefficients, not {ring}")
    if not M.terms:
        return M, identity_map(M), identity_map(M)
    a_s, b_s, objs = [], [], []
    for t in M.terms:
        if t.is_free:
            a_s.append(t.idem)
            b_s.append(t.idem)
            objs.append(t)
            continue
        a, b, r = rank_factor(t.idem)
        a_s.append(a)
        b_s.append(b)
        objs.append(KarObject.standard(ring, r if ring.kind == "product" else (r,), size=a.cols))
    diffs = tuple(b_s[k + 1] @ d @ a_s[k] for k, d in enumerate(M.diffs))
    F = Complex(M.spec, M.min_degree, tuple(objs), diffs)
    u = ChainMap(M, F, {M.min_degree + k: b for k, b in enumerate(b_s)})
    v = ChainMap(F, M, {M.min_degree + k: a for k, a in enumerate(a_s)})
    return F, u, v


def homology_ranks(M: Complex) -> dict:
    """``{degree: rank of H^i}`` computed from ranks of differentials.

    Independent of every homotopy routine; used as an oracle.  Over a
    product ring ranks are tuples.
    """
    ring = M.ring
    if not ring.is_field_like:
        raise UnsupportedRing(f"homology ranks need field coefficients, not {ring}")
    if ring.kind == "product":
        per = [homology_ranks(M.component(k)) for k in range(ring.factor_count)]
        return {i: tuple(p[i] for p in per) for i in M.degrees}
    F, _, _ = freeify(M)
    out = {}
    for i in F.degrees:
        n = F.term(i).size
        out[i] = n - rank(F.d(i)) - rank(F.d(i - 1))
    return out


def is_acyclic(M: Complex) -> bool:
    return all((h == 0 if isinstance(h, int) else not any(h)) for h in homology_ranks(M).values())


@dataclass
class HomModHomotopy:
    """``dimension`` is an int over a field and a tuple over a product ring."""

    dimension: object
    basis: list = field(default_factory=list)
    cycles_dimension: object = 0
    boundaries_dimension: object = 0


def hom_mod_homotopy(S: Complex, T: Complex) -> HomModHomotopy:
    """Chain maps ``S -> T`` modulo null-homotopic ones, with representatives."""
    ring = S.ring
    if not ring.is_field_like:
        raise UnsupportedRing(f"hom modulo homotopy needs field coefficients, not {ring}")
    if ring.kind != "product":
        dim, zdim, bdim, reps = _hom_field(S, T)
        return HomModHomotopy(dim, [ChainMap(S, T, r) for r in reps], zdim, bdim)
    dims, zdims, bdims, basis = [], [], [], []
    for k in range(ring.factor_count):
        dim, zdim, bdim, reps = _hom_field(S.component(k), T.component(k))
        dims.append(dim)
        zdims.append(zdim)
        bdims.append(bdim)
        for r in reps:
            comps = {}
            for i, m in r.items():
                parts = [m if j == k else ExactMatrix.zero(f, m.rows, m.cols) for j, f in enumerate(ring.factors)]
                comps[i] = ExactMatrix.from_components(ring, parts)
            basis.append(ChainMap(S, T, comps))
    return HomModHomotopy(tuple(dims), basis, tuple(zdims), tuple(bdims))


def _hom_field(S: Complex, T: Complex):
    ring = S.ring
    FS, uS, vS = freeify(S)
    FT, uT, vT = freeify(T)
    degs = _degrees(FS, FT)
    maps, homs, eqs = _Layout(), _Layout(), _Layout()
    for i in degs:
        maps.add(i, FT.term(i).size, FS.term(i).size)
        homs.add(i, FT.term(i - 1).size, FS.term(i).size)
        eqs.add(i, FT.term(i + 1).size, FS.term(i).size)
    if maps.size == 0:
        return 0, 0, 0, []
    # cycle condition: d_T f^i - f^{i+1} d_S = 0, landing in Hom(S^i, T^{i+1})
    cyc_terms = []
    for i in degs:
        cyc_terms.append((i, i, FT.d(i), ExactMatrix.identity(ring, FS.term(i).size)))
        cyc_terms.append((i, i + 1, -ExactMatrix.identity(ring, FT.term(i + 1).size), FS.d(i)))
    D = _system(ring, eqs, maps, cyc_terms) if eqs.size else ExactMatrix.zero(ring, 0, maps.size)
    Z = kernel(D)
    # boundaries: h -> d h + h d, landing in Hom(S^i, T^i)
    bd_terms = []
    for i in degs:
        bd_terms.append((i, i, FT.d(i - 1), ExactMatrix.identity(ring, FS.term(i).size)))
        bd_terms.append((i, i + 1, ExactMatrix.identity(ring, FT.term(i).size), FS.d(i)))
    Bm = _system(ring, maps, homs, bd_terms) if homs.size else ExactMatrix.zero(ring, maps.size, 0)
    bdim = rank(Bm)
    zdim = Z.cols
    joined = ExactMatrix(ring, maps.size, Bm.cols + Z.cols,
                         tuple(tuple(Bm.data[r]) + tuple(Z.data[r]) for r in range(maps.size)), _trusted=True)
    _, piv = rref(joined)
    reps = []
    for c in piv:
        if c < Bm.cols:
            continue
        col = [Z.data[r][c - Bm.cols] for r in range(maps.size)]
        free_map = maps.unflatten(ring, col)
        reps.append({i: vT[i] @ m @ uS[i] for i, m in free_map.items()})
    dim = zdim - bdim
    if len(reps) != dim:
        raise CrossCheckFailure("hom modulo homotopy: boundary image is not inside the cycles")
    return dim, zdim, bdim, reps
