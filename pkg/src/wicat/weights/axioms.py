"""Sampled, certificate-backed checks of the weight structure axioms and connectivity."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..addcat import CategorySpec, KarObject
from ..complexes import (
    ChainMap,
    Complex,
    Homotopy,
    cone,
    direct_sum_complex,
    disk,
    hom_mod_homotopy,
    minimal_model,
    shift,
)
from ..complexes.generate import conjugate
from ..exactlin import ExactMatrix
from ..sampling import random_matrix
from .membership import _certify_level0, weight_membership, WeightClassQuery
from .truncation import required_range, stupid_truncate, support_within


@dataclass
class AxiomEntry:
    axiom: str
    status: str
    checks: int
    counterexample: object = None

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "status": self.status, "checks": self.checks,
                "counterexample": self.counterexample}


@dataclass
class AxiomReport:
    entries: list = field(default_factory=list)
    triangles: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def entry(self, axiom: str) -> AxiomEntry:
        return next(e for e in self.entries if e.axiom == axiom)

    def to_json(self) -> dict:
        return {"passed": self.passed, "axioms": [e.to_json() for e in self.entries],
                "extension_triangles": dict(self.triangles)}


class _Members:
    """Cached minimal models and level-0 certificates of the samples."""

    def __init__(self, spec: CategorySpec):
        self.spec = spec
        self._cache: dict = {}

    def cert(self, M: Complex, side: str):
        key = (id(M), side)
        if key not in self._cache:
            mkey = (id(M), "model")
            if mkey not in self._cache:
                self._cache[mkey] = (M, minimal_model(M))
            model = self._cache[mkey][1]
            if side == "w=":
                c = weight_membership(WeightClassQuery("w=", 0, M), self.spec)
            else:
                c = _certify_level0(M, side, self.spec, model)
            self._cache[key] = (M, c)
        return self._cache[key][1]

    def model(self, M: Complex):
        self.cert(M, "w<=")
        return self._cache[(id(M), "model")][1]


def _retract_pair(A: Complex, B: Complex):
    S = direct_sum_complex(A, B)
    ring = S.ring
    inc, pr = {}, {}
    for i in S.degrees:
        a, b = A.term(i), B.term(i)
        inc[i] = ExactMatrix.identity(ring, S.term(i).size).block(0, S.term(i).size, 0, a.size) @ a.idem
        pr[i] = a.idem @ ExactMatrix.identity(ring, S.term(i).size).block(0, a.size, 0, S.term(i).size)
    return S, ChainMap(A, S, inc), ChainMap(S, A, pr)


def _label(M: Complex) -> dict:
    return {"min_degree": M.min_degree, "ranks": M.ranks()}


def random_chain_map(S: Complex, T: Complex, rng: random.Random) -> ChainMap:
    """Random combination of homotopy classes plus a random null-homotopic map."""
    ring = S.ring
    hom = hom_mod_homotopy(S, T)
    degs = range(min(S.degrees.start, T.degrees.start) - 1, max(S.degrees.stop, T.degrees.stop) + 1) \
        if S.terms and T.terms else range(0)
    f = ChainMap(S, T, {})
    for rep in hom.basis:
        c = rng.choice((-1, 0, 1, 2))
        if c:
            f = f + ChainMap(S, T, {i: m.scale(ring.coerce(c)) for i, m in rep.comps.items()})
    h = Homotopy(S, T, {i: T.term(i - 1).idem @ random_matrix(ring, T.term(i - 1).size, S.term(i).size, rng, 1)
                        @ S.term(i).idem for i in degs})
    return f + h.boundary()


def verify_axioms(spec: CategorySpec, sample: list, retract_data: list | None = None,
                  triangles: int = 50, seed: int = 0, full_pairs: int = 10) -> AxiomReport:
    """Check axioms (i)-(iv) on ``sample`` plus extension-closedness on random triangles."""
    rng = random.Random(seed)
    mem = _Members(spec)
    report = AxiomReport()
    sample = [M for M in sample]

    # (i) retraction closure: A is a retract of A (+) B
    checks, bad = 0, None
    pairs = retract_data
    if pairs is None:
        pairs = []
        for k in range(0, len(sample) - 1, 2):
            S, i, p = _retract_pair(sample[k], sample[k + 1])
            pairs.append((S, sample[k], i, p))
    for S, A, i, p in pairs:
        if not ((p @ i).equals(ChainMap(A, A, {d: A.term(d).idem for d in A.degrees}))
                and i.is_chain_map() and p.is_chain_map()):
            bad = bad or {"reason": "retraction data does not verify", "retract": _label(A)}
            continue
        for side in ("w<=", "w>="):
            checks += 1
            if mem.cert(S, side) is not None and mem.cert(A, side) is None:
                bad = bad or {"side": side, "sum": _label(S), "retract": _label(A)}
    report.entries.append(AxiomEntry("i", "pass" if bad is None else "fail", checks, bad))

    # (ii) M in C_{w<=0} gives M[-1] in C_{w<=0}; M in C_{w>=0} gives M[1] in C_{w>=0}
    checks, bad = 0, None
    for M in sample:
        for side, k in (("w<=", -1), ("w>=", 1)):
            if mem.cert(M, side) is None:
                continue
            checks += 1
            N = shift(M, k)
            c = mem.cert(N, side)
            if c is None or not c.verify(N, spec):
                bad = bad or {"side": side, "complex": _label(M), "shift": k}
    report.entries.append(AxiomEntry("ii", "pass" if bad is None else "fail", checks, bad))

    # (iii) C_{w<=0} is orthogonal to C_{w>=0}[1]
    checks, bad = 0, None
    le = [M for M in sample if mem.cert(M, "w<=") is not None]
    ge = [M for M in sample if mem.cert(M, "w>=") is not None]
    full_done = 0
    for X in le:
        HX = mem.model(X)[0]
        repX = mem.cert(X, "w<=").representative
        for Y in ge:
            checks += 1
            repY1 = shift(mem.cert(Y, "w>=").representative, 1)
            sx, sy = repX.support(), repY1.support()
            disjoint = sx is None or sy is None or sy[1] < sx[0]
            dim = hom_mod_homotopy(HX, shift(mem.model(Y)[0], 1)).dimension
            ok = disjoint and _is_zero_dim(dim)
            if ok and full_done < full_pairs:
                full_done += 1
                ok = _is_zero_dim(hom_mod_homotopy(X, shift(Y, 1)).dimension)
            if not ok:
                bad = bad or {"X": _label(X), "Y": _label(Y), "dimension": str(dim)}
    report.entries.append(AxiomEntry("iii", "pass" if bad is None else "fail", checks, bad))

    # (iv) weight decompositions by stupid truncation
    checks, bad = 0, None
    for M in sample:
        checks += 1
        w = stupid_truncate(M, 0)
        lo, _ = required_range("w<=", 0)
        _, hi = required_range("w>=", 1)
        if not (w.verify() and support_within(w.L, lo, float("inf")) and support_within(w.R, float("-inf"), hi)):
            bad = bad or {"complex": _label(M)}
    report.entries.append(AxiomEntry("iv", "pass" if bad is None else "fail", checks, bad))

    # extension closedness: A -> cone(f) -> B with f: B[-1] -> A
    checks, bad = 0, None
    for side in ("w<=", "w>=", "w="):
        pool = [M for M in sample if mem.cert(M, side) is not None]
        pool += [_truncated_member(M, side) for M in sample[: max(4, triangles // 5)]]
        pool = [M for M in pool if M.terms]
        done = 0
        while pool and done < triangles:
            A, B = rng.choice(pool), rng.choice(pool)
            f = random_chain_map(shift(B, -1), A, rng)
            C = cone(f)
            done += 1
            checks += 1
            c = mem.cert(C, side)
            if c is None or not c.verify(C, spec):
                bad = bad or {"side": side, "A": _label(A), "B": _label(B)}
        report.triangles[side] = done
    report.entries.append(AxiomEntry("extension", "pass" if bad is None else "fail", checks, bad))
    return report


def _truncated_member(M: Complex, side: str) -> Complex:
    if side == "w<=":
        return stupid_truncate(M, 0).L
    if side == "w>=":
        return stupid_truncate(M, 1).R
    return stupid_truncate(stupid_truncate(M, 0).L, 1).R


def _is_zero_dim(dim) -> bool:
    return dim == 0 if isinstance(dim, int) else not any(dim)


@dataclass
class ConnectivityVerdict:
    connective: bool
    degree_bound: int
    checks: int
    fattened_checks: int
    full_faithful: bool
    failure: object = None

    def to_json(self) -> dict:
        return {"connective": self.connective, "degree_bound": self.degree_bound, "checks": self.checks,
                "fattened_checks": self.fattened_checks, "full_faithful": self.full_faithful,
                "failure": self.failure}


def _fatten(X: Complex, spec: CategorySpec, rng: random.Random, degrees: range) -> Complex:
    ranks = [r for r in spec.allowed_ranks(3) if r > 0]
    extra = [disk(KarObject.free(spec.ring, rng.choice(ranks)), rng.choice(degrees), spec.base())
             for _ in range(2)]
    return conjugate(direct_sum_complex(X, *extra).with_spec(X.spec), rng)


def is_connective(spec: CategorySpec, degree_bound: int = 3, seed: int = 0, max_rank: int = 3) -> ConnectivityVerdict:
    """Spec objects in degree 0 have no maps to positive shifts of each other up to homotopy."""
    rng = random.Random(seed)
    base = spec.base()
    ranks = [r for r in base.allowed_ranks(max_rank) if r > 0]
    checks = fat = 0
    full = True
    for a in ranks:
        for b in ranks:
            X = Complex.concentrated(base, KarObject.free(spec.ring, a), 0)
            Y = Complex.concentrated(base, KarObject.free(spec.ring, b), 0)
            d0 = hom_mod_homotopy(X, Y).dimension
            want = a * b if spec.ring.factor_count == 1 else (a * b,) * spec.ring.factor_count
            full = full and d0 == want
            for i in range(1, degree_bound + 1):
                checks += 1
                dim = hom_mod_homotopy(X, shift(Y, i)).dimension
                if not _is_zero_dim(dim):
                    return ConnectivityVerdict(False, degree_bound, checks, fat, full,
                                               {"X": a, "Y": b, "shift": i, "dimension": str(dim)})
                Xf = _fatten(X, spec, rng, range(-i - 1, 1))
                Yf = _fatten(Y, spec, rng, range(-1, 1))
                fat += 1
                dim = hom_mod_homotopy(Xf, shift(Yf, i)).dimension
                if not _is_zero_dim(dim):
                    return ConnectivityVerdict(False, degree_bound, checks, fat, full,
                                               {"X": a, "Y": b, "shift": i, "fattened": True,
                                                "dimension": str(dim)})
    return ConnectivityVerdict(True, degree_bound, checks, fat, full)
