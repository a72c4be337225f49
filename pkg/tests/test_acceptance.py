"""Acceptance suite: one exact check per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` (lines go to stdout).
"""
from __future__ import annotations

import random
from fractions import Fraction
import sys
import time

import pytest

from wicat.addcat import (
    CategorySpec,
    KarMorphism,
    KarObject,
    RingHom,
    complement_split_mono,
    is_idempotent_complete,
    is_weakly_idempotent_complete,
    kar_functor,
    preserves_wkar,
    random_idempotent,
    standard_split_mono,
)
from wicat.complexes import Complex, is_acyclic, is_contractible, split_contractible
from wicat.complexes.generate import random_complex, random_contractible, retraction_complex
from wicat.errors import SplitMonoNoComplement
from wicat.exactlin import QQ, ZZ, ExactMatrix, Product, int_det, snf
from wicat.k0 import k0_induced_map, k0_presentation, wkar_k0_crosscheck
from wicat.sampling import random_matrix
from wicat.weights import heart_roundtrip, is_connective, verify_axioms

F23 = Product(2, 3)
FULL_Q = CategorySpec.full(QQ)
R23 = CategorySpec.ranks(QQ, [2, 3])

RESULTS: list[str] = []


def _record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})"
    RESULTS.append(line)


def splitting_of_contractibles():
    rng = random.Random(20240)
    checked, bad = 0, []
    longest = biggest = 0
    for k in range(200):
        M = random_contractible(FULL_Q, rng, max_length=6, max_rank=5)
        longest = max(longest, M.essential_length)
        biggest = max(biggest, max(M.ranks(), default=0))
        if not is_acyclic(M):
            bad.append((k, "oracle: homology does not vanish"))
            continue
        s = split_contractible(M)
        if not (s.ok and s.verify()):
            bad.append((k, "splitting does not verify"))
        checked += 1
    ok = not bad and checked == 200 and longest <= 6 and biggest <= 5
    return ok, f"{checked}/200 split and verified, max length {longest}, max rank {biggest}, failures {bad[:3]}"


def counterexample_fidelity():
    notes = []
    i, p = standard_split_mono(R23, 2, 3)
    try:
        complement_split_mono(i, p, R23)
        mono_fails = False
    except SplitMonoNoComplement as e:
        mono_fails = e.complement.multirank == (1,)
        notes.append(f"complement multirank {e.complement.multirank}")
    i2, p2 = standard_split_mono(FULL_Q, 2, 3)
    mono_full = complement_split_mono(i2, p2, FULL_Q).verify(i2)
    w = split_contractible(retraction_complex(R23, 2, 3), R23)
    split_fails = (not w.ok) and w.degree == 0 and w.verify() and w.complement.multirank == (1,)
    s = split_contractible(retraction_complex(FULL_Q, 2, 3), FULL_Q)
    split_full = s.ok and s.verify()
    notes.append(f"failure degree {getattr(w, 'degree', None)}")
    ok = mono_fails and mono_full and split_fails and split_full
    return ok, ", ".join(notes) + f", full spec complement {mono_full}, full spec splitting {split_full}"


def completeness_triad():
    prod = CategorySpec.full(F23)
    wic_prod = is_weakly_idempotent_complete(prod)
    ic_prod = is_idempotent_complete(prod)
    e_ok = (not ic_prod.complete and ic_prod.witness is not None
            and ic_prod.witness.multirank == (1, 0))
    wic_r23 = is_weakly_idempotent_complete(R23)
    pair_ok = (not wic_r23.complete) and wic_r23.counterexample.pair == (2, 3)
    wic_q = is_weakly_idempotent_complete(FULL_Q)
    wkar_ok = True
    counts = []
    for spec in (FULL_Q, R23, prod):
        v = is_weakly_idempotent_complete(spec.wkar(), samples=50, seed=7)
        counts.append(len(v.witnesses))
        wkar_ok = wkar_ok and v.complete and len(v.witnesses) == 50 and all(w.verify() for w in v.witnesses)
    ok = wic_prod.complete and e_ok and pair_ok and wic_q.complete and wkar_ok
    return ok, (f"F2xF3 wic {wic_prod.complete}, ic {ic_prod.complete} witness e=(1,0) {e_ok}; "
                f"{{0,2,3,...}} pair {getattr(wic_r23.counterexample, 'pair', None)}; Q wic {wic_q.complete}; "
                f"wKar combined witnesses {counts}")


def heart_equivalence():
    ok, notes = True, []
    two_term = False
    for r in range(6):
        rt = heart_roundtrip(KarObject.free(QQ, r), R23)
        good = rt.ok and rt.verify(R23)
        ok = ok and good
        R = rt.realization.complex if rt.ok else None
        if r == 1 and R is not None:
            two_term = R.ranks() == [2, 3] and R.in_spec(R23)
        notes.append(f"k^{r}->{R.ranks() if R is not None else None}")
    return ok and two_term, ", ".join(notes)


def weight_axioms():
    ok, notes = True, []
    for name, spec, seed in (("Q", FULL_Q, 11), ("{0,2,3,...}", R23, 12)):
        rng = random.Random(seed)
        sample = [random_complex(spec, rng) for _ in range(100)]
        rep = verify_axioms(spec, sample, triangles=50, seed=seed)
        ext = rep.entry("extension")
        tri_ok = all(rep.triangles.get(s, 0) >= 50 for s in ("w<=", "w>=", "w="))
        pair_ok = rep.entry("iii").checks > 0
        ok = ok and rep.passed and tri_ok and pair_ok
        notes.append(f"{name}: {'pass' if rep.passed else 'fail'}, orthogonality pairs {rep.entry('iii').checks}, "
                     f"triangles {ext.checks}")
    return ok, "; ".join(notes)


def connectivity():
    notes, ok = [], True
    for name, spec in (("Q", FULL_Q), ("{0,2,3,...}", R23)):
        v = is_connective(spec, 3)
        ok = ok and v.connective and v.fattened_checks > 0 and v.full_faithful
        notes.append(f"{name}: {v.checks} checks, {v.fattened_checks} fattened")
    return ok, "; ".join(notes)


def k0_suite():
    pq = k0_presentation(FULL_Q, 12)
    pr = k0_presentation(R23, 12)
    pk = k0_presentation(CategorySpec.full(F23, "kar"), 4)
    inv_ok = (pq.invariants == {"free_rank": 1, "torsion": []} and pq.stable
              and pr.invariants == {"free_rank": 1, "torsion": []} and pr.stable
              and pk.invariants == {"free_rank": 2, "torsion": []} and pk.stable)
    m = k0_induced_map(R23, FULL_Q, 12)
    cc = wkar_k0_crosscheck(CategorySpec.full(F23), max_size=4, seed=3)
    ok = inv_ok and m.bijective and not cc.disagreements and cc.checked > 0
    return ok, (f"Q {pq.invariants}, {{0,2,3,...}} {pr.invariants}, Kar(F2xF3) {pk.invariants}; "
                f"inclusion map bijective {m.bijective}; crosscheck {cc.checked} objects, "
                f"{len(cc.disagreements)} disagreements")


def functor_extension():
    F = RingHom("projection", F23, 0)
    rng = random.Random(5)
    functorial = 0
    for _ in range(50):
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        A, B, Cc = (KarObject(F23, n, random_idempotent(F23, n, (rng.randint(0, n), rng.randint(0, n)), rng))
                    for n in (a, b, c))
        f = KarMorphism.cut(A, B, random_matrix(F23, b, a, rng))
        g = KarMorphism.cut(B, Cc, random_matrix(F23, c, b, rng))
        same = kar_functor(F, g @ f) == kar_functor(F, g) @ kar_functor(F, f)
        ident = kar_functor(F, A.identity) == kar_functor(F, A).identity
        functorial += same and ident
    spec = CategorySpec.full(F23)
    preserved, members = True, 0
    for n in range(4):
        for mr in ((x, y) for x in range(n + 1) for y in range(n + 1)):
            Z = KarObject.standard(F23, mr, n)
            verdict = preserves_wkar(F, Z, spec)
            if verdict is not None:
                members += 1
                preserved = preserved and verdict
    return functorial == 50 and preserved, f"{functorial}/50 composable pairs, {members} wKar objects preserved {preserved}"


def integer_honesty():
    Mz = Complex.from_ranks(CategorySpec.full(ZZ), 0, [1, 1], [ExactMatrix(ZZ, 1, 1, [[2]])])
    Mq = Complex.from_ranks(FULL_Q, 0, [1, 1], [ExactMatrix(QQ, 1, 1, [[2]])])
    z_none = is_contractible(Mz) is None
    hq = is_contractible(Mq)
    q_ok = hq is not None and hq.comps[1] == ExactMatrix(QQ, 1, 1, [[Fraction(1, 2)]])
    rng = random.Random(99)
    good = 0
    for _ in range(500):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = random_matrix(ZZ, m, n, rng, spread=9)
        S, U, V = snf(A)
        diag = [S[i, i] for i in range(min(m, n))]
        nz = [d for d in diag if d]
        ok = (U @ A @ V == S
              and all(S[i, j] == 0 for i in range(m) for j in range(n) if i != j)
              and all(d > 0 for d in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:]))
              and diag[len(nz):] == [0] * (len(diag) - len(nz))
              and abs(_det(U)) == 1 and abs(_det(V)) == 1)
        good += ok
    return z_none and q_ok and good == 500, (f"Z complex contractible {not z_none}, Q homotopy 1/2 {q_ok}, "
                                             f"SNF identities {good}/500")


def _det(M: ExactMatrix) -> int:
    return int_det([list(r) for r in M.data])


CRITERIA = [
    (1, "splitting of 200 contractible complexes over Q", splitting_of_contractibles),
    (2, "counterexample fidelity over {0,2,3,...}", counterexample_fidelity),
    (3, "completeness triad", completeness_triad),
    (4, "heart equivalence for k^0..k^5", heart_equivalence),
    (5, "weight axioms on 100 random complexes per spec", weight_axioms),
    (6, "connectivity with degree bound 3", connectivity),
    (7, "K0 invariants, induced map and lattice crosscheck", k0_suite),
    (8, "Kar functor of F2xF3 -> F2", functor_extension),
    (9, "integer coefficients and Smith normal form", integer_honesty),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check):
    t = time.perf_counter()
    ok, detail = check()
    _record(number, title, ok, f"{detail}; {time.perf_counter() - t:.1f}s")
    assert ok, detail


if __name__ == "__main__":
    start = time.perf_counter()
    failed = 0
    for number, title, check in CRITERIA:
        t = time.perf_counter()
        ok, detail = check()
        failed += not ok
        _record(number, title, ok, f"{detail}; {time.perf_counter() - t:.1f}s")
        print(RESULTS[-1], flush=True)
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria pass in {time.perf_counter() - start:.1f}s")
    sys.exit(1 if failed else 0)
