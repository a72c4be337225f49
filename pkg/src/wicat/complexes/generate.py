"""Seeded random complexes with known structure, disguised by base changes."""
from __future__ import annotations

import random

from ..addcat import CategorySpec, KarObject
from ..exactlin import ExactMatrix
from ..sampling import random_unimodular
from .core import Complex


def _allowed(spec: CategorySpec, upto: int) -> list[int]:
    return [n for n in spec.allowed_ranks(upto)]


def conjugate(M: Complex, rng: random.Random) -> Complex:
    """Apply a random unimodular change of basis in every degree (free terms only)."""
    if not M.terms:
        return M
    ring = M.ring
    gs = [random_unimodular(ring, t.size, rng) for t in M.terms]
    diffs = tuple(gs[k + 1][0] @ d @ gs[k][1] for k, d in enumerate(M.diffs))
    return Complex(M.spec, M.min_degree, M.terms, diffs)


def _assemble(spec: CategorySpec, lo: int, hi: int, pieces) -> Complex:
    """Block-diagonal complex from pieces ``(degree, source_rank, target_rank, matrix)``.

    A piece with ``matrix`` None is a single object in ``degree``.
    """
    ring = spec.ring
    n = hi - lo + 1
    ranks = [0] * n
    slots = []
    for deg, a, b, mat in pieces:
        k = deg - lo
        off_a = ranks[k]
        ranks[k] += a
        if mat is None:
            slots.append(None)
            continue
        off_b = ranks[k + 1]
        ranks[k + 1] += b
        slots.append((k, off_a, off_b, mat))
    rows = [[[ring.zero] * ranks[k] for _ in range(ranks[k + 1])] for k in range(n - 1)]
    for slot in slots:
        if slot is None:
            continue
        k, oa, ob, mat = slot
        for r in range(mat.rows):
            for c in range(mat.cols):
                rows[k][ob + r][oa + c] = mat.data[r][c]
    diffs = tuple(ExactMatrix(ring, ranks[k + 1], ranks[k], rows[k]) for k in range(n - 1))
    terms = tuple(KarObject.free(ring, r) for r in ranks)
    return Complex(spec, lo, terms, diffs)


def random_contractible(spec: CategorySpec, rng: random.Random, max_length: int = 6,
                        max_rank: int = 5, lo: int | None = None) -> Complex:
    """Sum of identity cones of allowed ranks with essential length at most ``max_length``."""
    ring = spec.ring
    ranks = [a for a in _allowed(spec, max_rank) if a > 0]
    lo = rng.randint(-3, 2) if lo is None else lo
    length = rng.randint(1, max_length)
    # a[j] is the rank of the cone occupying degrees (lo + j, lo + j + 1)
    a = [0] * length
    for j in range(length):
        room = max_rank - (a[j - 1] if j else 0)
        choices = [r for r in ranks if r <= room]
        must = j in (0, length - 1)
        if not choices:
            a[j] = 0
            continue
        a[j] = rng.choice(choices) if must or rng.random() < 0.75 else 0
    pieces = [(lo + j, a[j], a[j], ExactMatrix.identity(ring, a[j])) for j in range(length) if a[j]]
    # the last pair may have been squeezed out; keep the endpoints honest
    M = _assemble(spec, lo, lo + length, pieces) if pieces else Complex.zero(spec)
    return conjugate(M.trim(), rng)


def random_complex(spec: CategorySpec, rng: random.Random, lo: int = -2, hi: int = 2,
                   max_pieces: int = 4, max_rank: int = 3) -> Complex:
    """Random bounded complex in degrees ``[lo, hi]`` with nonzero homology in general.

    Built from identity cones, single objects and two-term pieces
    ``[k^a -> k^b]`` given by a split mono or a split epi, so over a
    rank-restricted spec the homology can have a rank that is not allowed.
    """
    ring = spec.ring
    ranks = [r for r in _allowed(spec, max_rank + 2) if r > 0]
    small = [r for r in ranks if r <= max_rank] or ranks[:1]
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        kind = rng.random()
        deg = rng.randint(lo, hi)
        if kind < 0.3 or deg == hi:
            pieces.append((deg, rng.choice(small), 0, None))
        elif kind < 0.55:
            a = rng.choice(small)
            pieces.append((deg, a, a, ExactMatrix.identity(ring, a)))
        else:
            a, b = sorted(rng.sample(ranks, 2)) if len(ranks) > 1 else (ranks[0], ranks[0])
            inc = ExactMatrix.identity(ring, b).block(0, b, 0, a)
            if kind < 0.8:
                pieces.append((deg, a, b, inc))  # split mono: homology rank b - a above
            else:
                pieces.append((deg, b, a, inc.transpose()))  # split epi: homology below
    if not pieces:
        return Complex.zero(spec)
    M = _assemble(spec, lo, hi, pieces)
    return conjugate(M, rng).trim()


def retraction_complex(spec: CategorySpec, a: int, b: int, min_degree: int = 0) -> Complex:
    """``k^a -i-> k^b -(1 - i p)-> k^b -p-> k^a`` for the standard inclusion ``i`` and projection ``p``.

    It is contractible, and splitting it needs a complement of ``i``.
    """
    ring = spec.ring
    i = ExactMatrix.identity(ring, b).block(0, b, 0, a)
    p = i.transpose()
    e = ExactMatrix.identity(ring, b) - i @ p
    terms = tuple(KarObject.free(ring, n) for n in (a, b, b, a))
    return Complex(spec, min_degree, terms, (i, e, p))
