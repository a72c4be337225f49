"""Seeded random generators for exact test data."""
from __future__ import annotations

import random

from .exactlin import ExactMatrix, RingDescriptor


def random_element(ring: RingDescriptor, rng: random.Random, spread: int = 3):
    if ring.kind == "product":
        return tuple(rng.randrange(p) for p in ring.primes)
    if ring.kind == "Zmod":
        return rng.randrange(ring.modulus)
    return rng.randint(-spread, spread)


def random_matrix(ring: RingDescriptor, rows: int, cols: int, rng: random.Random, spread: int = 3) -> ExactMatrix:
    return ExactMatrix(ring, rows, cols,
                       [[random_element(ring, rng, spread) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(ring: RingDescriptor, n: int, rng: random.Random, steps: int | None = None):
    """``(g, g^-1)`` built from elementary row operations with small entries.

    Both factors have integer entries, so they are invertible over every
    supported ring.
    """
    steps = 2 * n if steps is None else steps
    g = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gi = [row[:] for row in g]
    if n >= 2:
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-2, -1, 1, 2))
            # g <- E g with E = I + c e_ij; g^-1 <- g^-1 E^-1
            g[i] = [x + c * y for x, y in zip(g[i], g[j])]
            for row in gi:
                row[j] -= c * row[i]
    if n >= 1 and rng.random() < 0.5:
        k = rng.randrange(n)
        g[k] = [-x for x in g[k]]
        for row in gi:
            row[k] = -row[k]
    return ExactMatrix(ring, n, n, g), ExactMatrix(ring, n, n, gi)
