"""Immutable exact matrices over a :class:`RingDescriptor`."""
from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence

from ..errors import RingMismatch, ShapeMismatch
from .rings import RingDescriptor, qfrac


class ExactMatrix:
    """A ``rows x cols`` matrix with entries in ``ring``.

    Empty shapes (0 x n, n x 0) are legal and act as zero morphisms.
    """

    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: RingDescriptor, rows: int, cols: int, data, *, _trusted=False):
        if rows < 0 or cols < 0:
            raise ShapeMismatch("negative dimension")
        if _trusted:
            body = data
        else:
            body = tuple(tuple(ring.coerce(x) for x in row) for row in data)
            if len(body) != rows or any(len(r) != cols for r in body):
                raise ShapeMismatch(f"entries do not form a {rows}x{cols} matrix")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", body)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_rows(cls, ring: RingDescriptor, rows: Sequence[Sequence], cols: int | None = None):
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def from_flat(cls, ring: RingDescriptor, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        return cls(ring, rows, cols, [entries[i * cols:(i + 1) * cols] for i in range(rows)])

    @classmethod
    def zero(cls, ring: RingDescriptor, rows: int, cols: int):
        z = ring.zero
        return cls(ring, rows, cols, tuple((z,) * cols for _ in range(rows)), _trusted=True)

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int):
        z, o = ring.zero, ring.one
        return cls(
            ring, n, n,
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
            _trusted=True,
        )

    @classmethod
    def diagonal(cls, ring: RingDescriptor, diag: Sequence):
        n = len(diag)
        z = ring.zero
        d = [ring.coerce(x) for x in diag]
        return cls(ring, n, n, tuple(tuple(d[i] if i == j else z for j in range(n)) for i in range(n)),
                   _trusted=True)

    @classmethod
    def from_components(cls, ring: RingDescriptor, parts: Sequence["ExactMatrix"]):
        """Assemble a product-ring matrix from one matrix per field factor."""
        if ring.kind != "product":
            (only,) = parts
            return only
        r, c = parts[0].rows, parts[0].cols
        if any((m.rows, m.cols) != (r, c) for m in parts):
            raise ShapeMismatch("component matrices differ in shape")
        data = tuple(
            tuple(tuple(m.data[i][j] for m in parts) for j in range(c)) for i in range(r)
        )
        return cls(ring, r, c, data, _trusted=True)

    # -- basic protocol ------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, self.rows, self.cols, self.data)))
        return self._hash

    def __repr__(self):
        body = [[self.ring.element_to_json(x) for x in row] for row in self.data]
        return f"ExactMatrix({self.ring}, {self.rows}x{self.cols}, {body})"

    def entries(self) -> list:
        """Row-major flat entry list."""
        return [x for row in self.data for x in row]

    def is_zero(self) -> bool:
        iz = self.ring.is_zero
        return all(iz(x) for row in self.data for x in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        z, o = self.ring.zero, self.ring.one
        return all(x == (o if i == j else z) for i, row in enumerate(self.data) for j, x in enumerate(row))

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "ExactMatrix"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "ExactMatrix"):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return ExactMatrix(
            self.ring, self.rows, self.cols,
            tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            _trusted=True,
        )

    def __sub__(self, other: "ExactMatrix"):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        sub = self.ring.sub
        return ExactMatrix(
            self.ring, self.rows, self.cols,
            tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            _trusted=True,
        )

    def __neg__(self):
        neg = self.ring.neg
        return ExactMatrix(self.ring, self.rows, self.cols,
                           tuple(tuple(neg(a) for a in r) for r in self.data), _trusted=True)

    def scale(self, c) -> "ExactMatrix":
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return ExactMatrix(self.ring, self.rows, self.cols,
                           tuple(tuple(mul(c, a) for a in r) for r in self.data), _trusted=True)

    def __matmul__(self, other: "ExactMatrix"):
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix(self.ring, self.rows, other.cols,
                           _matmul(self.ring, self.data, other.data, other.cols), _trusted=True)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.cols, self.rows,
                           tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)),
                           _trusted=True)

    T = property(transpose)

    # -- slicing and blocks -------------------------------------------

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        return ExactMatrix(self.ring, len(rows), len(cols),
                           tuple(tuple(self.data[i][j] for j in cols) for i in rows), _trusted=True)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return self.submatrix(range(r0, r1), range(c0, c1))

    def component(self, k: int) -> "ExactMatrix":
        """The matrix over the ``k``-th field factor of a product ring."""
        ring = self.ring
        if ring.kind != "product":
            if k != 0:
                raise IndexError(k)
            return self
        f = ring.factors[k]
        return ExactMatrix(f, self.rows, self.cols,
                           tuple(tuple(x[k] for x in row) for row in self.data), _trusted=True)

    def components(self) -> list["ExactMatrix"]:
        return [self.component(k) for k in range(self.ring.factor_count)]

    def map_entries(self, fn, ring: RingDescriptor) -> "ExactMatrix":
        return ExactMatrix(ring, self.rows, self.cols,
                           tuple(tuple(ring.coerce(fn(x)) for x in row) for row in self.data),
                           _trusted=True)

    # -- JSON ----------------------------------------------------------

    def to_json(self) -> dict:
        ej = self.ring.element_to_json
        return {"rows": self.rows, "cols": self.cols, "entries": [ej(x) for x in self.entries()]}

    @classmethod
    def from_json(cls, ring: RingDescriptor, doc) -> "ExactMatrix":
        if isinstance(doc, list):
            # nested row lists are accepted as a convenience
            cols = len(doc[0]) if doc else 0
            return cls.from_rows(ring, doc, cols)
        return cls.from_flat(ring, int(doc["rows"]), int(doc["cols"]), list(doc["entries"]))


def _matmul(ring: RingDescriptor, a, b, bcols: int):
    k = ring.kind
    if not a:
        return ()
    inner = len(a[0])
    if inner == 0:
        z = ring.zero
        return tuple((z,) * bcols for _ in a)
    bt = list(zip(*b))
    if k == "Q":
        return _matmul_q(a, bt)
    if k == "Z":
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)
    if k == "Zmod":
        n = ring.modulus
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) % n for col in bt) for row in a)
    primes = ring.primes
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = [0] * len(primes)
            for x, y in zip(row, col):
                for t in range(len(primes)):
                    acc[t] += x[t] * y[t]
            new.append(tuple(v % p for v, p in zip(acc, primes)))
        out.append(tuple(new))
    return tuple(out)


def _scaled(rows):
    """Integer rows and a common denominator for rows of Fractions."""
    den = 1
    for row in rows:
        for x in row:
            d = x.denominator
            if d != 1 and den % d:
                den = lcm(den, d)
    if den == 1:
        return [[x.numerator for x in row] for row in rows], 1
    return [[x.numerator * (den // x.denominator) for x in row] for row in rows], den


def _matmul_q(a, bt):
    ia, da = _scaled(a)
    ib, db = _scaled(bt)
    den = da * db
    if den == 1:
        return tuple(tuple(qfrac(sum(x * y for x, y in zip(row, col))) for col in ib) for row in ia)
    return tuple(tuple(qfrac(sum(x * y for x, y in zip(row, col)), den) for col in ib) for row in ia)


def hstack(mats: Sequence[ExactMatrix], ring: RingDescriptor | None = None, rows: int | None = None):
    """Concatenate horizontally; ``ring``/``rows`` fix the shape for an empty list."""
    if not mats:
        return ExactMatrix.zero(ring, rows or 0, 0)
    ring = mats[0].ring
    r = mats[0].rows
    for m in mats:
        if m.ring != ring:
            raise RingMismatch("hstack over different rings")
        if m.rows != r:
            raise ShapeMismatch("hstack row mismatch")
    data = tuple(tuple(x for m in mats for x in m.data[i]) for i in range(r))
    return ExactMatrix(ring, r, sum(m.cols for m in mats), data, _trusted=True)


def vstack(mats: Sequence[ExactMatrix], ring: RingDescriptor | None = None, cols: int | None = None):
    if not mats:
        return ExactMatrix.zero(ring, 0, cols or 0)
    ring = mats[0].ring
    c = mats[0].cols
    for m in mats:
        if m.ring != ring:
            raise RingMismatch("vstack over different rings")
        if m.cols != c:
            raise ShapeMismatch("vstack column mismatch")
    data = tuple(row for m in mats for row in m.data)
    return ExactMatrix(ring, len(data), c, data, _trusted=True)


def block_matrix(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    return vstack([hstack(row) for row in blocks])


def block_diag(mats: Sequence[ExactMatrix], ring: RingDescriptor | None = None) -> ExactMatrix:
    if not mats:
        return ExactMatrix.zero(ring, 0, 0)
    ring = mats[0].ring
    rows = []
    for i, m in enumerate(mats):
        rows.append([m if j == i else ExactMatrix.zero(ring, m.rows, n.cols) for j, n in enumerate(mats)])
    total_c = sum(m.cols for m in mats)
    stacked = [hstack(r) for r in rows]
    return vstack(stacked) if stacked else ExactMatrix.zero(ring, 0, total_c)
