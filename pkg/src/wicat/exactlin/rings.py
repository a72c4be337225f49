"""Coefficient rings with exact arithmetic.

Four kinds are supported: the rationals, the integers, the integers modulo
``n`` and finite products of prime fields.  Elements are plain Python values:
:class:`fractions.Fraction` for rationals, ``int`` for the integer kinds and
tuples of residues for products.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from ..errors import UnsupportedRing


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingDescriptor:
    kind: str  # "Q" | "Z" | "Zmod" | "product"
    modulus: int = 0
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("Q", "Z", "Zmod", "product"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod" and self.modulus < 2:
            raise ValueError("Zmod requires n >= 2")
        if self.kind == "product":
            if not self.primes:
                raise ValueError("product ring needs at least one prime")
            if len(set(self.primes)) != len(self.primes):
                raise ValueError("product factors must be pairwise distinct primes")
            if not all(_is_prime(p) for p in self.primes):
                raise ValueError("product factors must be primes")

    # -- structure -----------------------------------------------------

    @property
    def factor_count(self) -> int:
        return len(self.primes) if self.kind == "product" else 1

    @property
    def is_field(self) -> bool:
        return self.kind == "Q" or (self.kind == "Zmod" and _is_prime(self.modulus))

    @property
    def is_field_like(self) -> bool:
        """A field or a finite product of fields."""
        return self.is_field or self.kind == "product"

    @cached_property
    def factors(self) -> tuple["RingDescriptor", ...]:
        """Field factors; a field is its own single factor."""
        if self.kind == "product":
            return tuple(Zmod(p) for p in self.primes)
        if self.is_field:
            return (self,)
        raise UnsupportedRing(f"{self} is not a (product of) field(s)")

    def __str__(self) -> str:
        if self.kind == "Zmod":
            return f"Z/{self.modulus}"
        if self.kind == "product":
            return "x".join(f"F{p}" for p in self.primes)
        return self.kind

    # -- elements ------------------------------------------------------

    @property
    def zero(self):
        if self.kind == "Q":
            return Fraction(0)
        if self.kind == "product":
            return (0,) * len(self.primes)
        return 0

    @property
    def one(self):
        if self.kind == "Q":
            return Fraction(1)
        if self.kind == "product":
            return (1,) * len(self.primes)
        return 1

    def coerce(self, x):
        """Bring ``x`` (int, Fraction, 'a/b' string, tuple) into canonical form."""
        k = self.kind
        if k == "Q":
            if isinstance(x, str):
                return Fraction(x.strip())
            if isinstance(x, float):
                raise TypeError("floating point values are not exact")
            return Fraction(x)
        if k == "product":
            if isinstance(x, (list, tuple)):
                if len(x) != len(self.primes):
                    raise ValueError(f"expected {len(self.primes)} residues, got {x!r}")
                return tuple(_as_int(v) % p for v, p in zip(x, self.primes))
            v = _as_int(x)
            return tuple(v % p for p in self.primes)
        v = _as_int(x)
        return v % self.modulus if k == "Zmod" else v

    def add(self, a, b):
        k = self.kind
        if k == "Zmod":
            return (a + b) % self.modulus
        if k == "product":
            return tuple((x + y) % p for x, y, p in zip(a, b, self.primes))
        return a + b

    def sub(self, a, b):
        k = self.kind
        if k == "Zmod":
            return (a - b) % self.modulus
        if k == "product":
            return tuple((x - y) % p for x, y, p in zip(a, b, self.primes))
        return a - b

    def neg(self, a):
        k = self.kind
        if k == "Zmod":
            return -a % self.modulus
        if k == "product":
            return tuple(-x % p for x, p in zip(a, self.primes))
        return -a

    def mul(self, a, b):
        k = self.kind
        if k == "Zmod":
            return a * b % self.modulus
        if k == "product":
            return tuple(x * y % p for x, y, p in zip(a, b, self.primes))
        return a * b

    def is_zero(self, a) -> bool:
        if self.kind == "product":
            return not any(a)
        return a == 0

    def is_unit(self, a) -> bool:
        k = self.kind
        if k == "Q":
            return a != 0
        if k == "Z":
            return a in (1, -1)
        if k == "Zmod":
            from math import gcd

            return gcd(a, self.modulus) == 1
        return all(a)

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a!r} is not a unit in {self}")
        k = self.kind
        if k == "Q":
            return 1 / a
        if k == "Z":
            return a
        if k == "Zmod":
            return pow(a, -1, self.modulus)
        return tuple(pow(x, -1, p) for x, p in zip(a, self.primes))

    def component(self, a, k: int):
        """The residue of ``a`` in the ``k``-th field factor."""
        if self.kind == "product":
            return a[k]
        if k != 0:
            raise IndexError(k)
        return a

    # -- JSON ----------------------------------------------------------

    def to_json(self):
        if self.kind in ("Q", "Z"):
            return self.kind
        if self.kind == "Zmod":
            return {"Zmod": self.modulus}
        return {"product": list(self.primes)}

    @classmethod
    def from_json(cls, doc) -> "RingDescriptor":
        if doc == "Q":
            return QQ
        if doc == "Z":
            return ZZ
        if isinstance(doc, dict) and len(doc) == 1:
            if "Zmod" in doc:
                return Zmod(int(doc["Zmod"]))
            if "product" in doc:
                return Product(*[int(p) for p in doc["product"]])
        raise ValueError(f"bad ring document {doc!r}")

    def element_to_json(self, a):
        if self.kind == "Q":
            return str(a)
        if self.kind == "product":
            return list(a)
        return a


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, str):
        return int(x.strip())
    raise TypeError(f"{x!r} is not an integer")


def qfrac(n: int, d: int = 1) -> Fraction:
    """``Fraction(n, d)`` for integers, skipping the generic constructor's type dispatch."""
    if d != 1:
        if d < 0:
            n, d = -n, -d
        g = gcd(n, d)
        if g != 1:
            n //= g
            d //= g
    f = object.__new__(Fraction)
    f._numerator = n
    f._denominator = d
    return f


QQ = RingDescriptor("Q")
ZZ = RingDescriptor("Z")


def Zmod(n: int) -> RingDescriptor:
    return RingDescriptor("Zmod", modulus=n)


def Product(*primes: int) -> RingDescriptor:
    return RingDescriptor("product", primes=tuple(primes))
