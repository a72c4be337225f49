"""Category specifications: matrix categories, rank restrictions and layers."""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import gcd

from ..exactlin import RingDescriptor
from .objects import KarObject

LAYERS = ("base", "kar", "wkar")


@dataclass(frozen=True)
class AllowedRanks:
    """The submonoid of free ranks generated by ``generators``.

    ``bound`` caps every enumeration (additivity check, deciders, K0).
    Membership itself is exact for every rank.
    """

    generators: tuple[int, ...]
    bound: int = 12

    def __post_init__(self):
        if any(g <= 0 for g in self.generators):
            raise ValueError("generators must be positive ranks")
        object.__setattr__(self, "generators", tuple(sorted(set(self.generators))))

    def __contains__(self, n: int) -> bool:
        return _representable(self.generators, n)

    @property
    def gcd(self) -> int:
        g = 0
        for x in self.generators:
            g = gcd(g, x)
        return g

    def members(self, upto: int) -> list[int]:
        return [n for n in range(upto + 1) if n in self]

    def check_additive(self) -> list[tuple[int, int]]:
        """Pairs up to the bound whose sum escapes the set (always empty for a monoid)."""
        mem = self.members(self.bound)
        return [(a, b) for a in mem for b in mem if a + b not in self]


@lru_cache(maxsize=None)
def _representable(gens: tuple[int, ...], n: int) -> bool:
    if n < 0:
        return False
    if n == 0:
        return True
    return any(_representable(gens, n - g) for g in gens if g <= n)


@dataclass(frozen=True)
class CategorySpec:
    """A full subcategory of free modules over ``ring``, possibly completed.

    ``allowed`` of ``None`` means every free rank.  ``layer`` selects the
    base category B itself, its idempotent completion Kar(B) or its weak
    idempotent completion wKar(B).
    """

    ring: RingDescriptor
    allowed: AllowedRanks | None = None
    layer: str = "base"

    def __post_init__(self):
        if self.layer not in LAYERS:
            raise ValueError(f"layer must be one of {LAYERS}")
        if self.allowed is not None and self.allowed.check_additive():
            raise ValueError("allowed rank set is not closed under addition")

    @classmethod
    def full(cls, ring: RingDescriptor, layer: str = "base") -> "CategorySpec":
        return cls(ring, None, layer)

    @classmethod
    def ranks(cls, ring: RingDescriptor, generators, bound: int = 12, layer: str = "base") -> "CategorySpec":
        return cls(ring, AllowedRanks(tuple(generators), bound), layer)

    def base(self) -> "CategorySpec":
        return replace(self, layer="base")

    def kar(self) -> "CategorySpec":
        return replace(self, layer="kar")

    def wkar(self) -> "CategorySpec":
        return replace(self, layer="wkar")

    @property
    def bound(self) -> int:
        return self.allowed.bound if self.allowed else 12

    @property
    def max_generator(self) -> int:
        return max(self.allowed.generators) if self.allowed and self.allowed.generators else 1

    def allows_rank(self, n: int) -> bool:
        return n >= 0 and (self.allowed is None or n in self.allowed)

    def allowed_ranks(self, upto: int) -> list[int]:
        return [n for n in range(upto + 1) if self.allows_rank(n)]

    def smallest_allowed_at_least(self, n: int) -> int | None:
        for m in range(n, n + 4 * self.max_generator + 2):
            if self.allows_rank(m):
                return m
        return None

    def in_wkar_by_rank(self, multirank) -> bool:
        """Constant rank ``c`` with ``a`` and ``a + c`` allowed for some ``a``."""
        mr = tuple(multirank)
        if len(set(mr)) != 1:
            return False
        c = mr[0]
        if self.allowed is None:
            return True
        g = self.allowed.gcd
        return c == 0 if g == 0 else c % g == 0

    def contains(self, obj: KarObject) -> bool:
        """Object membership for this layer."""
        if obj.ring != self.ring:
            return False
        if self.layer == "base":
            return obj.is_free and self.allows_rank(obj.size)
        if self.layer == "kar":
            return self.allows_rank(obj.size)
        return self.allows_rank(obj.size) and self.in_wkar_by_rank(obj.multirank)

    def describe(self) -> str:
        body = "all ranks" if self.allowed is None else f"ranks generated by {list(self.allowed.generators)}"
        return f"{self.layer} over {self.ring} ({body})"

    def to_json(self) -> dict:
        allowed = "full" if self.allowed is None else {
            "generators": list(self.allowed.generators),
            "bound": self.allowed.bound,
        }
        return {"ring": self.ring.to_json(), "allowed": allowed, "layer": self.layer}

    @classmethod
    def from_json(cls, doc) -> "CategorySpec":
        ring = RingDescriptor.from_json(doc["ring"])
        allowed = doc.get("allowed", "full")
        if allowed == "full" or allowed is None:
            al = None
        else:
            al = AllowedRanks(tuple(int(g) for g in allowed["generators"]), int(allowed.get("bound", 12)))
        return cls(ring, al, doc.get("layer", "base"))
