"""Extension of ring homomorphisms to the Karoubi envelope."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedHom
from ..exactlin import ExactMatrix, RingDescriptor, Zmod
from .objects import KarMorphism, KarObject
from .spec import CategorySpec
from .witness import WkarWitness, wkar_witness


@dataclass(frozen=True)
class RingHom:
    """One of: ``identity``, ``projection`` onto a product factor, ``quotient`` Z -> Z/n."""

    kind: str
    source: RingDescriptor
    index: int = 0
    modulus: int = 0

    def __post_init__(self):
        if self.kind == "projection":
            if self.source.kind != "product" or not 0 <= self.index < len(self.source.primes):
                raise UnsupportedHom("projection needs a product ring and a valid factor index")
        elif self.kind == "quotient":
            if self.source.kind != "Z" or self.modulus < 2:
                raise UnsupportedHom("quotient maps go from Z to Z/n with n >= 2")
        elif self.kind != "identity":
            raise UnsupportedHom(f"unsupported ring homomorphism {self.kind!r}")

    @property
    def target(self) -> RingDescriptor:
        if self.kind == "projection":
            return self.source.factors[self.index]
        if self.kind == "quotient":
            return Zmod(self.modulus)
        return self.source

    def __call__(self, x):
        if self.kind == "projection":
            return x[self.index]
        if self.kind == "quotient":
            return x % self.modulus
        return x

    def on_matrix(self, m: ExactMatrix) -> ExactMatrix:
        if m.ring != self.source:
            raise UnsupportedHom(f"matrix over {m.ring}, homomorphism from {self.source}")
        return m.map_entries(self, self.target)

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "source": self.source.to_json()}
        if self.kind == "projection":
            doc["index"] = self.index
        if self.kind == "quotient":
            doc["modulus"] = self.modulus
        return doc

    @classmethod
    def from_json(cls, doc) -> "RingHom":
        return cls(doc["kind"], RingDescriptor.from_json(doc["source"]),
                   int(doc.get("index", 0)), int(doc.get("modulus", 0)))


def kar_functor(F: RingHom, x):
    """Apply ``Kar(F)``: ``(B, p) -> (F(B), F(p))``, morphisms entrywise."""
    if isinstance(x, KarObject):
        return KarObject(F.target, x.size, F.on_matrix(x.idem))
    if isinstance(x, KarMorphism):
        return KarMorphism(kar_functor(F, x.source), kar_functor(F, x.target), F.on_matrix(x.matrix))
    raise TypeError(f"cannot apply a functor to {type(x).__name__}")


def spec_image(F: RingHom, spec: CategorySpec) -> CategorySpec:
    return CategorySpec(F.target, spec.allowed, spec.layer)


def map_witness(F: RingHom, w: WkarWitness) -> WkarWitness:
    """Image of a witness; ``F`` preserves biproducts so the image is again a witness."""
    return WkarWitness(
        kar_functor(F, w.obj), kar_functor(F, w.x), kar_functor(F, w.y),
        kar_functor(F, w.iso), kar_functor(F, w.inverse), w.search_bound,
    )


def preserves_wkar(F: RingHom, obj: KarObject, spec: CategorySpec) -> bool | None:
    """``None`` if ``obj`` is not in wKar; otherwise whether its image is (by mapped witness)."""
    w = wkar_witness(obj, spec)
    if w is None:
        return None
    mapped = map_witness(F, w)
    return mapped.verify(spec_image(F, spec)) and wkar_witness(mapped.obj, spec_image(F, spec)) is not None
