"""Split Grothendieck groups by bounded enumeration and Smith normal form."""
from .presentation import K0Presentation, iso_class_keys, k0_presentation, key_of
from .maps import (
    CrossCheckReport,
    K0Map,
    K0Verdict,
    k0_induced_map,
    small_kar_objects,
    wkar_by_k0,
    wkar_k0_crosscheck,
)

__all__ = [
    "K0Presentation", "iso_class_keys", "k0_presentation", "key_of",
    "CrossCheckReport", "K0Map", "K0Verdict", "k0_induced_map", "small_kar_objects",
    "wkar_by_k0", "wkar_k0_crosscheck",
]
