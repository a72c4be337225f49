"""The stupid weight structure on bounded complexes."""
from .truncation import (
    WeightDecomposition,
    lower_bound_for_w_le,
    required_range,
    stupid_truncate,
    support_within,
    upper_bound_for_w_ge,
)
from .membership import SIDES, MembershipCertificate, WeightClassQuery, is_member, weight_membership
from .axioms import AxiomEntry, AxiomReport, ConnectivityVerdict, is_connective, random_chain_map, verify_axioms
from .heart import (
    HeartExtraction,
    HeartRealization,
    HeartRoundTrip,
    complex_roundtrip,
    heart_roundtrip,
    heart_to_wkar,
    wkar_to_heart,
)

__all__ = [
    "WeightDecomposition", "lower_bound_for_w_le", "required_range", "stupid_truncate",
    "support_within", "upper_bound_for_w_ge",
    "SIDES", "MembershipCertificate", "WeightClassQuery", "is_member", "weight_membership",
    "AxiomEntry", "AxiomReport", "ConnectivityVerdict", "is_connective", "random_chain_map", "verify_axioms",
    "HeartExtraction", "HeartRealization", "HeartRoundTrip", "complex_roundtrip", "heart_roundtrip",
    "heart_to_wkar", "wkar_to_heart",
]
