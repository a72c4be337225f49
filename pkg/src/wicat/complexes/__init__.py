"""Bounded complexes over a category spec and their homotopy algebra."""
from .core import (
    ChainMap,
    Complex,
    EquivalenceCertificate,
    Homotopy,
    cone,
    direct_sum_complex,
    disk,
    elementary,
    identity_map,
    join_specs,
    shift,
    same_complex,
    shift_certificate,
    shift_homotopy,
    shift_map,
    sum_homotopies,
    sum_maps,
    transpose_dual,
    transpose_homotopy,
    zero_homotopy,
    zero_map,
)
from .homotopy import (
    HomModHomotopy,
    are_homotopic,
    find_homotopy,
    freeify,
    hom_mod_homotopy,
    homology_ranks,
    is_acyclic,
    is_contractible,
    is_null_homotopic,
)
from .splitting import FailureWitness, Splitting, dual_splitting, split_contractible

__all__ = [
    "ChainMap", "Complex", "EquivalenceCertificate", "Homotopy", "cone", "direct_sum_complex",
    "disk", "elementary", "identity_map", "join_specs", "same_complex", "shift", "shift_certificate", "shift_homotopy", "shift_map", "sum_homotopies",
    "sum_maps", "transpose_dual", "transpose_homotopy", "zero_homotopy", "zero_map",
    "HomModHomotopy", "are_homotopic", "find_homotopy", "freeify", "hom_mod_homotopy",
    "homology_ranks", "is_acyclic", "is_contractible", "is_null_homotopic",
    "FailureWitness", "Splitting", "dual_splitting", "split_contractible",
]
from .minimal import minimal_model, pad_to_spec, plan_padding, resolve_wkar_object

__all__ += ["minimal_model", "pad_to_spec", "plan_padding", "resolve_wkar_object"]
