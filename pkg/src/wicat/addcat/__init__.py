"""Matrix categories, their idempotent completions and completeness deciders."""
from .objects import (
    KarMorphism,
    KarObject,
    direct_sum,
    injection,
    permutation,
    projection,
    resize,
    sum_morphism,
    zero_morphism,
    zero_object,
)
from .spec import AllowedRanks, CategorySpec
from .witness import (
    Complement,
    WkarWitness,
    combine_witnesses,
    complement_split_mono,
    free_factorization,
    integer_rank_factor,
    is_isomorphic,
    wkar_witness,
    wkar_witness_by_enumeration,
)
from .completeness import (
    CompletenessVerdict,
    IdempotentVerdict,
    SplitCounterexample,
    is_idempotent_complete,
    is_weakly_idempotent_complete,
    random_idempotent,
    split_mono_transpose_is_split_epi,
    standard_split_mono,
)
from .functor import RingHom, kar_functor, map_witness, preserves_wkar

__all__ = [
    "KarMorphism", "KarObject", "direct_sum", "injection", "permutation", "projection",
    "resize", "sum_morphism", "zero_morphism", "zero_object",
    "AllowedRanks", "CategorySpec",
    "Complement", "WkarWitness", "combine_witnesses", "complement_split_mono",
    "free_factorization", "integer_rank_factor", "is_isomorphic", "wkar_witness",
    "wkar_witness_by_enumeration",
    "CompletenessVerdict", "IdempotentVerdict", "SplitCounterexample",
    "is_idempotent_complete", "is_weakly_idempotent_complete", "random_idempotent",
    "split_mono_transpose_is_split_epi", "standard_split_mono",
    "RingHom", "kar_functor", "map_witness", "preserves_wkar",
]
