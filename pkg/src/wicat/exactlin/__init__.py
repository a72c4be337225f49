from .rings import QQ, ZZ, Product, RingDescriptor, Zmod
from .matrix import ExactMatrix, block_diag, block_matrix, hstack, vstack
from .snf import snf, invariant_factors, int_det, smith_int
from .linalg import (
    column_basis,
    inverse,
    kernel,
    rank,
    rank_factor,
    rref,
    solve,
    standard_idempotent,
)

__all__ = [
    "QQ", "ZZ", "Product", "RingDescriptor", "Zmod",
    "ExactMatrix", "block_diag", "block_matrix", "hstack", "vstack",
    "snf", "invariant_factors", "int_det", "smith_int",
    "column_basis", "inverse", "kernel", "rank", "rank_factor", "rref", "solve",
    "standard_idempotent",
]
