"""Exact computations with weakly idempotent complete additive categories and their bounded complexes."""

__version__ = "0.1.0"
