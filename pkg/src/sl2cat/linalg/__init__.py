"""Exact linear algebra: sparse echelon forms, small dense matrices, GF(p) kernels."""

from .fields import DEFAULT_PRIME, RATIONAL, Field, default_field, parse_field
from .kernels import backend, rank_mod_p, rref_mod_p
from .sparse import SparseEchelon, SpanBasis, is_independent, rank

__all__ = [
    "DEFAULT_PRIME",
    "RATIONAL",
    "Field",
    "default_field",
    "parse_field",
    "backend",
    "rank_mod_p",
    "rref_mod_p",
    "SparseEchelon",
    "SpanBasis",
    "is_independent",
    "rank",
]
