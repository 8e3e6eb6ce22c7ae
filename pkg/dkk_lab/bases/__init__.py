"""Basis representations, the concrete conditional bases and combinators."""

from .ambient import AmbientNorm, LpCombination
from .basis import BasisRep, BasisTruncation, project
from .catalog import difference_basis, summing_basis, unit_vector_basis
from .combinators import block_repeat, copy_offsets, direct_sum, growth_table

__all__ = [
    "AmbientNorm",
    "LpCombination",
    "BasisRep",
    "BasisTruncation",
    "project",
    "unit_vector_basis",
    "summing_basis",
    "difference_basis",
    "direct_sum",
    "block_repeat",
    "copy_offsets",
    "growth_table",
]
