"""
Concrete bases: the unit-vector system of a sequence space, the summing
basis of c0 and the difference basis of l_1.
"""

import numpy as np
import numpy.typing as npt

from dkk_lab.bases.basis import BasisRep
from dkk_lab.seqspace import SequenceSpace, c0, lp


def unit_vector_basis(space: SequenceSpace) -> BasisRep:
    """The unit vectors e_j of ``space``; to_ambient is the identity."""

    def functionals(dim: int) -> npt.NDArray[np.float64]:
        # |a_k| ||e_k|| <= ||f|| in a 1-unconditional space
        e1 = space.norm([1.0])
        return np.full(dim, 1.0 / e1)

    return BasisRep(
        name=f"E[{space.label}]",
        matrix_fn=lambda dim: np.eye(dim),
        ambient_fn=lambda dim: space,
        unconditional=space.subsymmetric,
        functional_fn=functionals if space.subsymmetric else None,
    )


def summing_basis() -> BasisRep:
    """s_j = e_1 + ... + e_j in c0: ambient coordinate k is the tail sum from k."""
    ambient = c0()
    return BasisRep(
        name="summing",
        matrix_fn=lambda dim: np.triu(np.ones((dim, dim))),
        ambient_fn=lambda dim: ambient,
    )


def difference_basis() -> BasisRep:
    """d_j = e_j - e_(j-1) in l_1: ambient coordinate k is a_k - a_(k+1)."""
    ambient = lp(1)
    return BasisRep(
        name="difference",
        matrix_fn=lambda dim: np.eye(dim) - np.eye(dim, k=1),
        ambient_fn=lambda dim: ambient,
    )
