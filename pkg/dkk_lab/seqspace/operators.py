"""
The lifting L and retraction T between l_1 / c0 and the variation space.

L interleaves zeros, T takes differences of consecutive pairs, and T(L(f)) = f.
"""

import numpy as np
import numpy.typing as npt

from dkk_lab.seqspace.sequences import FiniteSequence, as_sequence


def lifting_L(f: npt.ArrayLike) -> FiniteSequence:
    """(a1, a2, ...) -> (a1, 0, a2, 0, ...)."""
    arr = as_sequence(f)
    out = np.zeros(2 * arr.size)
    out[0::2] = arr
    return out


def retraction_T(f: npt.ArrayLike) -> FiniteSequence:
    """(a1, a2, a3, a4, ...) -> (a1 - a2, a3 - a4, ...); odd lengths get a trailing zero."""
    arr = as_sequence(f)
    if arr.size % 2:
        arr = np.append(arr, 0.0)
    return arr[0::2] - arr[1::2]
