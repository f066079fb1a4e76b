"""Longest increasing subsequence: fast path, quadratic oracle, variants.

`lis_fast` is patience sorting with witness recovery; `lis_oracle` is an
independent O(m^2) dynamic program kept deliberately separate so the two
can cross-check each other. Both reject duplicate entries: every caller
supplies permutation-like words, and silently tolerating duplicates would
hide bugs upstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .wreath import ColoredPermutation, SignedPermutation, signed_word


@dataclass(frozen=True)
class LisWitness:
    """LIS length plus one witness: the positions (one-based, strictly
    increasing) of a maximum-length increasing subsequence."""

    length: int
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.length != len(self.indices):
            raise ValueError("length must equal the number of witness indices")


def _as_word_array(word: Sequence[int]) -> np.ndarray:
    arr = np.asarray(word, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("word must be one-dimensional")
    if np.unique(arr).size != arr.size:
        raise ValueError("duplicate entries in word")
    return arr


def lis_fast(word: Sequence[int]) -> LisWitness:
    """LIS length and canonical witness in O(m log m).

    The witness is deterministic: among all maximum-length increasing
    subsequences it is the one whose position sequence is lexicographically
    smallest.

    >>> lis_fast((6, 5, 2, 1, 3, 4)).length
    3
    >>> lis_fast((2, 1, 3, 4)).indices
    (1, 3, 4)
    """
    arr = _as_word_array(word)
    idx = _kernels.lis_witness_indices(arr)
    return LisWitness(length=int(idx.shape[0]), indices=tuple((idx + 1).tolist()))


def lis_oracle(word: Sequence[int]) -> int:
    """LIS length by the quadratic dynamic program (testing oracle)."""
    arr = _as_word_array(word)
    return int(_kernels.lis_length_quadratic(arr))


def lis_signed(s: SignedPermutation) -> int:
    """LIS length of the centrally symmetric word realizing s."""
    word = np.asarray(signed_word(s), dtype=np.int64)
    return int(_kernels.lis_length(word))


def lis_colored(c: ColoredPermutation) -> int:
    """Longest increasing subsequence using symbols of one color only.

    Maximum over colors of the LIS of the subsequence of positions carrying
    that color; 0 for the empty permutation.
    """
    best = 0
    for color in set(c.colors):
        sub = [v for v, col in zip(c.perm, c.colors) if col == color]
        length = int(_kernels.lis_length(np.asarray(sub, dtype=np.int64)))
        if length > best:
            best = length
    return best
