"""The block-decomposition lower bound on wreath-word LIS.

Pick a maximum-length increasing subsequence of the block word (the sequence
of original block indices laid out at output positions) and chain together
one increasing run inside each picked block: the total length W is a lower
bound for the LIS of the full word.

The block-level witness is chosen by the lis module's canonical rule applied
to the block word alone. That measurability matters: the choice must not peek
at block contents, or the block-level count would stop being independent of
the within-block counts and the exact moment identities would fail. A
metamorphic test (re-randomize the inner permutations with the shuffle fixed)
enforces it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .lis import lis_fast
from .perm import Permutation, inverse
from .wreath import WreathElement, to_word


@dataclass(frozen=True)
class BlockDecomposition:
    """Block word, its LIS and witness blocks, per-block LIS, and the bound W."""

    block_word: Permutation
    block_lis_length: int
    chosen_blocks: tuple[int, ...]
    per_block_lis: tuple[int, ...]
    lower_bound: int

    def __post_init__(self):
        if self.block_lis_length != len(self.chosen_blocks):
            raise ValueError("block_lis_length must equal the number of chosen blocks")
        if any(b <= a for a, b in zip(self.chosen_blocks, self.chosen_blocks[1:])):
            raise ValueError("chosen_blocks must be strictly increasing")
        if self.lower_bound != sum(self.per_block_lis[i - 1] for i in self.chosen_blocks):
            raise ValueError("lower_bound must be the sum of per-block LIS over chosen blocks")


def word_statistics(word: np.ndarray, inner: np.ndarray, block_word: np.ndarray):
    """(L, N, W) from array form: full word, inner rows, one-based block word.

    Array-domain core shared with the Monte Carlo engine so the statistic has
    exactly one definition.
    """
    full = int(_kernels.lis_length(word))
    witness = _kernels.lis_witness_indices(block_word)
    per_block = _kernels.lis_length_rows(inner)
    bound = int(per_block[block_word[witness] - 1].sum()) if witness.size else 0
    return full, int(witness.shape[0]), bound


def decompose(w: WreathElement) -> BlockDecomposition:
    """Evaluate the lower-bound construction for one element."""
    block_word = inverse(w.outer)
    witness = lis_fast(block_word)
    chosen = tuple(block_word[i - 1] for i in witness.indices)
    inner = np.asarray(w.inner, dtype=np.int64).reshape(w.n, w.k)
    per_block = tuple(_kernels.lis_length_rows(inner).tolist())
    lower = sum(per_block[i - 1] for i in chosen)
    return BlockDecomposition(
        block_word=block_word,
        block_lis_length=witness.length,
        chosen_blocks=chosen,
        per_block_lis=per_block,
        lower_bound=lower,
    )


def verify_lower_bound(w: WreathElement) -> bool:
    """Property harness: the bound never exceeds the word's true LIS."""
    return decompose(w).lower_bound <= lis_fast(to_word(w)).length
