"""Block-structured permutation groups and their actions as words.

An element of the wreath group over n blocks of size k is (gamma_1..gamma_n;
eta): one permutation of degree k per block plus a block shuffle of degree n.
Its action on 1..nk is two-staged: each block i (symbols (i-1)k+1 .. ik) is
rearranged by gamma_i, then whole blocks are moved so that output block
position b receives input block eta^{-1}(b). The resulting image sequence is
"the word" of the element; its LIS is the statistic everything else studies.

For k=2 the group is also realized on {-n..-1, 1..n} as centrally symmetric
(signed) permutations; that action has a genuinely different LIS
distribution, which is the point of keeping both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .perm import Permutation, RandomSource, identity, inverse, is_permutation


@dataclass(frozen=True)
class WreathElement:
    """(gamma_1..gamma_n; eta) with block size k and block count n."""

    k: int
    n: int
    inner: tuple[Permutation, ...]
    outer: Permutation

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError(f"block size and count must be positive, got k={self.k} n={self.n}")
        if len(self.inner) != self.n:
            raise ValueError(f"expected {self.n} inner permutations, got {len(self.inner)}")
        for g in self.inner:
            if len(g) != self.k or not is_permutation(g):
                raise ValueError(f"inner permutation {g!r} is not a permutation of 1..{self.k}")
        if len(self.outer) != self.n or not is_permutation(self.outer):
            raise ValueError(f"outer permutation {self.outer!r} is not a permutation of 1..{self.n}")


def identity_element(n: int, k: int) -> WreathElement:
    return WreathElement(k=k, n=n, inner=(identity(k),) * n, outer=identity(n))


def to_word(w: WreathElement) -> tuple[int, ...]:
    """The image sequence of 1..nk under the two-stage action.

    Output block position b holds input block eta^{-1}(b); within it, symbol
    slots are rearranged by that block's inner permutation.

    >>> to_word(WreathElement(k=2, n=2, inner=((1, 2), (1, 2)), outer=(2, 1)))
    (3, 4, 1, 2)
    """
    placed = inverse(w.outer)
    word = []
    for b in range(w.n):
        i = placed[b]  # one-based input block at output position b+1
        base = (i - 1) * w.k
        word.extend(base + image for image in w.inner[i - 1])
    return tuple(word)


def _sample_wreath_arrays(n: int, k: int, gen: np.random.Generator):
    """Draw (inner matrix, zero-based outer) for one uniform element.

    The draw order (inner rows first, then the block shuffle) is part of the
    reproducibility contract; the Monte Carlo engine consumes the same stream
    through this same function.
    """
    base = np.tile(np.arange(1, k + 1, dtype=np.int64), (n, 1))
    inner = gen.permuted(base, axis=1, out=base)
    outer0 = gen.permutation(n)
    return inner, outer0


def sample_wreath(n: int, k: int, rng: RandomSource) -> WreathElement:
    """One uniform element: all inner permutations and the block shuffle
    independent and uniform."""
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n} k={k}")
    inner, outer0 = _sample_wreath_arrays(n, k, rng.generator)
    return WreathElement(
        k=k,
        n=n,
        inner=tuple(tuple(row) for row in inner.tolist()),
        outer=tuple((outer0 + 1).tolist()),
    )


@dataclass(frozen=True)
class SignedPermutation:
    """A centrally symmetric permutation of {-n..-1, 1..n}: an underlying
    permutation of 1..n with one sign per symbol."""

    underlying: Permutation
    signs: tuple[int, ...]

    def __post_init__(self):
        if not is_permutation(self.underlying):
            raise ValueError(f"underlying {self.underlying!r} is not a permutation")
        if len(self.signs) != len(self.underlying):
            raise ValueError("need exactly one sign per symbol")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")


def signed_word(s: SignedPermutation) -> tuple[int, ...]:
    """The length-2n word over {-n..-1, 1..n} realizing s.

    Position n+j holds sign[p(j)] * p(j) for p the underlying permutation;
    position n+1-j holds its negation, so word[j] == -word[2n+1-j] throughout.

    >>> signed_word(SignedPermutation(underlying=(1, 2), signs=(1, 1)))
    (-2, -1, 1, 2)
    """
    n = len(s.underlying)
    word = [0] * (2 * n)
    for j in range(1, n + 1):
        v = s.underlying[j - 1]
        image = s.signs[v - 1] * v
        word[n + j - 1] = image
        word[n - j] = -image
    return tuple(word)


def to_signed(w: WreathElement) -> SignedPermutation:
    """The signed realization of a k=2 wreath element.

    Sign +1 iff the block's inner permutation is the identity; the underlying
    permutation is the block shuffle. The per-element labeling is a
    convention; the distributional contract is that signed-action LIS over
    the whole group reproduces its known law.
    """
    if w.k != 2:
        raise ValueError(f"signed realization needs k == 2, got k={w.k}")
    signs = tuple(1 if g == (1, 2) else -1 for g in w.inner)
    return SignedPermutation(underlying=w.outer, signs=signs)


@dataclass(frozen=True)
class ColoredPermutation:
    """A permutation with each symbol position carrying one of m colors."""

    perm: Permutation
    colors: tuple[int, ...]

    def __post_init__(self):
        if not is_permutation(self.perm):
            raise ValueError(f"perm {self.perm!r} is not a permutation")
        if len(self.colors) != len(self.perm):
            raise ValueError("need exactly one color per position")
        if any(not isinstance(c, int) or c < 1 for c in self.colors):
            raise ValueError("colors must be positive integers")


def sample_colored(n: int, num_colors: int, rng: RandomSource) -> ColoredPermutation:
    """Uniform permutation with i.i.d. uniform colors (n! * m^n outcomes).

    Draw order: permutation first, then the color vector.
    """
    if n < 0 or num_colors < 1:
        raise ValueError(f"need n >= 0 and num_colors >= 1, got n={n} m={num_colors}")
    gen = rng.generator
    perm = tuple((gen.permutation(n) + 1).tolist())
    colors = tuple(gen.integers(1, num_colors + 1, size=n).tolist())
    return ColoredPermutation(perm=perm, colors=colors)
