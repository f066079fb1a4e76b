"""Permutations in one-line notation, plus seeded uniform sampling.

A permutation of degree m is a tuple of the images of 1..m: entry j-1 is
the image of position j. All positions and values are one-based; the empty
tuple is the identity of S_0. Tuples keep values hashable so exhaustive
enumerations can count them directly.

Cycle notation appears only at the boundary (`from_cycles`), for fixtures
that are traditionally written with cycles.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

Permutation = tuple[int, ...]

_U64_MAX = 2**64 - 1


def identity(m: int) -> Permutation:
    """The identity of S_m.

    >>> identity(3)
    (1, 2, 3)
    """
    if m < 0:
        raise ValueError(f"degree must be nonnegative, got {m}")
    return tuple(range(1, m + 1))


def is_permutation(images: Sequence[int]) -> bool:
    """True if `images` lists each of 1..m exactly once."""
    m = len(images)
    seen = [False] * m
    for v in images:
        if not isinstance(v, int) or v < 1 or v > m or seen[v - 1]:
            return False
        seen[v - 1] = True
    return True


def as_permutation(images: Iterable[int]) -> Permutation:
    """Validate and normalize to a Permutation tuple.

    Raises ValueError unless `images` is a permutation of {1..m}.
    """
    p = tuple(int(v) for v in images)
    if not is_permutation(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The permutation mapping j to a(b(j)).

    >>> compose((2, 1), (2, 1))
    (1, 2)
    >>> compose((2, 3, 1), (3, 1, 2))
    (1, 2, 3)
    """
    if len(a) != len(b):
        raise ValueError(f"degree mismatch: {len(a)} vs {len(b)}")
    return tuple(a[v - 1] for v in b)


def inverse(p: Permutation) -> Permutation:
    """The inverse permutation: compose(p, inverse(p)) is the identity.

    >>> inverse((2, 3, 1))
    (3, 1, 2)
    """
    out = [0] * len(p)
    for j, v in enumerate(p):
        out[v - 1] = j + 1
    return tuple(out)


def from_cycles(m: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Build a permutation of degree m from disjoint cycles.

    A cycle (c1, c2, ..., cr) maps c1 to c2, c2 to c3, and cr back to c1;
    elements not mentioned are fixed.

    >>> from_cycles(3, [(3, 1, 2)])
    (2, 3, 1)
    """
    out = list(range(1, m + 1))
    touched = set()
    for cyc in cycles:
        for x in cyc:
            if not 1 <= x <= m:
                raise ValueError(f"cycle entry {x} outside 1..{m}")
            if x in touched:
                raise ValueError(f"cycles not disjoint at {x}")
            touched.add(x)
        for i, x in enumerate(cyc):
            out[x - 1] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


class RandomSource:
    """A deterministic random stream addressed by (master_seed, stream_index).

    The same pair always replays the same byte stream; distinct stream
    indices give independent-quality streams (counter-based keyed generator),
    so per-trial streams (master_seed, trial_index) are schedule-independent.
    A RandomSource is single-owner: never share one between concurrent tasks.
    """

    __slots__ = ("master_seed", "stream_index", "generator")

    def __init__(self, master_seed: int, stream_index: int = 0):
        for name, value in (("master_seed", master_seed), ("stream_index", stream_index)):
            if not 0 <= int(value) <= _U64_MAX:
                raise ValueError(f"{name} must fit in 64 unsigned bits, got {value}")
        self.master_seed = int(master_seed)
        self.stream_index = int(stream_index)
        key = np.array([self.master_seed, self.stream_index], dtype=np.uint64)
        self.generator = np.random.Generator(np.random.Philox(key=key))


def sample_uniform(m: int, rng: RandomSource) -> Permutation:
    """One permutation of S_m, exactly uniform.

    Fisher-Yates under the hood with rejection-sampled bounded integers,
    so there is no modulo bias.
    """
    if m < 0:
        raise ValueError(f"degree must be nonnegative, got {m}")
    if m == 0:
        return ()
    return tuple((rng.generator.permutation(m) + 1).tolist())
