"""Centralizer-uniform Markov chain on the symmetric group.

Each step replaces the current permutation by a uniform element of its
centralizer. The walk is reversible with stationary law uniform over
conjugacy classes, so reporting the cycle type each step samples
partitions of n uniformly in the limit. Mixing rates are out of scope;
burn_in is a knob, not a guarantee.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import InvariantViolation
from .perm import Permutation, RandomSource, as_permutation, compose, identity


def cycles_of(p: Permutation) -> tuple[tuple[int, ...], ...]:
    """Cycles of p in canonical form: each cycle starts at its minimum
    element and follows p; cycles are ordered by minimum element.

    >>> cycles_of((2, 1, 3))
    ((1, 2), (3,))
    >>> cycles_of((2, 3, 1))
    ((1, 2, 3),)
    """
    p = as_permutation(p)
    seen = [False] * len(p)
    cycles = []
    for start in range(1, len(p) + 1):
        if seen[start - 1]:
            continue
        cycle = [start]
        seen[start - 1] = True
        nxt = p[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt - 1] = True
            nxt = p[nxt - 1]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Partition of the degree given by cycle lengths, descending.

    >>> cycle_type((2, 1, 3))
    (2, 1)
    """
    return tuple(sorted((len(c) for c in cycles_of(p)), reverse=True))


def centralizer_order(parts: tuple[int, ...]) -> int:
    """Order of the centralizer of any permutation with this cycle type:
    prod over lengths i of i**a_i * a_i! with a_i the multiplicity of i.

    >>> centralizer_order((2, 1))
    2
    >>> centralizer_order((1, 1, 1))
    6
    """
    order = 1
    for length, mult in Counter(parts).items():
        order *= length**mult * math.factorial(mult)
    return order


def conjugacy_class_size(m: int, parts: tuple[int, ...]) -> int:
    if sum(parts) != m:
        raise ValueError(f"parts {parts} do not sum to degree {m}")
    return math.factorial(m) // centralizer_order(parts)


def sample_centralizer(s: Permutation, rng: RandomSource) -> Permutation:
    """Uniform element of the centralizer of s.

    The centralizer factors over cycle lengths: any commuting element
    permutes the cycles of each length among themselves and rotates within
    cycles. Draw order is part of the reproducibility contract: for each
    cycle length in ascending order, first a uniform permutation of that
    length's cycles (canonical order: by minimum element), then one uniform
    rotation offset per source cycle.
    """
    s = as_permutation(s)
    by_length: dict[int, list[tuple[int, ...]]] = {}
    for cycle in cycles_of(s):
        by_length.setdefault(len(cycle), []).append(cycle)
    gen = rng.generator
    out = [0] * len(s)
    for length in sorted(by_length):
        cycles = by_length[length]
        target_of = gen.permutation(len(cycles))
        offsets = gen.integers(0, length, size=len(cycles))
        for j, cycle in enumerate(cycles):
            target = cycles[target_of[j]]
            shift = int(offsets[j])
            for pos, value in enumerate(cycle):
                out[value - 1] = target[(pos + shift) % length]
    return tuple(out)


def commutes(a: Permutation, b: Permutation) -> bool:
    return compose(a, b) == compose(b, a)


@dataclass(frozen=True)
class ChainState:
    current: Permutation
    step_count: int = 0

    def __post_init__(self):
        as_permutation(self.current)
        if self.step_count < 0:
            raise ValueError(f"step_count must be nonnegative, got {self.step_count}")


def chain_step(state: ChainState, rng: RandomSource, check_commutes: bool = False) -> ChainState:
    """One move of the walk; with check_commutes every draw is verified to
    commute with its predecessor (test mode) and a failure raises
    InvariantViolation."""
    nxt = sample_centralizer(state.current, rng)
    if check_commutes and not commutes(state.current, nxt):
        raise InvariantViolation(
            f"centralizer sample {nxt} does not commute with {state.current}"
        )
    return ChainState(current=nxt, step_count=state.step_count + 1)


def partitions_of(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n, parts descending, listed in descending
    lexicographic order.

    >>> partitions_of(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    return tuple(rec(n, n, ()))


@dataclass(frozen=True)
class PartitionFrequencies:
    """Observed class counts from one sampler run, over the full partition
    support (unvisited partitions count zero)."""

    n: int
    steps: int
    burn_in: int
    counts: dict

    @property
    def reported(self) -> int:
        return self.steps - self.burn_in

    def frequency(self, parts: tuple[int, ...]) -> float:
        return self.counts.get(parts, 0) / self.reported

    def rows(self) -> Iterator[tuple[tuple[int, ...], int, float]]:
        """(partition, count, frequency) rows in descending lexicographic
        partition order, the CSV row order."""
        for parts in partitions_of(self.n):
            count = self.counts.get(parts, 0)
            yield parts, count, count / self.reported

    def total_variation_to_uniform(self) -> float:
        support = partitions_of(self.n)
        uniform = 1.0 / len(support)
        return 0.5 * sum(abs(self.frequency(parts) - uniform) for parts in support)


def run_partition_sampler(
    n: int,
    steps: int,
    burn_in: int,
    rng: RandomSource,
    sink: Callable[[tuple[int, ...]], None] | None = None,
    check_commutes: bool = False,
    start: Permutation | None = None,
) -> PartitionFrequencies:
    """Run the chain from the identity (or start), report the cycle type of
    every post-burn-in state to the sink, and tally class frequencies."""
    if burn_in < 0:
        raise ValueError(f"need burn_in >= 0, got {burn_in}")
    if steps <= burn_in:
        raise ValueError(f"need steps > burn_in, got steps={steps} burn_in={burn_in}")
    if start is None:
        start = identity(n)
    else:
        start = as_permutation(start)
        if len(start) != n:
            raise ValueError(f"start has degree {len(start)}, expected {n}")
    state = ChainState(current=start)
    counts: Counter = Counter()
    for _ in range(steps):
        state = chain_step(state, rng, check_commutes=check_commutes)
        if state.step_count > burn_in:
            parts = cycle_type(state.current)
            counts[parts] += 1
            if sink is not None:
                sink(parts)
    return PartitionFrequencies(n=n, steps=steps, burn_in=burn_in, counts=dict(counts))
