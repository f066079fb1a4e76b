import doctest
import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest

import wreathlis.partitions
from wreathlis.errors import InvariantViolation
from wreathlis.partitions import (
    ChainState,
    PartitionFrequencies,
    centralizer_order,
    chain_step,
    commutes,
    conjugacy_class_size,
    cycle_type,
    cycles_of,
    partitions_of,
    run_partition_sampler,
    sample_centralizer,
)
from wreathlis.perm import RandomSource, compose, identity


def brute_centralizer(s):
    m = len(s)
    return [tuple(t) for t in itertools.permutations(range(1, m + 1)) if commutes(s, t)]


def test_doctests():
    failures, _ = doctest.testmod(wreathlis.partitions)
    assert failures == 0


def test_cycles_canonical_form():
    assert cycles_of((1, 2, 3)) == ((1,), (2,), (3,))
    assert cycles_of((2, 3, 1, 5, 4)) == ((1, 2, 3), (4, 5))
    # each cycle starts at its minimum and follows the permutation
    assert cycles_of((3, 1, 2)) == ((1, 3, 2),)
    for p in itertools.permutations(range(1, 6)):
        cycles = cycles_of(p)
        assert sorted(x for c in cycles for x in c) == list(range(1, 6))
        for c in cycles:
            assert c[0] == min(c)
            for i, x in enumerate(c):
                assert p[x - 1] == c[(i + 1) % len(c)]
        assert [c[0] for c in cycles] == sorted(c[0] for c in cycles)


def test_cycle_type_is_a_partition():
    assert cycle_type((2, 1, 3)) == (2, 1)
    assert cycle_type((2, 3, 1, 5, 4)) == (3, 2)
    for p in itertools.permutations(range(1, 6)):
        parts = cycle_type(p)
        assert sum(parts) == 5
        assert list(parts) == sorted(parts, reverse=True)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_centralizer_order_matches_brute_force(m):
    seen = set()
    for p in itertools.permutations(range(1, m + 1)):
        parts = cycle_type(p)
        if parts in seen:
            continue
        seen.add(parts)
        assert centralizer_order(parts) == len(brute_centralizer(p))
        assert conjugacy_class_size(m, parts) == math.factorial(m) // centralizer_order(parts)


def test_conjugacy_class_size_validates_degree():
    with pytest.raises(ValueError):
        conjugacy_class_size(4, (3, 2))


def test_sampled_elements_commute_and_lie_in_the_centralizer():
    rng = RandomSource(41, 0)
    for s in ((1, 2, 3), (2, 1, 3), (2, 3, 1), (2, 1, 4, 3), (2, 3, 1, 5, 4, 6, 7)):
        centralizer = set(brute_centralizer(s))
        for _ in range(150):
            t = sample_centralizer(s, rng)
            assert commutes(s, t)
            assert t in centralizer


@pytest.mark.parametrize(
    "s",
    [
        (1, 2, 3),        # identity: centralizer is all of S_3
        (2, 1, 3),        # transposition: centralizer of order 2
        (2, 3, 1),        # 3-cycle: centralizer of order 3
        (2, 1, 4, 3),     # type (2,2): centralizer of order 8
    ],
)
def test_sampler_is_uniform_on_the_centralizer(s):
    rng = RandomSource(42, 0)
    centralizer = brute_centralizer(s)
    draws = 1000 * len(centralizer)
    counts = Counter(sample_centralizer(s, rng) for _ in range(draws))
    assert set(counts) == set(centralizer)
    expected = draws / len(centralizer)
    chi2 = sum((counts[t] - expected) ** 2 / expected for t in centralizer)
    # 1e-4 upper quantile of chi-square at df <= 23 stays below 52
    assert chi2 < 52


def test_transposition_centralizer_in_s3():
    # the commuting elements of (1 2) are exactly the identity and itself
    assert sorted(brute_centralizer((2, 1, 3))) == [(1, 2, 3), (2, 1, 3)]


def test_chain_step_counts_and_checks():
    state = ChainState(current=identity(4))
    rng = RandomSource(43, 0)
    nxt = chain_step(state, rng, check_commutes=True)
    assert nxt.step_count == 1
    assert len(nxt.current) == 4
    with pytest.raises(ValueError):
        ChainState(current=(1, 1))
    with pytest.raises(ValueError):
        ChainState(current=(1, 2), step_count=-1)


def test_partitions_of_listing():
    assert partitions_of(0) == ((),)
    assert partitions_of(1) == ((1,),)
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert len(partitions_of(5)) == 7
    assert len(partitions_of(10)) == 42


def test_sampler_validation():
    rng = RandomSource(44, 0)
    with pytest.raises(ValueError):
        run_partition_sampler(3, steps=5, burn_in=5, rng=rng)
    with pytest.raises(ValueError):
        run_partition_sampler(3, steps=5, burn_in=-1, rng=rng)
    with pytest.raises(ValueError):
        run_partition_sampler(3, steps=5, burn_in=0, rng=rng, start=(1, 2))


def test_sampler_degenerate_degree_one():
    freqs = run_partition_sampler(1, steps=20, burn_in=3, rng=RandomSource(45, 0))
    assert freqs.counts == {(1,): 17}
    assert freqs.reported == 17
    assert freqs.total_variation_to_uniform() == 0.0


def test_sampler_streams_every_reported_step():
    seen = []
    freqs = run_partition_sampler(
        3, steps=500, burn_in=50, rng=RandomSource(46, 0), sink=seen.append,
        check_commutes=True,
    )
    assert len(seen) == 450
    assert Counter(seen) == Counter(dict(freqs.counts))


@pytest.mark.parametrize("n, steps", [(3, 120_000), (4, 200_000)])
def test_stationary_distribution_is_uniform_on_partitions(n, steps):
    freqs = run_partition_sampler(n, steps=steps, burn_in=1000, rng=RandomSource(47, 0))
    assert freqs.total_variation_to_uniform() < 0.02
    uniform = 1.0 / len(partitions_of(n))
    for parts in partitions_of(n):
        assert abs(freqs.frequency(parts) - uniform) < 0.015


def test_frequency_rows_cover_full_support():
    freqs = PartitionFrequencies(n=4, steps=12, burn_in=2, counts={(4,): 6, (2, 2): 4})
    rows = list(freqs.rows())
    assert [r[0] for r in rows] == list(partitions_of(4))
    assert [r[1] for r in rows] == [6, 0, 4, 0, 0]
    assert rows[0][2] == 0.6
    # TV by hand: 0.5 * (|.6-.2| + |.0-.2| + |.4-.2| + |.0-.2| + |.0-.2|)
    assert freqs.total_variation_to_uniform() == pytest.approx(0.6)


def test_chain_is_reversible_on_s3_in_exact_arithmetic():
    # Transition kernel: K(s, t) = 1 / |centralizer(s)| when s and t
    # commute, else 0. Stationary law: class c gets weight 1/(number of
    # classes), split evenly inside the class. Detailed balance must hold
    # exactly, term by term, in rational arithmetic.
    elements = list(itertools.permutations(range(1, 4)))
    num_classes = len(partitions_of(3))

    def pi(s):
        return Fraction(1, num_classes * conjugacy_class_size(3, cycle_type(s)))

    def k(s, t):
        if commutes(s, t):
            return Fraction(1, centralizer_order(cycle_type(s)))
        return Fraction(0)

    assert sum(pi(s) for s in elements) == 1
    for s in elements:
        assert sum(k(s, t) for t in elements) == 1
        for t in elements:
            assert pi(s) * k(s, t) == pi(t) * k(t, s)
