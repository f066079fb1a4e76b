"""Longest-increasing-subsequence statistics for wreath-product permutation
groups: exact enumeration, seeded Monte Carlo, a tail-bound check, and a
centralizer-walk partition sampler."""

__version__ = "0.1.0"

from .decomp import BlockDecomposition, decompose, verify_lower_bound
from .errors import CapExceeded, InvariantViolation
from .exact import (
    DistributionTable,
    LisMoments,
    MomentReport,
    enumerate_signed,
    enumerate_sym,
    enumerate_wreath,
    lis_moments,
    verify_moment_identities,
)
from .lis import LisWitness, lis_colored, lis_fast, lis_oracle, lis_signed
from .montecarlo import (
    ConjectureCell,
    RunResult,
    ScanCell,
    SummaryStats,
    TailReport,
    TrialPlan,
    conjecture_scan,
    convergence_scan,
    iter_records,
    run_trials,
    summarize,
    tail_check,
)
from .partitions import (
    ChainState,
    PartitionFrequencies,
    centralizer_order,
    chain_step,
    cycle_type,
    cycles_of,
    partitions_of,
    run_partition_sampler,
    sample_centralizer,
)
from .perm import (
    Permutation,
    RandomSource,
    as_permutation,
    compose,
    from_cycles,
    identity,
    inverse,
    is_permutation,
    sample_uniform,
)
from .wreath import (
    ColoredPermutation,
    SignedPermutation,
    WreathElement,
    identity_element,
    sample_colored,
    sample_wreath,
    signed_word,
    to_signed,
    to_word,
)

__all__ = [
    "__version__",
    "BlockDecomposition",
    "CapExceeded",
    "ChainState",
    "ColoredPermutation",
    "ConjectureCell",
    "DistributionTable",
    "InvariantViolation",
    "LisMoments",
    "LisWitness",
    "MomentReport",
    "PartitionFrequencies",
    "Permutation",
    "RandomSource",
    "RunResult",
    "ScanCell",
    "SignedPermutation",
    "SummaryStats",
    "TailReport",
    "TrialPlan",
    "WreathElement",
    "as_permutation",
    "centralizer_order",
    "chain_step",
    "compose",
    "conjecture_scan",
    "convergence_scan",
    "cycle_type",
    "cycles_of",
    "decompose",
    "enumerate_signed",
    "enumerate_sym",
    "enumerate_wreath",
    "from_cycles",
    "identity",
    "identity_element",
    "inverse",
    "is_permutation",
    "iter_records",
    "lis_colored",
    "lis_fast",
    "lis_moments",
    "lis_oracle",
    "lis_signed",
    "partitions_of",
    "run_partition_sampler",
    "run_trials",
    "sample_centralizer",
    "sample_colored",
    "sample_uniform",
    "sample_wreath",
    "signed_word",
    "summarize",
    "tail_check",
    "to_signed",
    "to_word",
    "verify_lower_bound",
    "verify_moment_identities",
]
