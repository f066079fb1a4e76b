import numpy as np
import pytest

from wreathlis import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Load the compiled kernels once so per-test runtime assertions measure
    # the algorithms, not the first-call JIT cost.
    word = np.array([2, 1, 3], dtype=np.int64)
    mat = np.array([[2, 1, 3], [1, 2, 3]], dtype=np.int64)
    _kernels.lis_length(word)
    _kernels.lis_witness_indices(word)
    _kernels.lis_length_rows(mat)
    _kernels.lis_length_quadratic(word)
    _kernels.patience_vs_quadratic_mismatches(mat)
