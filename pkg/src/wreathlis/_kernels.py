"""Compiled inner loops for LIS work over int64 arrays.

Everything here assumes distinct entries; callers validate. Positions are
zero-based in this module and converted at the public boundaries.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_SENTINEL = -(2**62)  # below any word entry we ever see


@njit(cache=True, nogil=True)
def lis_length(word):
    """Patience sorting, tails only: O(m log m) LIS length."""
    m = word.shape[0]
    tails = np.empty(m, np.int64)
    size = 0
    for i in range(m):
        x = word[i]
        lo = 0
        hi = size
        while lo < hi:
            mid = (lo + hi) >> 1
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = x
        if lo == size:
            size += 1
    return size


@njit(cache=True, nogil=True)
def _pile_indices(word, piles):
    """Fill piles[i] with the LIS length ending at i; return the LIS length."""
    m = word.shape[0]
    tails = np.empty(m, np.int64)
    size = 0
    for i in range(m):
        x = word[i]
        lo = 0
        hi = size
        while lo < hi:
            mid = (lo + hi) >> 1
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = x
        piles[i] = lo + 1
        if lo == size:
            size += 1
    return size


@njit(cache=True, nogil=True)
def lis_witness_indices(word):
    """Zero-based positions of the lexicographically smallest maximum-length
    increasing subsequence.

    A position can open the remaining chain iff the LIS of the suffix starting
    there is long enough; scanning left to right and taking the first
    compatible position at every step is therefore greedy-optimal, and
    minimizes the position sequence lexicographically.
    """
    m = word.shape[0]
    if m == 0:
        return np.empty(0, np.int64)
    # LIS length of the suffix starting at i == LIS length ending at the
    # mirrored position of the reversed, negated word.
    rev = np.empty(m, np.int64)
    for i in range(m):
        rev[i] = -word[m - 1 - i]
    start_rev = np.empty(m, np.int64)
    total = _pile_indices(rev, start_rev)
    out = np.empty(total, np.int64)
    need = total
    prev = _SENTINEL
    i = 0
    for r in range(total):
        while word[i] <= prev or start_rev[m - 1 - i] < need:
            i += 1
        out[r] = i
        prev = word[i]
        need -= 1
        i += 1
    return out


@njit(cache=True, nogil=True)
def lis_length_rows(mat):
    """LIS length of each row of a 2-d array."""
    n, k = mat.shape
    out = np.empty(n, np.int64)
    tails = np.empty(k, np.int64)
    for r in range(n):
        size = 0
        for c in range(k):
            x = mat[r, c]
            lo = 0
            hi = size
            while lo < hi:
                mid = (lo + hi) >> 1
                if tails[mid] < x:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = x
            if lo == size:
                size += 1
        out[r] = size
    return out


@njit(cache=True, nogil=True)
def lis_length_quadratic(word):
    """O(m^2) dynamic program; the independent oracle for lis_length."""
    m = word.shape[0]
    if m == 0:
        return 0
    best_ending = np.empty(m, np.int64)
    out = 0
    for i in range(m):
        x = word[i]
        best = 0
        for j in range(i):
            if word[j] < x and best_ending[j] > best:
                best = best_ending[j]
        best_ending[i] = best + 1
        if best_ending[i] > out:
            out = best_ending[i]
    return out


@njit(cache=True, nogil=True)
def patience_vs_quadratic_mismatches(mat):
    """Number of rows where the two LIS algorithms disagree."""
    bad = 0
    for r in range(mat.shape[0]):
        row = mat[r]
        if lis_length(row) != lis_length_quadratic(row):
            bad += 1
    return bad
