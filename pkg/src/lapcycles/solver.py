"""Exact linear assignment: Jonker-Volgenant shortest augmenting paths.

The dense solver runs in three stages: column reduction with reduction
transfer, two passes of augmenting row reduction, then Dijkstra-style
shortest augmenting paths on reduced costs for the rows still free.
Comparisons are exact (no epsilon) and scans run in increasing index
order, so a given matrix always yields the same permutation.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np

from .ensemble import DistanceMatrix
from .errors import InvariantError, SizeError, ValidationError

BRUTE_FORCE_MAX_N = 9


class InfeasibleAssignmentWarning(UserWarning):
    """A permutation uses an excluded (sentinel) diagonal entry."""


@dataclass(frozen=True, eq=False)
class Assignment:
    n: int
    sigma: np.ndarray
    cost: float

    def __post_init__(self):
        s = np.asarray(self.sigma, dtype=np.int64)
        s.setflags(write=False)
        object.__setattr__(self, "sigma", s)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(j) for j in self.sigma)


@numba.njit(cache=True)
def _column_reduction(cost, x, y, v, free_rows):
    n = cost.shape[0]
    for j in range(n):
        v[j] = np.inf
    for i in range(n):
        x[i] = -1
        for j in range(n):
            c = cost[i, j]
            if c < v[j]:
                v[j] = c
                y[j] = i
    unique = np.ones(n, dtype=np.bool_)
    for j in range(n - 1, -1, -1):
        i = y[j]
        if x[i] < 0:
            x[i] = j
        else:
            unique[i] = False
            y[j] = -1
    n_free = 0
    for i in range(n):
        if x[i] < 0:
            free_rows[n_free] = i
            n_free += 1
        elif unique[i]:
            # reduction transfer: give row i's slack to its assigned column
            j = x[i]
            best = np.inf
            for j2 in range(n):
                if j2 != j:
                    c = cost[i, j2] - v[j2]
                    if c < best:
                        best = c
            v[j] -= best
    return n_free


@numba.njit(cache=True)
def _augmenting_row_reduction(cost, n_free, free_rows, x, y, v):
    n = cost.shape[0]
    current = 0
    new_free = 0
    rr_cnt = 0
    while current < n_free:
        rr_cnt += 1
        free_i = free_rows[current]
        current += 1
        j1 = 0
        v1 = cost[free_i, 0] - v[0]
        j2 = -1
        v2 = np.inf
        for j in range(1, n):
            c = cost[free_i, j] - v[j]
            if c < v2:
                if c >= v1:
                    v2 = c
                    j2 = j
                else:
                    v2 = v1
                    v1 = c
                    j2 = j1
                    j1 = j
        i0 = y[j1]
        v1_new = v[j1] - (v2 - v1)
        v1_lowers = v1_new < v[j1]
        if rr_cnt < current * n:
            if v1_lowers:
                v[j1] = v1_new
            elif i0 >= 0 and j2 >= 0:
                j1 = j2
                i0 = y[j2]
            if i0 >= 0:
                if v1_lowers:
                    current -= 1
                    free_rows[current] = i0
                else:
                    free_rows[new_free] = i0
                    new_free += 1
        elif i0 >= 0:
            free_rows[new_free] = i0
            new_free += 1
        x[free_i] = j1
        y[j1] = free_i
    return new_free


@numba.njit(cache=True)
def _shortest_path(cost, start_i, y, v, pred, cols, d):
    """Dijkstra from ``start_i`` over reduced costs; returns the free column reached."""
    n = cost.shape[0]
    for j in range(n):
        cols[j] = j
        pred[j] = start_i
        d[j] = cost[start_i, j] - v[j]
    lo = 0
    hi = 0
    n_ready = 0
    final_j = -1
    round_min = 0.0
    while final_j == -1:
        if lo == hi:
            # pull every column at the current minimum distance into [lo, hi)
            n_ready = lo
            hi = lo + 1
            mind = d[cols[lo]]
            for k in range(hi, n):
                j = cols[k]
                dj = d[j]
                if dj <= mind:
                    if dj < mind:
                        hi = lo
                        mind = dj
                    cols[k] = cols[hi]
                    cols[hi] = j
                    hi += 1
            round_min = mind
            for k in range(lo, hi):
                if y[cols[k]] < 0:
                    final_j = cols[k]
                    break
        if final_j == -1:
            # scan rows assigned to the ready columns
            while lo != hi and final_j == -1:
                j = cols[lo]
                lo += 1
                i = y[j]
                mind = d[j]
                h = cost[i, j] - v[j] - mind
                for k in range(hi, n):
                    j = cols[k]
                    cred = cost[i, j] - v[j] - h
                    if cred < d[j]:
                        d[j] = cred
                        pred[j] = i
                        if cred == mind:
                            if y[j] < 0:
                                final_j = j
                                break
                            cols[k] = cols[hi]
                            cols[hi] = j
                            hi += 1
    for k in range(n_ready):
        j = cols[k]
        v[j] += d[j] - round_min
    return final_j


@numba.njit(cache=True)
def lapjv_kernel(cost):
    """Row-to-column optimal assignment of a dense square float64 matrix."""
    n = cost.shape[0]
    x = np.empty(n, dtype=np.int64)
    y = np.empty(n, dtype=np.int64)
    v = np.empty(n, dtype=np.float64)
    free_rows = np.empty(n, dtype=np.int64)
    n_free = _column_reduction(cost, x, y, v, free_rows)
    passes = 0
    while n_free > 0 and passes < 2:
        n_free = _augmenting_row_reduction(cost, n_free, free_rows, x, y, v)
        passes += 1
    if n_free > 0:
        pred = np.empty(n, dtype=np.int64)
        cols = np.empty(n, dtype=np.int64)
        d = np.empty(n, dtype=np.float64)
        for f in range(n_free):
            free_i = free_rows[f]
            j = _shortest_path(cost, free_i, y, v, pred, cols, d)
            i = -1
            while i != free_i:
                i = pred[j]
                y[j] = i
                k = j
                j = x[i]
                x[i] = k
    return x


def solve_entries(entries: np.ndarray, diagonal_excluded: bool) -> np.ndarray:
    """Optimal ``sigma`` for a raw cost array (the array is not modified)."""
    n = entries.shape[0]
    a = np.array(entries, dtype=np.float64)
    if diagonal_excluded:
        off_mask = ~np.eye(n, dtype=bool)
        off = a[off_mask]
        lo, hi = float(off.min()), float(off.max())
        shift = max(0.0, -lo)
        if shift:
            a[off_mask] += shift
            lo, hi = lo + shift, hi + shift
        # any diagonal cost above this dominates every derangement
        big = hi + (n - 1) * (hi - lo) + 1.0
        diag = np.diagonal(a)
        if np.any(~(diag > big)):
            np.fill_diagonal(a, big)
    else:
        shift = max(0.0, -float(a.min()))
        if shift:
            a += shift
    return lapjv_kernel(a)


def assignment_cost(m: DistanceMatrix, sigma) -> float:
    """Total cost sum_i d[i, sigma[i]] of a permutation on the original entries."""
    s = validate_permutation(sigma, m.n)
    if m.diagonal_excluded and np.any(s == np.arange(m.n)):
        warnings.warn(
            "permutation uses an excluded diagonal entry; cost includes the sentinel",
            InfeasibleAssignmentWarning,
            stacklevel=2,
        )
    return math.fsum(m.entries[np.arange(m.n), s])


def validate_permutation(sigma, n: int | None = None) -> np.ndarray:
    s = np.asarray(sigma)
    if s.ndim != 1 or (n is not None and s.shape[0] != n):
        raise ValidationError(f"permutation must be a flat sequence of length {n}")
    if s.size and not np.issubdtype(s.dtype, np.integer):
        if not np.all(s == np.round(s)):
            raise ValidationError("permutation entries must be integers")
        s = s.astype(np.int64)
    s = s.astype(np.int64, copy=False)
    size = s.shape[0]
    if size == 0 or s.min() < 0 or s.max() >= size or np.unique(s).size != size:
        raise ValidationError("not a bijection on {0..n-1}")
    return s


def solve_lap(m: DistanceMatrix) -> Assignment:
    """Minimum-cost permutation of ``m``; cost reported in original units."""
    sigma = solve_entries(m.entries, m.diagonal_excluded)
    if m.diagonal_excluded and np.any(sigma == np.arange(m.n)):
        raise InvariantError("solver selected an excluded diagonal entry")
    return Assignment(m.n, sigma, math.fsum(m.entries[np.arange(m.n), sigma]))


@lru_cache(maxsize=None)
def _candidate_permutations(n: int, derangements_only: bool) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    if derangements_only:
        perms = perms[np.all(perms != np.arange(n), axis=1)]
    perms.setflags(write=False)
    return perms


def brute_force_lap(m: DistanceMatrix) -> Assignment:
    """Exhaustive minimum over all admissible permutations (n <= 9).

    Candidates are scanned in lexicographic order and only a strictly
    smaller cost replaces the incumbent, so ties go to the
    lexicographically smallest permutation.
    """
    n = m.n
    if n > BRUTE_FORCE_MAX_N:
        raise SizeError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    perms = _candidate_permutations(n, m.diagonal_excluded)
    costs = m.entries[np.arange(n), perms].sum(axis=1)
    best = int(np.argmin(costs))  # first occurrence of the minimum
    sigma = perms[best].astype(np.int64)
    return Assignment(n, sigma, math.fsum(m.entries[np.arange(n), sigma]))
