"""Cycle decomposition of permutations and the statistics measured on optimal assignments."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numba
import numpy as np

from .errors import ParameterError
from .solver import validate_permutation


@dataclass(frozen=True)
class CycleStats:
    n: int
    cycle_lengths: Mapping[int, int]
    n_cycles: int
    two_cycle_count: int
    is_n_cycle: bool
    max_even_cycle_length: int


def cycles_of(sigma) -> list[list[int]]:
    """Cycles of ``sigma`` in order of their smallest element."""
    s = validate_permutation(sigma)
    seen = np.zeros(s.size, dtype=bool)
    out = []
    for start in range(s.size):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = int(s[j])
        out.append(cyc)
    return out


def decompose(sigma) -> CycleStats:
    """Cycle-length histogram of a permutation (only nonzero counts are stored)."""
    s = validate_permutation(sigma)
    n = int(s.size)
    hist: dict[int, int] = {}
    for cyc in cycles_of(s):
        hist[len(cyc)] = hist.get(len(cyc), 0) + 1
    n_cycles = sum(hist.values())
    evens = [k for k in hist if k % 2 == 0]
    return CycleStats(
        n=n,
        cycle_lengths=MappingProxyType(dict(sorted(hist.items()))),
        n_cycles=n_cycles,
        two_cycle_count=hist.get(2, 0),
        is_n_cycle=hist.get(n, 0) == 1 and n_cycles == 1,
        max_even_cycle_length=max(evens, default=0),
    )


def count_k_cycles(stats: CycleStats, k: int) -> int:
    if not 1 <= k <= stats.n:
        raise ParameterError(f"k must lie in 1..{stats.n}, got {k}")
    return stats.cycle_lengths.get(k, 0)


@numba.njit(cache=True)
def cycle_summary_kernel(sigma):
    """(n_cycles, two_cycles, is_n_cycle, max_even_length, length_sum) without allocation churn."""
    n = sigma.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    n_cycles = 0
    two = 0
    max_even = 0
    total = 0
    longest = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            length += 1
            j = sigma[j]
        n_cycles += 1
        total += length
        if length == 2:
            two += 1
        if length % 2 == 0 and length > max_even:
            max_even = length
        if length > longest:
            longest = length
    return n_cycles, two, longest == n and n_cycles == 1, max_even, total
