"""Self-check battery behind ``lapcycles verify``.

Each check returns a :class:`CheckResult`.  The fast level runs exact
oracles (brute-force assignment, exhaustive permutation enumeration,
independent recurrences); the full level adds Monte Carlo comparisons
against the analytic predictions.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import solver as _solver
from .analytic import (
    derangement_numbers,
    expected_cycles_exact,
    expected_cycles_series,
    harmonic,
    parisi_length,
    stirling_table,
)
from .cycles import decompose
from .ensemble import Distribution, EnsembleParams, from_array, generate_matrix
from .experiment import SweepConfig, run_sweep


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


# solver output on the all-ones 4x4 instance; pins the deterministic tie rule
TIE_RULE_EXPECTED = (3, 0, 1, 2)


def enumerate_cycle_counts(n: int, r: int) -> dict[int, int]:
    """k -> number of permutations of n elements with k cycles, all of length >= r."""
    counts: dict[int, int] = {}
    for perm in itertools.permutations(range(n)):
        seen = [False] * n
        k = 0
        ok = True
        for s in range(n):
            if seen[s]:
                continue
            length = 0
            j = s
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length < r:
                ok = False
                break
            k += 1
        if ok:
            counts[k] = counts.get(k, 0) + 1
    return counts


def check_solver_oracle(n_max: int = 6, instances: int = 100, seed: int = 11) -> CheckResult:
    worst = 0.0
    checked = 0
    for n in range(2, n_max + 1):
        for lam in (-1.0, 0.0, 1.0):
            p = EnsembleParams(n, lam, master_seed=seed)
            for t in range(instances):
                m = generate_matrix(p, t)
                a = _solver.solve_lap(m)
                b = _solver.brute_force_lap(m)
                worst = max(worst, abs(a.cost - b.cost))
                checked += 1
    return CheckResult("solver == brute force", worst <= 1e-9, f"{checked} instances, max |diff| {worst:.2e}")


def check_solver_examples() -> CheckResult:
    inf = math.inf
    a2 = _solver.solve_lap(from_array([[inf, 5], [3, inf]]))
    a3 = _solver.solve_lap(from_array([[inf, 1, 9], [9, inf, 1], [1, 9, inf]]))
    ok = a2.as_tuple() == (1, 0) and a2.cost == 8 and a3.as_tuple() == (1, 2, 0) and a3.cost == 3
    return CheckResult("solver hand examples", ok, f"n=2 {a2.as_tuple()} {a2.cost}; n=3 {a3.as_tuple()} {a3.cost}")


def check_tie_rule() -> CheckResult:
    m = from_array(np.ones((4, 4)))
    got = [_solver.solve_lap(m).as_tuple() for _ in range(3)]
    ok = all(g == TIE_RULE_EXPECTED for g in got)
    return CheckResult("deterministic tie rule", ok, f"got {got[0]}, expected {TIE_RULE_EXPECTED}")


def check_stirling_enumeration(n_max: int = 8) -> CheckResult:
    bad = []
    for r in (1, 2, 3):
        table = stirling_table(r, n_max)
        for n in range(max(r, 1), n_max + 1):
            counts = enumerate_cycle_counts(n, r)
            row = {k: v for k, v in enumerate(table.row(n)) if v}
            if row != counts:
                bad.append((r, n))
    return CheckResult("Stirling table == enumeration", not bad, f"n <= {n_max}, mismatches {bad}")


def check_exact_vs_series(n_max: int = 40) -> CheckResult:
    bad = [
        (r, n)
        for r in (2, 3)
        for n in range(r, n_max + 1)
        if expected_cycles_exact(r, n) != expected_cycles_series(r, n)
    ]
    return CheckResult("exact mean == EGF ratio", not bad, f"r in (2,3), n <= {n_max}, mismatches {bad}")


def check_harmonic(n_max: int = 100) -> CheckResult:
    bad = [n for n in range(1, n_max + 1) if expected_cycles_exact(1, n) != harmonic(n)]
    return CheckResult("r=1 mean == H_n", not bad, f"n <= {n_max}, mismatches {bad}")


def check_derangements(n_max: int = 60) -> CheckResult:
    t = stirling_table(2, n_max)
    d = derangement_numbers(n_max)
    bad = [n for n in range(2, n_max + 1) if t.row_sum(n) != d[n]]
    return CheckResult("d_2 row sums == derangements", not bad, f"n <= {n_max}")


def check_small_means() -> CheckResult:
    vals = (expected_cycles_exact(2, 4), expected_cycles_exact(3, 6))
    ok = vals == (Fraction(4, 3), Fraction(5, 4))
    return CheckResult("r=2,n=4 -> 4/3; r=3,n=6 -> 5/4", ok, f"got {vals[0]}, {vals[1]}")


def check_cycles() -> CheckResult:
    rng = np.random.default_rng(5)
    ok = True
    for _ in range(200):
        n = int(rng.integers(1, 30))
        s = decompose(rng.permutation(n))
        ok &= sum(k * c for k, c in s.cycle_lengths.items()) == n
    s4 = decompose([1, 0, 3, 2])
    ok &= dict(s4.cycle_lengths) == {2: 2} and s4.n_cycles == 2
    return CheckResult("cycle decomposition", bool(ok), "random permutations + (1,0,3,2)")


def _mc_check(name: str, config: SweepConfig, target: float, field: str = "mean_cycles") -> CheckResult:
    (s,), _ = run_sweep(config)
    value = getattr(s, field)
    sem = getattr(s, "sem_" + ("cycles" if field == "mean_cycles" else "length"))
    dev = abs(value - target)
    return CheckResult(name, dev <= 3 * sem, f"{value:.5f} vs {target:.5f} (3 SEM = {3 * sem:.5f})")


def check_mc_lambda_minus_one() -> CheckResult:
    cfg = SweepConfig([100], [-1.0], 10_000, master_seed=2024)
    return _mc_check("MC lambda=-1, n=100 vs exact d_3 mean", cfg, float(expected_cycles_exact(3, 100)))


def check_mc_lambda_zero() -> CheckResult:
    cfg = SweepConfig([25], [0.0], 10_000, master_seed=2024)
    return _mc_check("MC lambda=0, n=25 vs exact d_2 mean", cfg, float(expected_cycles_exact(2, 25)))


def check_mc_parisi() -> CheckResult:
    cfg = SweepConfig(
        [50], [0.0], 5_000, master_seed=2024, distribution=Distribution.EXPONENTIAL1, allow_one_cycles=True
    )
    return _mc_check("MC exponential length vs sum 1/m^2", cfg, parisi_length(50), field="mean_length")


def check_mc_symmetric() -> CheckResult:
    cfg = SweepConfig([50], [1.0], 1_000, master_seed=2024)
    (s,), _ = run_sweep(cfg)
    return CheckResult("MC lambda=1: no even cycles > 2", s.even_cycle_violations == 0, f"{s.even_cycle_violations} violations")


FAST_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_solver_examples,
    check_solver_oracle,
    check_tie_rule,
    check_cycles,
    check_small_means,
    check_stirling_enumeration,
    check_exact_vs_series,
    check_harmonic,
    check_derangements,
)
FULL_CHECKS: tuple[Callable[[], CheckResult], ...] = FAST_CHECKS + (
    check_mc_lambda_zero,
    check_mc_lambda_minus_one,
    check_mc_symmetric,
    check_mc_parisi,
)


def run_checks(level: str = "fast") -> list[CheckResult]:
    checks = {"fast": FAST_CHECKS, "full": FULL_CHECKS}[level]
    results = []
    for check in checks:
        t0 = time.perf_counter()
        try:
            res = check()
        except Exception as exc:  # a crash is a failed check, not a crashed battery
            res = CheckResult(check.__name__, False, f"raised {type(exc).__name__}: {exc}")
        results.append(CheckResult(res.name, res.passed, res.detail, time.perf_counter() - t0))
    return results
