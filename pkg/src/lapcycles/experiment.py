"""Monte Carlo sweeps over (n, lambda): solve many random instances, aggregate cycle statistics.

Every trial is a pure function of ``(master_seed, n, lambda, trial_index)``.
Trials are split into contiguous index blocks that may run in worker
processes; blocks are concatenated in index order before aggregation, so
summaries do not depend on the number of workers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .analytic import LinearFit, fit_linear
from .cycles import cycle_summary_kernel
from .ensemble import Distribution, EnsembleParams, draw_entries
from .errors import InsufficientDataError, InvariantError, ParameterError, ValidationError
from .solver import solve_entries


@dataclass(frozen=True)
class SweepConfig:
    n_values: Sequence[int]
    lambda_values: Sequence[float]
    trials: int
    master_seed: int = 0
    distribution: Distribution = Distribution.UNIFORM01
    allow_one_cycles: bool = False
    parallelism_hint: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "lambda_values", tuple(float(x) for x in self.lambda_values))
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if not self.n_values or not self.lambda_values:
            raise ParameterError("n_values and lambda_values must be non-empty")
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if self.parallelism_hint < 0:
            raise ParameterError("parallelism_hint must be >= 0 (0 = auto)")
        # validates every grid point up front
        for n in self.n_values:
            for lam in self.lambda_values:
                self.params(n, lam)

    def params(self, n: int, lam: float) -> EnsembleParams:
        return EnsembleParams(
            n=n,
            lam=lam,
            distribution=self.distribution,
            allow_one_cycles=self.allow_one_cycles,
            master_seed=self.master_seed,
        )

    @property
    def workers(self) -> int:
        return self.parallelism_hint or os.cpu_count() or 1


@dataclass(frozen=True)
class TrialRecord:
    n: int
    lam: float
    trial_index: int
    n_cycles: int
    two_cycle_count: int
    is_n_cycle: bool
    max_even_cycle_length: int
    tour_length: float


@dataclass
class TrialBatch:
    """Column-oriented records for one grid point, ordered by trial index."""

    n: int
    lam: float
    trial_index: np.ndarray
    n_cycles: np.ndarray
    two_cycle_count: np.ndarray
    is_n_cycle: np.ndarray
    max_even_cycle_length: np.ndarray
    tour_length: np.ndarray
    cycle_length_sum: np.ndarray | None = None

    def __len__(self) -> int:
        return int(self.trial_index.size)

    def records(self) -> Iterator[TrialRecord]:
        for k in range(len(self)):
            yield TrialRecord(
                n=self.n,
                lam=self.lam,
                trial_index=int(self.trial_index[k]),
                n_cycles=int(self.n_cycles[k]),
                two_cycle_count=int(self.two_cycle_count[k]),
                is_n_cycle=bool(self.is_n_cycle[k]),
                max_even_cycle_length=int(self.max_even_cycle_length[k]),
                tour_length=float(self.tour_length[k]),
            )

    @classmethod
    def from_records(cls, records: Sequence[TrialRecord]) -> TrialBatch:
        if not records:
            raise ValidationError("no records to aggregate")
        keys = {(r.n, r.lam) for r in records}
        if len(keys) != 1:
            raise ValidationError(f"records mix grid points: {sorted(keys)}")
        n, lam = keys.pop()
        col = lambda name, dt: np.array([getattr(r, name) for r in records], dtype=dt)  # noqa: E731
        return cls(
            n=n,
            lam=lam,
            trial_index=col("trial_index", np.int64),
            n_cycles=col("n_cycles", np.int64),
            two_cycle_count=col("two_cycle_count", np.int64),
            is_n_cycle=col("is_n_cycle", bool),
            max_even_cycle_length=col("max_even_cycle_length", np.int64),
            tour_length=col("tour_length", np.float64),
        )

    @classmethod
    def concatenate(cls, parts: Sequence[TrialBatch]) -> TrialBatch:
        first = parts[0]
        cat = lambda name: np.concatenate([getattr(p, name) for p in parts])  # noqa: E731
        return cls(
            n=first.n,
            lam=first.lam,
            trial_index=cat("trial_index"),
            n_cycles=cat("n_cycles"),
            two_cycle_count=cat("two_cycle_count"),
            is_n_cycle=cat("is_n_cycle"),
            max_even_cycle_length=cat("max_even_cycle_length"),
            tour_length=cat("tour_length"),
            cycle_length_sum=cat("cycle_length_sum"),
        )


@dataclass(frozen=True)
class SweepSummary:
    n: int
    lam: float
    trials: int
    mean_cycles: float
    sem_cycles: float
    p2_presence: float
    sem_p2: float
    mean_two_cycles: float
    sem_two_cycles: float
    p_n_cycle: float
    sem_p_n_cycle: float
    mean_length: float
    sem_length: float
    ratio_p2_over_nc: float
    even_cycle_violations: int = field(default=0)

    @property
    def trials_used(self) -> int:
        return self.trials


def _run_block(params: EnsembleParams, start: int, stop: int) -> TrialBatch:
    size = stop - start
    n = params.n
    n_cycles = np.empty(size, dtype=np.int64)
    two = np.empty(size, dtype=np.int64)
    is_n = np.empty(size, dtype=bool)
    max_even = np.empty(size, dtype=np.int64)
    total = np.empty(size, dtype=np.int64)
    length = np.empty(size, dtype=np.float64)
    rows = np.arange(n)
    excluded = not params.allow_one_cycles
    for k, t in enumerate(range(start, stop)):
        d = draw_entries(params, t)
        sigma = solve_entries(d, excluded)
        if excluded and np.any(sigma == rows):
            raise InvariantError(f"trial {t} at n={n}, lambda={params.lam}: diagonal selected")
        n_cycles[k], two[k], is_n[k], max_even[k], total[k] = cycle_summary_kernel(sigma)
        length[k] = math.fsum(d[rows, sigma])
    return TrialBatch(
        n=n,
        lam=params.lam,
        trial_index=np.arange(start, stop, dtype=np.int64),
        n_cycles=n_cycles,
        two_cycle_count=two,
        is_n_cycle=is_n,
        max_even_cycle_length=max_even,
        tour_length=length,
        cycle_length_sum=total,
    )


def run_trial(config: SweepConfig, n: int, lam: float, trial_index: int) -> TrialRecord:
    """Generate, solve and decompose one instance."""
    if n not in config.n_values or float(lam) not in config.lambda_values:
        raise ParameterError(f"(n={n}, lambda={lam}) is not on the configured grid")
    batch = _run_block(config.params(n, lam), trial_index, trial_index + 1)
    return next(batch.records())


def _blocks(trials: int, workers: int) -> list[tuple[int, int]]:
    if workers <= 1:
        return [(0, trials)]
    size = max(1, math.ceil(trials / (workers * 4)))
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def run_grid_point(
    config: SweepConfig, n: int, lam: float, executor: ProcessPoolExecutor | None = None
) -> TrialBatch:
    params = config.params(n, lam)
    blocks = _blocks(config.trials, config.workers if executor else 1)
    if executor is None:
        parts = [_run_block(params, a, b) for a, b in blocks]
    else:
        futures = [executor.submit(_run_block, params, a, b) for a, b in blocks]
        parts = [f.result() for f in futures]
    return TrialBatch.concatenate(parts)


def _mean_sem(values: np.ndarray) -> tuple[float, float]:
    m = values.size
    mean = math.fsum(values.tolist()) / m
    if m < 2:
        return mean, 0.0
    var = math.fsum(((values - mean) ** 2).tolist()) / (m - 1)
    return mean, math.sqrt(var / m)


def _proportion(flags: np.ndarray) -> tuple[float, float]:
    m = flags.size
    p = int(np.count_nonzero(flags)) / m
    return p, math.sqrt(p * (1.0 - p) / m)


def aggregate_batch(batch: TrialBatch) -> SweepSummary:
    """Means with SEM = sample sd (n-1 denominator) / sqrt(M); proportions with binomial SEM."""
    if len(batch) == 0:
        raise ValidationError("no records to aggregate")
    if np.any(batch.n_cycles < 1):
        raise InvariantError("record with zero cycles")
    if batch.cycle_length_sum is not None and np.any(batch.cycle_length_sum != batch.n):
        raise InvariantError("cycle lengths do not sum to n")
    if np.any(2 * batch.two_cycle_count > batch.n) or np.any(batch.two_cycle_count > batch.n_cycles):
        raise InvariantError("inconsistent two-cycle count")
    if not np.all(np.isfinite(batch.tour_length)):
        raise InvariantError("non-finite tour length")
    mean_c, sem_c = _mean_sem(batch.n_cycles.astype(np.float64))
    mean_two, sem_two = _mean_sem(batch.two_cycle_count.astype(np.float64))
    p2, sem_p2 = _proportion(batch.two_cycle_count > 0)
    pn, sem_pn = _proportion(batch.is_n_cycle)
    mean_len, sem_len = _mean_sem(batch.tour_length)
    return SweepSummary(
        n=batch.n,
        lam=batch.lam,
        trials=len(batch),
        mean_cycles=mean_c,
        sem_cycles=sem_c,
        p2_presence=p2,
        sem_p2=sem_p2,
        mean_two_cycles=mean_two,
        sem_two_cycles=sem_two,
        p_n_cycle=pn,
        sem_p_n_cycle=sem_pn,
        mean_length=mean_len,
        sem_length=sem_len,
        ratio_p2_over_nc=mean_two / mean_c,
        even_cycle_violations=int(np.count_nonzero(batch.max_even_cycle_length > 2)),
    )


def aggregate(records: Sequence[TrialRecord]) -> SweepSummary:
    """Summary of records from a single (n, lambda) grid point."""
    return aggregate_batch(TrialBatch.from_records(records))


def run_sweep(
    config: SweepConfig,
    keep_records: bool = False,
    record_sink: Callable[[TrialRecord], None] | None = None,
) -> tuple[list[SweepSummary], list[TrialRecord] | None]:
    """Evaluate every (n, lambda) grid point, n-major.

    Raw records are returned only when ``keep_records`` is set and are
    streamed to ``record_sink`` (in trial order) when one is given.
    """
    summaries: list[SweepSummary] = []
    kept: list[TrialRecord] | None = [] if keep_records else None
    executor = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        for n in config.n_values:
            for lam in config.lambda_values:
                batch = run_grid_point(config, n, lam, executor)
                summaries.append(aggregate_batch(batch))
                if kept is not None or record_sink is not None:
                    for rec in batch.records():
                        if record_sink is not None:
                            record_sink(rec)
                        if kept is not None:
                            kept.append(rec)
    finally:
        if executor is not None:
            executor.shutdown()
    return summaries, kept


@dataclass(frozen=True)
class P2DecayFit:
    lam: float
    slope: float
    intercept: float
    r_squared: float
    xi: float
    points: tuple[tuple[int, float], ...]
    dropped: tuple[int, ...]

    @property
    def prefactor(self) -> float:
        return math.exp(self.intercept)


def fit_p2_decay(summaries: Sequence[SweepSummary]) -> P2DecayFit:
    """Fit ln P2 = intercept + slope * n, P2 = probability of at least one 2-cycle.

    Grid points where no 2-cycle was observed are dropped and listed.
    """
    lams = {s.lam for s in summaries}
    if len(lams) != 1:
        raise ParameterError(f"decay fit needs a single lambda, got {sorted(lams)}")
    points, dropped = [], []
    for s in sorted(summaries, key=lambda s: s.n):
        if s.p2_presence > 0:
            points.append((s.n, math.log(s.p2_presence)))
        else:
            dropped.append(s.n)
    if len(points) < 3:
        raise InsufficientDataError(
            f"only {len(points)} grid points with P2 > 0 (dropped n = {dropped})"
        )
    fit: LinearFit = fit_linear(points)
    return P2DecayFit(
        lam=lams.pop(),
        slope=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        xi=math.exp(-fit.slope),
        points=tuple(points),
        dropped=tuple(dropped),
    )


def p2_decay_experiment(config: SweepConfig) -> P2DecayFit:
    """Run the sweep for one negative lambda over several n and fit the 2-cycle decay."""
    if len(config.lambda_values) != 1 or config.lambda_values[0] >= 0:
        raise ParameterError("decay experiment needs exactly one lambda < 0")
    if len(config.n_values) < 3:
        raise ParameterError("decay experiment needs at least 3 values of n")
    summaries, _ = run_sweep(config)
    return fit_p2_decay(summaries)
