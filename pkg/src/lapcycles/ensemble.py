"""Random distance matrices with tunable correlation between d_ij and d_ji.

Off-diagonal entries are ``d_ij = R_ij + lam * R_ji`` with ``R`` i.i.d.
``lam = 1`` gives symmetric instances, ``lam = -1`` antisymmetric ones.
The diagonal holds a large finite sentinel so the optimal permutation is a
derangement, unless one-cycles are explicitly allowed.
"""

from __future__ import annotations

import enum
import io
import os
from dataclasses import dataclass, field, replace
from typing import TextIO

import numpy as np

from .errors import ParameterError, ValidationError

_MASK64 = (1 << 64) - 1
LAMBDA_SCALE = 10**6


class Distribution(str, enum.Enum):
    UNIFORM01 = "uniform"
    EXPONENTIAL1 = "exponential"


@dataclass(frozen=True)
class EnsembleParams:
    n: int
    lam: float
    distribution: Distribution = Distribution.UNIFORM01
    allow_one_cycles: bool = False
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError(f"n must be an integer >= 2, got {self.n}")
        if not -1.0 <= self.lam <= 1.0:
            raise ParameterError(f"lambda must lie in [-1, 1], got {self.lam}")
        if self.distribution is Distribution.EXPONENTIAL1 and self.lam != 0.0:
            raise ParameterError("exponential entries are only supported at lambda = 0")
        if not 0 <= self.master_seed <= _MASK64:
            raise ParameterError("master_seed must be an unsigned 64-bit integer")

    @property
    def lambda_code(self) -> int:
        """Fixed-point encoding of lambda used for seeding."""
        return lambda_code(self.lam)


def lambda_code(lam: float) -> int:
    return int(round(lam * LAMBDA_SCALE))


def sentinel_value(n: int) -> float:
    """Diagonal stand-in for +infinity; every derangement of a [-1, 2] matrix costs <= 2n."""
    return float(4 * n + 1)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    n: int
    entries: np.ndarray
    diagonal_excluded: bool
    params: EnsembleParams | None = None
    trial_index: int | None = None
    sentinel: float = field(default=0.0)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.shape != (self.n, self.n):
            raise ValidationError(f"entries must be {self.n}x{self.n}, got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    def off_diagonal(self) -> np.ndarray:
        return self.entries[~np.eye(self.n, dtype=bool)]

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.diagonal_excluded == other.diagonal_excluded
            and np.array_equal(self.entries, other.entries)
        )


def trial_seed(params: EnsembleParams, trial_index: int) -> np.random.SeedSequence:
    """Per-trial seed: a hash of (master_seed, n, lambda code, trial_index).

    Depends on nothing else, so results do not change with execution order
    or the number of workers.
    """
    if trial_index < 0:
        raise ParameterError(f"trial_index must be >= 0, got {trial_index}")
    words = [params.master_seed, params.n, params.lambda_code & _MASK64, trial_index]
    return np.random.SeedSequence(words)


def trial_rng(params: EnsembleParams, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(trial_seed(params, trial_index)))


def draw_entries(params: EnsembleParams, trial_index: int) -> np.ndarray:
    """Writable n x n array of costs for one trial (diagonal already handled)."""
    n = params.n
    u = trial_rng(params, trial_index).random((n, n))
    if params.distribution is Distribution.EXPONENTIAL1:
        r = -np.log1p(-u)
    else:
        r = u
    lam = params.lam
    if lam == 0.0:
        d = r
    else:
        d = r + lam * r.T
    if not params.allow_one_cycles:
        np.fill_diagonal(d, sentinel_value(n))
    return d


def generate_matrix(params: EnsembleParams, trial_index: int) -> DistanceMatrix:
    """Instance ``trial_index`` of the ensemble described by ``params``."""
    d = draw_entries(params, trial_index)
    return DistanceMatrix(
        n=params.n,
        entries=d,
        diagonal_excluded=not params.allow_one_cycles,
        params=params,
        trial_index=trial_index,
        sentinel=sentinel_value(params.n) if not params.allow_one_cycles else 0.0,
    )


def from_array(entries, diagonal_excluded: bool = True) -> DistanceMatrix:
    """Wrap a hand-built square array; infinite diagonal entries become the sentinel."""
    a = np.array(entries, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
        raise ValidationError(f"need a square matrix of size >= 2, got shape {a.shape}")
    n = a.shape[0]
    off = a[~np.eye(n, dtype=bool)]
    if not np.all(np.isfinite(off)):
        raise ValidationError("off-diagonal entries must be finite")
    if diagonal_excluded:
        np.fill_diagonal(a, sentinel_value(n))
    elif not np.all(np.isfinite(np.diag(a))):
        raise ValidationError("diagonal must be finite when one-cycles are allowed")
    return DistanceMatrix(
        n=n,
        entries=a,
        diagonal_excluded=diagonal_excluded,
        sentinel=sentinel_value(n) if diagonal_excluded else 0.0,
    )


def shift_nonnegative(m: DistanceMatrix) -> tuple[DistanceMatrix, float]:
    """Add ``c = max(0, -min entry)`` to every admissible entry.

    Every permutation's cost grows by ``n*c`` so the optimum is unchanged.
    The sentinel diagonal is left alone.
    """
    a = np.array(m.entries)
    mask = ~np.eye(m.n, dtype=bool) if m.diagonal_excluded else np.ones_like(a, dtype=bool)
    c = max(0.0, -float(a[mask].min()))
    if c == 0.0:
        return m, 0.0
    a[mask] += c
    return replace(m, entries=a), c


def write_matrix(m: DistanceMatrix, dest: str | os.PathLike | TextIO) -> None:
    """Plain-text dump: ``N`` on the first line, then N rows of N values."""
    lines = [str(m.n)]
    for row in m.entries:
        lines.append(" ".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_matrix(src: str | os.PathLike | TextIO) -> DistanceMatrix:
    """Inverse of :func:`write_matrix`.

    The diagonal counts as excluded when it holds the sentinel or ``inf``.
    """
    if hasattr(src, "read"):
        text = src.read()
    else:
        with open(src, encoding="utf-8") as fh:
            text = fh.read()
    tokens = [line.split() for line in io.StringIO(text) if line.strip()]
    if not tokens or len(tokens[0]) != 1:
        raise ValidationError("first line must hold the dimension N")
    try:
        n = int(tokens[0][0])
    except ValueError:
        raise ValidationError(f"bad dimension {tokens[0][0]!r}") from None
    if n < 2:
        raise ValidationError(f"dimension must be >= 2, got {n}")
    rows = tokens[1:]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError(f"expected {n} rows of {n} values")
    try:
        a = np.array([[float(v) for v in r] for r in rows])
    except ValueError as exc:
        raise ValidationError(f"non-numeric entry: {exc}") from None
    diag = np.diag(a)
    excluded = bool(np.all(np.isinf(diag) | (diag == sentinel_value(n))))
    return from_array(a, diagonal_excluded=excluded)
