"""Exact and asymptotic predictions for the cycle structure of optimal assignments.

When every admissible permutation is equally likely to be optimal, the
statistics of the optimal permutation reduce to counting: ``d_r(n, k)`` is
the number of permutations of ``n`` elements with ``k`` cycles, none shorter
than ``r``.  ``r = 1`` gives the unsigned Stirling numbers of the first
kind, ``r = 2`` counts derangements by cycle number and ``r = 3`` forbids
2-cycles as well.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import FitError, ParameterError
from .series import PowerSeries, log_one_minus_x

SUPPORTED_R = (1, 2, 3)
DEFAULT_N_MAX = 500


class Regime(str, enum.Enum):
    LAMBDA_ZERO = "zero"
    LAMBDA_MINUS_ONE = "minus-one"
    LAMBDA_NEGATIVE = "negative"


# 1/n^i corrections to H_n - 1 (lambda = 0) and H_n - 3/2 (lambda = -1), i = 1..11
ASYMPTOTIC_COEFFICIENTS = {
    Regime.LAMBDA_ZERO: (
        Fraction(1),
        Fraction(-1, 2),
        Fraction(-1, 6),
        Fraction(1, 4),
        Fraction(8, 15),
        Fraction(1, 12),
        Fraction(-85, 42),
        Fraction(-125, 24),
        Fraction(13, 90),
        Fraction(479, 10),
        Fraction(5800, 33),
    ),
    Regime.LAMBDA_MINUS_ONE: (
        Fraction(2),
        Fraction(-3, 2),
        Fraction(-5, 6),
        Fraction(7, 4),
        Fraction(106, 15),
        Fraction(67, 12),
        Fraction(-2627, 42),
        Fraction(-8633, 24),
        Fraction(47929, 90),
        Fraction(31758, 5),
        Fraction(1989059, 33),
    ),
}
ASYMPTOTIC_OFFSET = {Regime.LAMBDA_ZERO: Fraction(1), Regime.LAMBDA_MINUS_ONE: Fraction(3, 2)}
ASYMPTOTIC_MIN_N = 12


def _check_r(r: int) -> None:
    if r not in SUPPORTED_R:
        raise ParameterError(f"minimum cycle length r must be one of {SUPPORTED_R}, got {r}")


def harmonic(n: int) -> Fraction:
    """Exact harmonic number H_n = 1 + 1/2 + ... + 1/n."""
    if n < 1:
        raise ParameterError(f"harmonic number needs n >= 1, got {n}")
    return _harmonic(n)


@lru_cache(maxsize=None)
def _harmonic(n: int) -> Fraction:
    # common-denominator sum; Fraction addition in a loop is quadratic in digit size
    den = math.lcm(*range(1, n + 1))
    return Fraction(sum(den // m for m in range(1, n + 1)), den)


def parisi_length(n: int) -> float:
    """Mean optimal assignment length for i.i.d. Exp(1) costs: sum_{m<=n} 1/m^2."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return math.fsum(1.0 / (m * m) for m in range(1, n + 1))


def derangement_numbers(n_max: int) -> list[int]:
    """D_0..D_{n_max} from D_n = (n-1)(D_{n-1} + D_{n-2})."""
    d = [1, 0]
    for n in range(2, n_max + 1):
        d.append((n - 1) * (d[n - 1] + d[n - 2]))
    return d[: n_max + 1]


def min_cycle_polynomial(r: int, order: int) -> PowerSeries:
    """p_r(x) = sum_{m<r} x^m / m: the cycle lengths removed from -log(1-x)."""
    _check_r(r)
    return PowerSeries([0] + [Fraction(1, m) for m in range(1, r)], order)


@dataclass(frozen=True)
class StirlingTable:
    """Associated Stirling numbers d_r(n, k) for 0 <= k <= n <= n_max."""

    r: int
    n_max: int
    values: tuple[tuple[int, ...], ...]

    def __call__(self, n: int, k: int) -> int:
        if not 0 <= n <= self.n_max:
            raise ParameterError(f"n={n} outside table range 0..{self.n_max}")
        if k < 0 or k > n:
            return 0
        return self.values[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        return self.values[n]

    def row_sum(self, n: int) -> int:
        return sum(self.values[n])

    def iter_entries(self) -> Iterable[tuple[int, int, int]]:
        for n, row in enumerate(self.values):
            for k, v in enumerate(row):
                yield n, k, v


@lru_cache(maxsize=16)
def _recurrence_table(r: int, n_max: int) -> tuple[tuple[int, ...], ...]:
    # d(n+1,k) = n d(n,k) + n!/(n-r+1)! d(n+1-r, k-1): element n+1 either joins an
    # existing cycle or closes a fresh cycle of length exactly r
    rows: list[list[int]] = [[1]]
    for n in range(0, n_max):
        falling = math.perm(n, r - 1)
        new = [0] * (n + 2)
        prev = rows[n]
        for k, v in enumerate(prev):
            new[k] += n * v
        if n + 1 - r >= 0:
            for k, v in enumerate(rows[n + 1 - r]):
                new[k + 1] += falling * v
        rows.append(new)
    return tuple(tuple(row) for row in rows)


def _egf_table(r: int, n_max: int) -> tuple[tuple[int, ...], ...]:
    # d(n,k) = n! [x^n] L(x)^k / k!  with  L(x) = -log(1-x) - p_r(x)
    order = n_max + 1
    cycle = -log_one_minus_x(order) - min_cycle_polynomial(r, order)
    rows = [[0] * (n + 1) for n in range(order)]
    power = PowerSeries.constant(1, order)
    for k in range(0, n_max + 1):
        if k > 0:
            power = power * cycle
        scale = Fraction(1, math.factorial(k))
        for n in range(k * r if k else 0, order):
            c = power[n] * scale * math.factorial(n)
            if c.denominator != 1:
                raise ArithmeticError(f"non-integral d_{r}({n},{k}) = {c}")
            rows[n][k] = int(c)
        if k * r > n_max:
            break
    return tuple(tuple(row) for row in rows)


def stirling_table(r: int, n_max: int, method: str = "recurrence") -> StirlingTable:
    """Table of d_r(n, k).

    ``method="recurrence"`` uses integer arithmetic and is the fast route;
    ``method="egf"`` extracts coefficients of powers of the cycle EGF and is
    kept as an independent cross-check (cubic in ``n_max``).
    """
    _check_r(r)
    if n_max < r:
        raise ParameterError(f"n_max must be >= r={r}, got {n_max}")
    if method == "recurrence":
        values = _recurrence_table(r, n_max)
    elif method == "egf":
        values = _egf_table(r, n_max)
    else:
        raise ParameterError(f"unknown method {method!r}")
    return StirlingTable(r=r, n_max=n_max, values=values)


def _check_n(r: int, n: int, n_max: int | None) -> None:
    _check_r(r)
    if n < max(r, 1):
        raise ParameterError(f"need n >= {max(r, 1)} for r={r}, got {n}")
    if n_max is not None and n > n_max:
        raise ParameterError(
            f"n={n} exceeds exact-arithmetic cap {n_max}; use expected_cycles_asymptotic"
        )


def expected_cycles_exact(r: int, n: int, n_max: int | None = DEFAULT_N_MAX) -> Fraction:
    """Mean number of cycles over equiprobable permutations with no cycle shorter than r."""
    _check_n(r, n, n_max)
    row = _recurrence_table(r, n)[n]
    return Fraction(sum(k * v for k, v in enumerate(row)), sum(row))


def expected_cycles_series(r: int, n: int, n_max: int | None = DEFAULT_N_MAX) -> Fraction:
    """Same mean as :func:`expected_cycles_exact`, from a ratio of EGF coefficients.

    -[x^n] (log(1-x) + p(x)) e^{-p(x)} / (1-x)  over  [x^n] e^{-p(x)} / (1-x).
    The n! of the n-th derivative cancels in the ratio.
    """
    _check_n(r, n, n_max)
    order = n + 1
    p = min_cycle_polynomial(r, order)
    weight = (-p).exp() / (1 - PowerSeries.x(order))
    numerator = (log_one_minus_x(order) + p) * weight
    return -numerator[n] / weight[n]


def _check_asymptotic(regime: Regime | str, n: int) -> Regime:
    regime = Regime(regime)
    if regime not in ASYMPTOTIC_COEFFICIENTS:
        raise ParameterError(f"no expansion for regime {regime.value!r}")
    if n < ASYMPTOTIC_MIN_N:
        raise ParameterError(f"expansion is truncated at 11 terms; need n >= {ASYMPTOTIC_MIN_N}")
    return regime


def expected_cycles_asymptotic(regime: Regime | str, n: int) -> float:
    """Large-n expansion H_n - offset + sum_{i=1}^{11} C_i n^-i."""
    regime = _check_asymptotic(regime, n)
    h = math.fsum(1.0 / m for m in range(1, n + 1)) if n > 2000 else float(harmonic(n))
    tail = math.fsum(float(c) / n**i for i, c in enumerate(ASYMPTOTIC_COEFFICIENTS[regime], start=1))
    return h - float(ASYMPTOTIC_OFFSET[regime]) + tail


def expected_cycles_asymptotic_rational(regime: Regime | str, n: int) -> Fraction:
    """The truncated expansion evaluated exactly, for error studies below double precision."""
    regime = _check_asymptotic(regime, n)
    tail = sum(c / Fraction(n) ** i for i, c in enumerate(ASYMPTOTIC_COEFFICIENTS[regime], start=1))
    return harmonic(n) - ASYMPTOTIC_OFFSET[regime] + tail


def p_n_cycle_theory(regime: Regime | str, n: int) -> float:
    """Probability that the optimal permutation is a single n-cycle.

    e^{3/2}/n for lambda < 0 (no 1- or 2-cycles), e/n for lambda = 0.
    """
    regime = Regime(regime)
    if n < 3:
        raise ParameterError(f"need n >= 3, got {n}")
    if regime is Regime.LAMBDA_ZERO:
        return math.e / n
    if regime in (Regime.LAMBDA_NEGATIVE, Regime.LAMBDA_MINUS_ONE):
        return math.exp(1.5) / n
    raise ParameterError(f"unknown regime {regime!r}")


def p_n_cycle_exact(r: int, n: int) -> Fraction:
    """Exact fraction of admissible permutations (min cycle length r) that are n-cycles."""
    _check_n(r, n, None)
    return Fraction(math.factorial(n - 1), sum(_recurrence_table(r, n)[n]))


class LinearFit(NamedTuple):
    slope: float
    intercept: float
    r_squared: float


def fit_linear(points: Sequence[tuple[float, float]]) -> LinearFit:
    """Unweighted ordinary least squares y = slope*x + intercept."""
    if len(points) < 3:
        raise FitError(f"need at least 3 points, got {len(points)}")
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    m = len(xs)
    mx = math.fsum(xs) / m
    my = math.fsum(ys) / m
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        raise FitError("x values are all equal")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    syy = math.fsum((y - my) ** 2 for y in ys)
    slope = sxy / sxx
    intercept = my - slope * mx
    r2 = 1.0 if syy == 0.0 else (sxy * sxy) / (sxx * syy)
    if not all(map(math.isfinite, (slope, intercept, r2))):
        raise FitError("non-finite fit")
    return LinearFit(slope, intercept, r2)
