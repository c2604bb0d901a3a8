"""Cycle structure of optimal solutions to random assignment problems.

Random cost matrices ``d_ij = R_ij + lam * R_ji`` interpolate between
antisymmetric (``lam = -1``) and symmetric (``lam = 1``) instances.  The
package solves them exactly, measures the cycles of the optimal
permutation and compares Monte Carlo averages with exact counts of
permutations with restricted cycle lengths.
"""

from .analytic import (
    LinearFit,
    Regime,
    StirlingTable,
    expected_cycles_asymptotic,
    expected_cycles_exact,
    expected_cycles_series,
    fit_linear,
    harmonic,
    p_n_cycle_exact,
    p_n_cycle_theory,
    parisi_length,
    stirling_table,
)
from .cycles import CycleStats, count_k_cycles, decompose
from .ensemble import (
    DistanceMatrix,
    Distribution,
    EnsembleParams,
    generate_matrix,
    read_matrix,
    shift_nonnegative,
    write_matrix,
)
from .errors import (
    FitError,
    InsufficientDataError,
    InvariantError,
    ParameterError,
    SizeError,
    ValidationError,
)
from .experiment import (
    P2DecayFit,
    SweepConfig,
    SweepSummary,
    TrialRecord,
    aggregate,
    fit_p2_decay,
    p2_decay_experiment,
    run_sweep,
    run_trial,
)
from .series import PowerSeries
from .solver import Assignment, assignment_cost, brute_force_lap, solve_lap

__version__ = "0.1.0"
