"""
=====================================
Exact counts behind the cycle averages
=====================================

If every admissible permutation were equally likely to be optimal, the
mean cycle count would be a ratio of permutation counts.  ``d_r(n, k)``
counts permutations of ``n`` elements with ``k`` cycles, none shorter than
``r``.  The same mean comes out of exponential generating functions and,
for large ``n``, out of an 11-term expansion in ``1/n``.
"""

import math

from lapcycles import (
    expected_cycles_asymptotic,
    expected_cycles_exact,
    expected_cycles_series,
    harmonic,
    p_n_cycle_exact,
    p_n_cycle_theory,
    stirling_table,
)

###############################################################################
# Small tables.  Row sums of ``d_2`` are the derangement numbers 1, 0, 1, 2, 9, 44.

for r in (2, 3):
    t = stirling_table(r, 7)
    print(f"d_{r}(n, k):")
    for n in range(8):
        print("  ", n, t.row(n))

###############################################################################
# Two routes to the same rational number.

for r, n in ((2, 4), (3, 6), (2, 30), (3, 30)):
    exact = expected_cycles_exact(r, n)
    assert exact == expected_cycles_series(r, n)
    print(f"r={r} n={n}: {exact} = {float(exact):.9f}")

###############################################################################
# Allowing 1-cycles gives back the harmonic numbers exactly.

assert all(expected_cycles_exact(1, n) == harmonic(n) for n in range(1, 60))

###############################################################################
# The expansion is already excellent at moderate n, and the two regimes
# differ by one half as n grows.

for n in (20, 50, 200, 10_000):
    z = expected_cycles_asymptotic("zero", n)
    m = expected_cycles_asymptotic("minus-one", n)
    print(f"n={n:>6}: lambda=0 {z:.9f}  lambda=-1 {m:.9f}  difference {z - m:.6f}")

###############################################################################
# Probability that the optimum is one single n-cycle.

for n in (10, 100):
    print(
        f"n={n}: exact {float(p_n_cycle_exact(2, n)):.6f} vs e/n {p_n_cycle_theory('zero', n):.6f};"
        f" exact {float(p_n_cycle_exact(3, n)):.6f} vs e^1.5/n {p_n_cycle_theory('negative', n):.6f}"
    )
print("e^1.5 =", math.exp(1.5))
