"""
==================================
How fast 2-cycles disappear, lambda < 0
==================================

With anticorrelated costs a 2-cycle ``i -> j -> i`` pays ``d_ij + d_ji``,
which is close to zero, while the optimum is made of the most negative
entries.  The probability that any 2-cycle survives falls off roughly
exponentially in ``n``.  We fit ``ln P2`` against ``n``; sizes where no
2-cycle was seen are dropped from the fit and listed.
"""

from lapcycles import SweepConfig, p2_decay_experiment

for lam in (-1.0, -0.2, -0.1):
    fit = p2_decay_experiment(SweepConfig(range(4, 15, 2), [lam], 5_000, master_seed=3))
    print(f"lambda={lam:+.1f}: slope {fit.slope:.3f}  xi {fit.xi:.3f}  r^2 {fit.r_squared:.3f}  dropped {fit.dropped}")
    for n, y in fit.points:
        print(f"    n={n:2d}  ln P2 = {y:.3f}")
