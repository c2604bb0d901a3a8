"""
==========================================
Exponential costs: mean optimal length
==========================================

For i.i.d. Exp(1) costs with the diagonal allowed, the mean optimal
assignment cost is ``sum_{m<=n} 1/m^2`` exactly, and the mean number of
cycles is the harmonic number ``H_n``: all permutations are equally likely
to be optimal once nothing distinguishes the diagonal.
"""

from lapcycles import Distribution, SweepConfig, harmonic, parisi_length, run_sweep

cfg = SweepConfig([10, 50], [0.0], 2_000, master_seed=5, distribution=Distribution.EXPONENTIAL1, allow_one_cycles=True)
for s in run_sweep(cfg)[0]:
    print(
        f"n={s.n}: length {s.mean_length:.4f} +- {3 * s.sem_length:.4f} (predicted {parisi_length(s.n):.4f});"
        f" cycles {s.mean_cycles:.3f} +- {3 * s.sem_cycles:.3f} (H_n = {float(harmonic(s.n)):.3f})"
    )
