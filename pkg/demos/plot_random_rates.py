"""
How often are random frames scalable?
=====================================

Uniform random unit vectors: two in the plane are never scalable, and the
scalable fraction grows with the number of vectors.
"""

from framescale.experiments import random_ensemble_stats

for n, counts in [(2, [2, 3, 4, 6, 8]), (3, [3, 6, 9, 12, 15])]:
    for m in counts:
        s = random_ensemble_stats(n, m, trials=300, seed=7)
        print(f"N={n} M={m:2d}  scalable {s['scalable_fraction']:.3f}  "
              f"strict {s['strict_fraction']:.3f}")
