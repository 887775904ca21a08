"""
Non-scalability survives small perturbations
============================================

A trace-zero certificate stays strictly positive on vectors near the
frame.  The resulting safe radius is explicit, and random perturbations
inside it never produce a scalable frame.  Far larger perturbations can.
"""

from framescale import Frame, certificate_to_zero_trace, solve_scaling
from framescale.experiments import perturbation_experiment, safe_radius

skew = Frame([[1.0, 0.0], [1.0, 1.0]])
zero = certificate_to_zero_trace(skew, solve_scaling(skew).certificate)
radius = safe_radius(skew, zero)
print("safe radius:", radius)

for eps in [0.01, radius, 1.0]:
    rep = perturbation_experiment(skew, eps, trials=200, seed=1)
    print(f"epsilon {eps:.4f}: non-scalable fraction {rep.non_scalable_fraction}")

###############################################################################
# Three vectors in a narrow fan: big perturbations do reach scalable frames.
fan = Frame([[1.0, 0.0], [1.0, 0.1], [1.0, -0.1]])
for eps in [0.01, 10.0]:
    rep = perturbation_experiment(fan, eps, trials=200, seed=1)
    print(f"fan, epsilon {eps}: non-scalable fraction {rep.non_scalable_fraction}")
