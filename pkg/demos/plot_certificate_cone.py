"""
From a certificate to a cone
============================

Shifting a negative-trace certificate by a multiple of the identity gives
a trace-zero matrix that is strictly positive on every frame vector.  Its
eigenvectors define a quadric cone, and all frame vectors sit inside it.
The script writes the cone surface and the labelled frame vectors to CSV
for an external plotting tool.
"""

import numpy as np

from framescale import (
    Frame,
    certificate_to_zero_trace,
    classify,
    cone_from_certificate,
    sample_surface,
    solve_scaling,
)
from framescale.io import write_points_csv

frame = Frame([[1.0, 0.2, 0.1], [0.9, -0.1, 0.3], [1.0, 0.1, -0.2], [0.8, 0.3, 0.2]])
outcome = solve_scaling(frame)
print("scalable:", outcome.scalable)

zero = certificate_to_zero_trace(frame, outcome.certificate)
print("trace after shift:", np.trace(zero.Y))
print("form values:", zero.form_values)

cone = cone_from_certificate(zero, frame)
print("axis:", cone.axis, "coefficients:", cone.coefficients)
print("labels:", [classify(cone, phi).value for phi in frame])

###############################################################################
# Surface samples satisfy the quadric equation to rounding error.
points = sample_surface(cone, 12)
coords = points @ cone.basis
g = coords[:, -1] ** 2 - coords[:, :-1] ** 2 @ cone.coefficients
print(len(points), "surface points, max |g| =", np.abs(g).max())

write_points_csv("cone-demo-surface.csv", points)
write_points_csv("cone-demo-frame.csv", frame.vectors,
                 [classify(cone, phi).value for phi in frame])
