"""
Rescaling a frame into a Parseval frame
=======================================

Three vectors at 120 degrees form a tight frame whose frame operator is
``1.5 I``.  Shrinking each by ``sqrt(2/3)`` gives a Parseval frame.  Two
independent vectors that are not orthogonal cannot be rescaled that way,
and the solver hands back a matrix that proves it.
"""

import numpy as np

from framescale import Frame, frame_bounds, frame_operator, solve_scaling, solve_strict_scaling

###############################################################################
# The Mercedes-Benz frame
s3 = np.sqrt(3.0)
mb = Frame([[1.0, 0.0], [-0.5, s3 / 2], [-0.5, -s3 / 2]])
print("frame operator:\n", frame_operator(mb))
print("frame bounds:", frame_bounds(mb))

out = solve_scaling(mb)
print("weights:", out.weights.values)
print("Parseval residual:", out.weights.parseval_residual)

###############################################################################
# The max-margin LP also reports how far the squared weights stay from zero.
strict = solve_strict_scaling(mb)
print("strictly scalable:", strict.strictly_scalable, "margin:", strict.margin)

###############################################################################
# A skew basis is not scalable.  The certificate ``Y`` has negative trace
# and ``phi^T Y phi >= 0`` for every frame vector; no rescaling can then
# reach the identity, since ``tr(Y) = sum c_j^2 phi_j^T Y phi_j >= 0``
# would follow.
skew = Frame([[1.0, 0.0], [1.0, 1.0]])
cert = solve_scaling(skew).certificate
print("Y =\n", cert.Y)
print("trace:", cert.trace, "form values:", cert.form_values)

###############################################################################
# Adding the diagonal to the standard basis keeps the frame scalable, but
# only by switching the diagonal off.
bpd = Frame([[1.0, 0.0], [0.0, 1.0], [np.sqrt(0.5), np.sqrt(0.5)]])
res = solve_strict_scaling(bpd)
print("scalable:", res.outcome.scalable, "strict:", res.strictly_scalable)
print("vectors forced to weight zero:", res.zero_weight_indices)
