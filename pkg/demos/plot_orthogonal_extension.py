"""
Orthogonal extension of a strictly scalable frame
=================================================

With weights ``c_j > 0`` making the frame Parseval, companion vectors
``psi_j`` in ``R^(M-N)`` can be appended so that ``phi_j (+) psi_j`` form
an orthogonal basis of ``R^M``.  For the Mercedes-Benz frame the
companion is one number per vector.
"""

import numpy as np

from framescale import Frame, extend_to_orthogonal_basis, solve_strict_scaling, verify_extension
from framescale.ensembles import SplitMix64, strictly_scalable_frame
from framescale.extension import joined_vectors

s3 = np.sqrt(3.0)
mb = Frame([[1.0, 0.0], [-0.5, s3 / 2], [-0.5, -s3 / 2]])
c = solve_strict_scaling(mb).outcome.weights.values
ext = extend_to_orthogonal_basis(mb, c)
print("psi:", ext.psi.vectors.ravel())
print("squared norms of the joined vectors:", ext.diagonal, "= c^-2 =", c ** -2)
print("Gram of the joined vectors:\n", np.round(ext.coupling_gram, 12))

###############################################################################
# A larger random example: 9 vectors in R^4 with planted weights.
frame, planted = strictly_scalable_frame(SplitMix64(1), 4, 9)
res = solve_strict_scaling(frame)
ext = extend_to_orthogonal_basis(frame, res.outcome.weights)
print("companion dimension:", ext.psi.dim)
print("largest off-diagonal:", verify_extension(frame, ext))
joined = joined_vectors(frame, ext) * res.outcome.weights.values[:, None]
print("scaled joined vectors orthonormal:", np.allclose(joined @ joined.T, np.eye(9)))
