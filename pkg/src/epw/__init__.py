"""Exact construction and verification of EPW sextic hypersurfaces.

Everything is computed over Q or F_p (p an odd prime >= 5): wedge algebra
on a 6-dimensional space, Lagrangian subspaces of its third exterior
power, degeneracy-locus sextics by several independent routes, corank
strata and their local models, projective duality, Chern-class
bookkeeping and the quadric-discriminant examples.
"""

__version__ = "0.1.0"

from .fields import GF, QQ
from .kernels import BACKEND
from .lagrangian import LagrangianSubspace, sample_lagrangian, perp
from .linalg import ExactMatrix
from .poly import MultiPoly, det_linear_matrix
from .wedge import WedgeVector, sigma

__all__ = [
    "__version__",
    "BACKEND",
    "GF",
    "QQ",
    "ExactMatrix",
    "MultiPoly",
    "det_linear_matrix",
    "WedgeVector",
    "sigma",
    "LagrangianSubspace",
    "sample_lagrangian",
    "perp",
]
