"""Super Harish-Chandra pairs and the supergroups they reconstruct."""

from .superpoly import Signature, SuperPolynomial, derive, reduce_mod_odd
from .liesuper import LieSuperAlgebra, build_gl, ReducedPoint
from .enveloping import UAlgebra, UElement

__all__ = ["Signature", "SuperPolynomial", "derive", "reduce_mod_odd",
           "LieSuperAlgebra", "build_gl", "ReducedPoint", "UAlgebra", "UElement"]
