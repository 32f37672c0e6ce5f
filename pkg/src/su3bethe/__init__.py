"""Spectra of the SU(3) > SO(3) missing-label operators x and y.

Three independent routes: tridiagonal Bargmann-Moshinsky matrices, explicit
irrep matrices, and the analytical Bethe ansatz.
"""
from .irrep import IrrepLabel, Rational, casimirs, dimension, make_sector, so3_content, so3_multiplicity

__all__ = ["IrrepLabel", "Rational", "casimirs", "dimension", "make_sector", "so3_content", "so3_multiplicity"]
__version__ = "0.1.0"
