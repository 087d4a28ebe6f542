"""Exact verification of 2-adic slopes of U and T_2 at level one."""
from .classical import (
    conjectural_polygon_classical,
    conjectural_series_overconvergent,
    t2_matrix,
    verify_conjecture1,
)
from .linalg import RationalMatrix, reversed_charpoly
from .newton import NewtonPolygon, SlopeSequence, polygon_from_points, polygon_of_poly, polygons_equal, slopes_of
from .qseries import FPolynomial, QSeries
from .report import VerificationReport
from .spectral import spectral_slopes, u_entry
from .valuation import INFINITY, slope_p11, slope_weight0, vp, vp_factorial

__version__ = "0.1.0"
