"""Exact point-curve duals of planar algebraic curves in parallel coordinates."""

from .dualize import (
    ConicMatrix,
    CurveSamples,
    DegenerateCurveError,
    DegreeError,
    DualCurve,
    IdealPointError,
    ImplicitCurve,
    NoSamplesError,
    PlanePoint,
    VerifyReport,
    conic_dual_matrix,
    dual_curve,
    line_dual_point,
    point_image_on_dual,
    point_to_polyline,
    sample_curve,
    verify_duality,
)
from .polyparse import ParseError, parse, print_poly
from .polyring import Polynomial

__all__ = [
    "ConicMatrix",
    "CurveSamples",
    "DegenerateCurveError",
    "DegreeError",
    "DualCurve",
    "IdealPointError",
    "ImplicitCurve",
    "NoSamplesError",
    "ParseError",
    "PlanePoint",
    "Polynomial",
    "VerifyReport",
    "conic_dual_matrix",
    "dual_curve",
    "line_dual_point",
    "parse",
    "point_image_on_dual",
    "point_to_polyline",
    "print_poly",
    "sample_curve",
    "verify_duality",
]

__version__ = "0.1.0"
