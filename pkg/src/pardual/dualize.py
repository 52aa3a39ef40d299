"""Point-curve duals of planar algebraic curves in parallel coordinates.

The centerpiece is dual_curve, the five-step elimination pipeline: lift
the curve to a homogeneous cone, rescale onto gradient directions, take
the resultant of the two partial derivatives, strip the psi-power
multiplier, and land in image coordinates via eta -> 1-x, xi -> x,
psi -> -y.  A numeric sampling oracle (sample_curve + verify_duality)
cross-checks the symbolic output against the fundamental point-image
map, and a closed form covers the conic special case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .elimination import as_binary_form, resultant
from .polyring import (
    ETA,
    PSI,
    VAR_NAMES,
    X,
    X1,
    X2,
    X3,
    XI,
    Y,
    Polynomial,
    content_and_primitive,
    divide_out_variable_power,
    evaluate_float,
    homogenize,
    partial_derivative,
    sorted_terms,
    substitute,
    total_degree,
    variables,
)

F_TOL_REL = 1e-12          # on-curve residual, relative to local term scale
SINGULAR_TOL = 1e-9        # minimum gradient norm for a usable sample
DENOM_TOL = 1e-9           # slope-1 tangents map to ideal points
RESIDUAL_THRESHOLD = 1e-6  # verification pass mark
DEFAULT_SPACING = 1.0

_SAMPLES_PER_LINE = 64
_BISECT_STEPS = 80
_NEWTON_STEPS = 5


class DegreeError(ValueError):
    """Input degree outside what the operation supports."""


class DegenerateCurveError(ValueError):
    """The elimination collapsed: reducible input or shared partial factor."""


class IdealPointError(ValueError):
    """The requested image lies at infinity (slope-1 tangent)."""


class NoSamplesError(ValueError):
    """Verification had nothing to test."""


class PlanePoint(NamedTuple):
    x: float
    y: float


class ImplicitCurve:
    """Curve f(x1, x2) = 0 of degree n >= 1; irreducibility is the caller's
    promise (the R == 0 check in dual_curve is the safety net)."""

    __slots__ = ("f", "n")

    def __init__(self, f: Polynomial):
        if not f:
            raise ValueError("the zero polynomial does not define a curve")
        stray = variables(f) - {X1, X2}
        if stray:
            names = ", ".join(VAR_NAMES[v] for v in sorted(stray))
            raise ValueError(f"curve polynomial may only use x1, x2 (found {names})")
        self.f = f
        self.n = total_degree(f)
        if self.n < 1:
            raise ValueError("a constant does not define a curve")

    def __repr__(self) -> str:
        return f"ImplicitCurve({self.f!r})"


@dataclass(frozen=True)
class DualCurve:
    """Primitive, positive-leading image polynomial in (x, y)."""

    g: Polynomial
    source_degree: int
    psi_power_removed: int


@dataclass(frozen=True)
class CurveSamples:
    points: tuple[tuple[float, float], ...]
    gradients: tuple[tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class VerifyReport:
    max_residual: float
    tested: int
    skipped: int


def dual_curve(curve: ImplicitCurve) -> DualCurve:
    """Run the five-step transform and return the canonical dual polynomial.

    Steps: homogenize with x3; substitute x1 -> psi*x1, x2 -> psi*x2,
    x3 -> -(eta*x1 + xi*x2); take the resultant of the two partial
    derivatives as binary forms in (x1, x2); strip the psi^k multiplier
    and numeric content; substitute eta -> 1-x, xi -> x, psi -> -y and
    normalize to the primitive positive-leading representative.
    """
    if curve.n < 2:
        raise DegreeError("dual_curve needs degree >= 2 (lines dualize to points)")
    x1 = Polynomial.variable(X1)
    x2 = Polynomial.variable(X2)
    cone = homogenize(curve.f, X3)
    rescaled = substitute(cone, {
        X1: Polynomial.variable(PSI) * x1,
        X2: Polynomial.variable(PSI) * x2,
        X3: -(Polynomial.variable(ETA) * x1 + Polynomial.variable(XI) * x2),
    })
    d1 = partial_derivative(rescaled, X1)
    d2 = partial_derivative(rescaled, X2)
    if not d1 or not d2:
        raise DegenerateCurveError("a partial derivative vanished identically")
    r = resultant(as_binary_form(d1), as_binary_form(d2))
    if not r:
        raise DegenerateCurveError(
            "degenerate input: resultant vanished identically "
            "(reducible curve or common factor of partials)")
    k, stripped = divide_out_variable_power(r, PSI)
    _, reduced = content_and_primitive(stripped)
    image = substitute(reduced, {
        ETA: 1 - Polynomial.variable(X),
        XI: Polynomial.variable(X),
        PSI: -Polynomial.variable(Y),
    })
    if not image:
        raise DegenerateCurveError("the image polynomial vanished identically")
    _, g = content_and_primitive(image)
    if total_degree(g) == 0:
        raise DegenerateCurveError(
            "the dual collapsed to a constant (reducible or degenerate input)")
    return DualCurve(g=g, source_degree=curve.n, psi_power_removed=k)


@dataclass(frozen=True)
class ConicMatrix:
    """Symmetric matrix (a1 a4 a5; a4 a2 a6; a5 a6 a3) of a conic
    a1*u^2 + 2*a4*u*v + 2*a5*u + a2*v^2 + 2*a6*v + a3.

    A source conic must have one of a1, a2, a4 nonzero (genuine degree 2);
    dual matrices produced by conic_dual_matrix are not constrained.
    """

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a5: Fraction
    a6: Fraction

    @classmethod
    def of(cls, a1, a2, a3, a4, a5, a6) -> "ConicMatrix":
        return cls(Fraction(a1), Fraction(a2), Fraction(a3),
                   Fraction(a4), Fraction(a5), Fraction(a6))

    def is_degree_two(self) -> bool:
        return bool(self.a1 or self.a2 or self.a4)

    def determinant(self) -> Fraction:
        return (self.a1 * (self.a2 * self.a3 - self.a6 ** 2)
                - self.a4 * (self.a4 * self.a3 - self.a6 * self.a5)
                + self.a5 * (self.a4 * self.a6 - self.a2 * self.a5))

    def polynomial(self, vu: int, vv: int) -> Polynomial:
        u = Polynomial.variable(vu)
        v = Polynomial.variable(vv)
        return (self.a1 * u * u + 2 * self.a4 * u * v + 2 * self.a5 * u
                + self.a2 * v * v + 2 * self.a6 * v + self.a3)


def conic_dual_matrix(source: ConicMatrix) -> ConicMatrix:
    """Closed-form dual conic; agrees with dual_curve up to a scalar."""
    a1, a2, a3 = source.a1, source.a2, source.a3
    a4, a5, a6 = source.a4, source.a5, source.a6
    return ConicMatrix(
        a1=a3 * (a1 + a2 + 2 * a4) - (a5 + a6) ** 2,
        a2=a1 * a2 - a4 ** 2,
        a3=a2 * a3 - a6 ** 2,
        a4=a6 * (a1 + a4) - a5 * (a2 + a4),
        a5=a6 ** 2 + a5 * a6 - a3 * (a2 + a4),
        a6=a2 * a5 - a4 * a6,
    )


def max_abs_term(p: Polynomial, point: dict[int, float]) -> float:
    """Largest |term| of p at the point; the scale for relative residuals."""
    worst = 0.0
    for mono, coeff in p.terms.items():
        term = abs(float(coeff))
        for var, exp in mono:
            term *= abs(point[var]) ** exp
        worst = max(worst, term)
    return worst


def _on_curve_tolerance(curve: ImplicitCurve, x1v: float, x2v: float) -> float:
    return F_TOL_REL * (1.0 + max_abs_term(curve.f, {X1: x1v, X2: x2v}))


def point_image_on_dual(curve: ImplicitCurve, point: tuple[float, float]) -> PlanePoint:
    """Image of a curve point under the fundamental duality:
    x = f2 / (f1 + f2), y = (x1*f1 + x2*f2) / (f1 + f2)."""
    x1v, x2v = point
    at = {X1: x1v, X2: x2v}
    value = evaluate_float(curve.f, at)
    if abs(value) > _on_curve_tolerance(curve, x1v, x2v):
        raise ValueError(f"point {point} is not on the curve (|f| = {abs(value):.3g})")
    f1 = evaluate_float(partial_derivative(curve.f, X1), at)
    f2 = evaluate_float(partial_derivative(curve.f, X2), at)
    denominator = f1 + f2
    if abs(denominator) < DENOM_TOL:
        raise IdealPointError("slope-1 tangent maps to ideal point")
    return PlanePoint(f2 / denominator, (x1v * f1 + x2v * f2) / denominator)


def line_dual_point(m: float, b: float, d: float = DEFAULT_SPACING) -> PlanePoint:
    """Dual point of the line x2 = m*x1 + b, axes d apart."""
    if d <= 0:
        raise ValueError("axis spacing must be positive")
    if m == 1:
        raise IdealPointError("slope-1 line maps to an ideal point")
    return PlanePoint(d / (1.0 - m), b / (1.0 - m))


def point_to_polyline(values: Sequence[Fraction | float],
                      d: float = DEFAULT_SPACING) -> list[PlanePoint]:
    """Polygonal-line representation of an n-dimensional point: vertex i
    sits at ((i-1)*d, c_i) on the i-th axis."""
    if len(values) < 2:
        raise ValueError("a polyline needs at least two coordinates")
    if d <= 0:
        raise ValueError("axis spacing must be positive")
    return [PlanePoint(i * d, float(c)) for i, c in enumerate(values)]


def _line_coefficients(f: Polynomial, fixed_var: int, fixed_val: float,
                       free_var: int) -> list[float]:
    """Dense float coefficients of f restricted to a scan line, ascending.

    Terms are folded in canonical order so the restriction is deterministic.
    """
    degree = total_degree(f)
    coeffs = [0.0] * (degree + 1)
    for mono, coeff in sorted_terms(f):
        term = float(coeff)
        free_exp = 0
        for var, exp in mono:
            if var == fixed_var:
                term *= fixed_val ** exp
            elif var == free_var:
                free_exp = exp
        coeffs[free_exp] += term
    return coeffs


def _horner(coeffs: list[float], t: float) -> float:
    value = 0.0
    for c in reversed(coeffs):
        value = value * t + c
    return value


def _refine_root(coeffs: list[float], lo: float, hi: float) -> float:
    flo = _horner(coeffs, lo)
    if flo == 0.0:
        return lo
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fmid = _horner(coeffs, mid)
        if fmid == 0.0:
            return mid
        if (flo < 0.0) == (fmid < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    derivative = [coeffs[i] * i for i in range(1, len(coeffs))]
    for _ in range(_NEWTON_STEPS):
        fval = _horner(coeffs, root)
        dval = _horner(derivative, root)
        if fval == 0.0 or dval == 0.0:
            break
        step = fval / dval
        candidate = root - step
        # damp: never accept a step that makes the residual worse
        while abs(_horner(coeffs, candidate)) > abs(fval) and abs(step) > 1e-17:
            step *= 0.5
            candidate = root - step
        if candidate == root:
            break
        root = candidate
    return root


def sample_curve(curve: ImplicitCurve, window: tuple[float, float, float, float],
                 target_count: int) -> CurveSamples:
    """Deterministic real points of f = 0 inside the window.

    Scans horizontal and vertical grid lines (at least 4 * target_count
    lines in total), brackets sign changes, bisects and Newton-polishes
    each root, and drops near-singular points.  Returns up to
    target_count points, evenly thinned in scan order.
    """
    xmin, xmax, ymin, ymax = window
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("window must be nonempty")
    if target_count < 1:
        raise ValueError("target_count must be at least 1")
    f = curve.f
    fx1 = partial_derivative(f, X1)
    fx2 = partial_derivative(f, X2)
    lines = max(16, 2 * target_count)

    points: list[tuple[float, float]] = []
    gradients: list[tuple[float, float]] = []

    def accept(x1v: float, x2v: float) -> None:
        at = {X1: x1v, X2: x2v}
        if abs(evaluate_float(f, at)) > _on_curve_tolerance(curve, x1v, x2v):
            return
        g1 = evaluate_float(fx1, at)
        g2 = evaluate_float(fx2, at)
        if math.hypot(g1, g2) < SINGULAR_TOL:
            return
        points.append((x1v, x2v))
        gradients.append((g1, g2))

    def scan(fixed_var: int, fixed_lo: float, fixed_hi: float,
             free_lo: float, free_hi: float, horizontal: bool) -> None:
        free_var = X1 if fixed_var == X2 else X2
        for i in range(lines):
            fixed_val = fixed_lo + (i + 0.5) * (fixed_hi - fixed_lo) / lines
            coeffs = _line_coefficients(f, fixed_var, fixed_val, free_var)
            if not any(coeffs[1:]):
                continue
            step = (free_hi - free_lo) / _SAMPLES_PER_LINE
            previous = _horner(coeffs, free_lo)
            for j in range(1, _SAMPLES_PER_LINE + 1):
                t = free_lo + j * step
                current = _horner(coeffs, t)
                lo, hi = free_lo + (j - 1) * step, t
                if previous == 0.0:
                    root = lo
                elif (previous < 0.0) != (current < 0.0):
                    root = _refine_root(coeffs, lo, hi)
                else:
                    previous = current
                    continue
                previous = current
                if horizontal:
                    accept(root, fixed_val)
                else:
                    accept(fixed_val, root)

    scan(X2, ymin, ymax, xmin, xmax, horizontal=True)
    scan(X1, xmin, xmax, ymin, ymax, horizontal=False)

    if len(points) > target_count:
        if target_count == 1:
            picks = [0]
        else:
            picks = [round(i * (len(points) - 1) / (target_count - 1))
                     for i in range(target_count)]
        points = [points[i] for i in picks]
        gradients = [gradients[i] for i in picks]
    return CurveSamples(tuple(points), tuple(gradients))


def verify_duality(curve: ImplicitCurve, dual: DualCurve,
                   samples: CurveSamples) -> VerifyReport:
    """Evaluate the dual polynomial at every sample's image point.

    The residual is |g(x, y)| / (1 + max |term of g at (x, y)|); samples
    whose tangent has slope 1 are skipped.
    """
    tested = 0
    skipped = 0
    worst = 0.0
    for point in samples.points:
        try:
            image = point_image_on_dual(curve, point)
        except IdealPointError:
            skipped += 1
            continue
        at = {X: image.x, Y: image.y}
        value = abs(evaluate_float(dual.g, at))
        scale = 1.0 + max_abs_term(dual.g, at)
        worst = max(worst, value / scale)
        tested += 1
    if tested == 0:
        raise NoSamplesError("no verifiable samples")
    return VerifyReport(max_residual=worst, tested=tested, skipped=skipped)
