import math
import random
from fractions import Fraction

import pytest

from pardual.dualize import (
    ConicMatrix,
    DegenerateCurveError,
    DegreeError,
    DualCurve,
    IdealPointError,
    ImplicitCurve,
    NoSamplesError,
    conic_dual_matrix,
    dual_curve,
    line_dual_point,
    point_image_on_dual,
    point_to_polyline,
    sample_curve,
    verify_duality,
)
from pardual.polyparse import parse
from pardual.polyring import (
    X,
    X1,
    X2,
    Y,
    content_and_primitive,
    evaluate_exact,
    evaluate_float,
    total_degree,
)

# Frozen goldens: every dual below was computed independently (Sylvester
# determinant in a separate CAS) and checked against the fundamental
# point-image map at ~1e-16 residual before being frozen here.  The
# paper's printed captions for the first two curves FAIL that check
# (mirrored x; see the acceptance suite, which arbitrates explicitly).
FIG9_SOURCE = "x1^2*x2 - 1"
FIG9_DUAL = "27*x^6 - 4*x^3*y^3 - 54*x^5 + 27*x^4"
FIG9_PSI_POWER = 6

FIG8_SOURCE = "x1^3 + x2^2 - 3*x1*x2"
FIG8_DUAL = ("36*x^4 + 40*x^3*y - 27*x^2*y^2 - 36*x^3 + 78*x^2*y"
             " - 27*x^2 - 6*x*y + 18*x - 4*y + 9")
FIG8_PSI_POWER = 8

SEC32_SOURCE = "x1^3 - x1^2 - x2^2 + x2 - 1"
SEC32_DUAL = ("23*x^6 + 14*x^5*y + 37*x^4*y^2 - 14*x^3*y^3 + 27*x^2*y^4"
              " - 20*x^5 - 112*x^4*y + 40*x^3*y^2 - 48*x^2*y^3 + 74*x^4"
              " + 58*x^3*y + 14*x^2*y^2 + 12*x*y^3 - 86*x^3 - 14*x^2*y"
              " - 10*x*y^2 - 4*y^3 + 55*x^2 - 4*x*y + 4*y^2 - 18*x + 3")
SEC32_PSI_POWER = 6

CIRCLE_SOURCE = "x1^2 + x2^2 - 1"
CIRCLE_DUAL = "2*x^2 - y^2 - 2*x + 1"

WINDOW = (-3.0, 3.0, -3.0, 3.0)


def curve(text):
    return ImplicitCurve(parse(text))


class TestDualCurve:
    def test_fig9_golden(self):
        dual = dual_curve(curve(FIG9_SOURCE))
        assert dual.g == parse(FIG9_DUAL)
        assert dual.psi_power_removed == FIG9_PSI_POWER
        assert dual.source_degree == 3
        assert total_degree(dual.g) == 6

    def test_fig8_golden(self):
        dual = dual_curve(curve(FIG8_SOURCE))
        assert dual.g == parse(FIG8_DUAL)
        assert dual.psi_power_removed == FIG8_PSI_POWER
        # singular point: the image degree drops below n*(n-1) = 6
        assert total_degree(dual.g) == 4

    def test_sec32_golden(self):
        dual = dual_curve(curve(SEC32_SOURCE))
        assert dual.g == parse(SEC32_DUAL)
        assert dual.psi_power_removed == SEC32_PSI_POWER
        assert total_degree(dual.g) == 6

    def test_circle_golden(self):
        dual = dual_curve(curve(CIRCLE_SOURCE))
        assert dual.g == parse(CIRCLE_DUAL)
        assert dual.psi_power_removed == 2

    def test_circle_spot_values_exact(self):
        g = dual_curve(curve(CIRCLE_SOURCE)).g
        for px, py in ((1, 1), (1, -1), (0, 1)):
            assert evaluate_exact(g, {X: Fraction(px), Y: Fraction(py)}) == 0

    def test_scalar_invariance(self):
        base = dual_curve(curve(CIRCLE_SOURCE))
        for scale in (Fraction(3, 7), Fraction(-2), Fraction(5)):
            scaled = dual_curve(ImplicitCurve(scale * parse(CIRCLE_SOURCE)))
            assert scaled.g == base.g
            assert scaled.psi_power_removed == base.psi_power_removed

    def test_degree_bound(self):
        for source in (FIG9_SOURCE, FIG8_SOURCE, SEC32_SOURCE, CIRCLE_SOURCE):
            c = curve(source)
            dual = dual_curve(c)
            assert total_degree(dual.g) <= c.n * (c.n - 1)

    def test_line_rejected(self):
        with pytest.raises(DegreeError):
            dual_curve(curve("x1 + x2"))

    def test_reducible_pair_of_lines(self):
        with pytest.raises(DegenerateCurveError):
            dual_curve(curve("x1^2 - x2^2"))

    def test_perfect_square_resultant_vanishes(self):
        # partials share the factor (x1 - x2), so R is identically zero
        with pytest.raises(DegenerateCurveError, match="resultant vanished"):
            dual_curve(curve("x1^2 - 2*x1*x2 + x2^2"))

    def test_reducible_axes(self):
        with pytest.raises(DegenerateCurveError):
            dual_curve(curve("x1*x2"))

    def test_double_line(self):
        with pytest.raises(DegenerateCurveError):
            dual_curve(curve("x2^2"))


class TestConicDual:
    def test_circle_closed_form(self):
        dual = conic_dual_matrix(ConicMatrix.of(1, 1, -1, 0, 0, 0))
        assert (dual.a1, dual.a2, dual.a3, dual.a4, dual.a5, dual.a6) == (
            Fraction(-2), Fraction(1), Fraction(-1),
            Fraction(0), Fraction(1), Fraction(0))
        assert dual.polynomial(X, Y) == parse("-2*x^2 + y^2 + 2*x - 1")

    def test_formulas_total_on_degenerate_input(self):
        conic_dual_matrix(ConicMatrix.of(1, 1, 0, 0, 0, 0))
        conic_dual_matrix(ConicMatrix.of(1, 0, 0, 0, 0, 0))

    def test_source_polynomial_shape(self):
        m = ConicMatrix.of(1, 2, 3, 4, 5, 6)
        assert m.polynomial(X1, X2) == parse(
            "x1^2 + 8*x1*x2 + 10*x1 + 2*x2^2 + 12*x2 + 3")

    def test_matches_general_algorithm(self):
        rng = random.Random(20260810)
        checked = 0
        while checked < 20:
            entries = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(6)]
            source = ConicMatrix.of(*entries)
            if not source.is_degree_two() or source.determinant() == 0:
                continue
            via_formulas = conic_dual_matrix(source).polynomial(X, Y)
            via_algorithm = dual_curve(ImplicitCurve(source.polynomial(X1, X2)))
            assert via_algorithm.g == content_and_primitive(via_formulas)[1]
            checked += 1


class TestPointImage:
    def test_circle_top(self):
        image = point_image_on_dual(curve(CIRCLE_SOURCE), (0.0, 1.0))
        assert image == pytest.approx((1.0, 1.0))

    def test_circle_right(self):
        image = point_image_on_dual(curve(CIRCLE_SOURCE), (1.0, 0.0))
        assert image == pytest.approx((0.0, 1.0))

    def test_images_land_on_dual(self):
        c = curve(FIG9_SOURCE)
        g = parse(FIG9_DUAL)
        for t in (0.5, 1.0, 1.7, -2.0, 3.0):
            image = point_image_on_dual(c, (t, 1.0 / t ** 2))
            assert abs(evaluate_float(g, {X: image.x, Y: image.y})) < 1e-9

    def test_off_curve_rejected(self):
        with pytest.raises(ValueError, match="not on the curve"):
            point_image_on_dual(curve(CIRCLE_SOURCE), (0.5, 0.5))

    def test_slope_one_tangent_is_ideal(self):
        s = math.sqrt(0.5)
        with pytest.raises(IdealPointError):
            point_image_on_dual(curve(CIRCLE_SOURCE), (-s, s))


class TestLineDualPoint:
    def test_horizontal(self):
        assert line_dual_point(0.0, 1.0, 1.0) == pytest.approx((1.0, 1.0))

    def test_diagonal(self):
        assert line_dual_point(-1.0, 0.0, 1.0) == pytest.approx((0.5, 0.0))

    def test_spacing(self):
        assert line_dual_point(0.0, 2.0, 3.0) == pytest.approx((3.0, 2.0))

    def test_slope_one_rejected(self):
        with pytest.raises(IdealPointError):
            line_dual_point(1.0, 0.0)

    def test_concurrency_with_point_duals(self):
        m, b, d = -0.75, 2.0, 1.0
        target = line_dual_point(m, b, d)
        for p1 in (-2.0, 0.3, 1.8):
            polyline = point_to_polyline([p1, m * p1 + b], d)
            (x0, y0), (x1v, y1) = polyline
            slope = (y1 - y0) / (x1v - x0)
            extended = y0 + slope * (target.x - x0)
            assert abs(extended - target.y) < 1e-12


class TestPointToPolyline:
    def test_three_axes(self):
        assert point_to_polyline([1, 2, 3], 1.0) == [(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]

    def test_constant_point(self):
        assert point_to_polyline([5, 5], 1.0) == [(0.0, 5.0), (1.0, 5.0)]

    def test_too_short(self):
        with pytest.raises(ValueError):
            point_to_polyline([1], 1.0)

    def test_bad_spacing(self):
        with pytest.raises(ValueError):
            point_to_polyline([1, 2], 0.0)


class TestSampleCurve:
    def test_circle_count_and_residual(self):
        c = curve(CIRCLE_SOURCE)
        samples = sample_curve(c, (-2.0, 2.0, -2.0, 2.0), 8)
        assert len(samples) == 8
        for x1v, x2v in samples.points:
            assert abs(evaluate_float(c.f, {X1: x1v, X2: x2v})) <= 1e-10

    def test_gradients_recorded(self):
        samples = sample_curve(curve(CIRCLE_SOURCE), (-2.0, 2.0, -2.0, 2.0), 8)
        for (x1v, x2v), (g1, g2) in zip(samples.points, samples.gradients):
            assert g1 == pytest.approx(2 * x1v) and g2 == pytest.approx(2 * x2v)
            assert math.hypot(g1, g2) >= 1e-9

    def test_singular_origin_excluded(self):
        samples = sample_curve(curve(FIG8_SOURCE), WINDOW, 100)
        assert len(samples) > 0
        for g1, g2 in samples.gradients:
            assert math.hypot(g1, g2) >= 1e-9
        assert (0.0, 0.0) not in samples.points

    def test_empty_locus(self):
        samples = sample_curve(curve("x1^2 + x2^2 + 1"), WINDOW, 10)
        assert len(samples) == 0

    def test_deterministic(self):
        a = sample_curve(curve(SEC32_SOURCE), WINDOW, 50)
        b = sample_curve(curve(SEC32_SOURCE), WINDOW, 50)
        assert a == b


class TestVerifyDuality:
    @pytest.mark.parametrize("source", [
        FIG9_SOURCE, FIG8_SOURCE, SEC32_SOURCE, CIRCLE_SOURCE])
    def test_every_golden_pair(self, source):
        c = curve(source)
        report = verify_duality(c, dual_curve(c), sample_curve(c, WINDOW, 100))
        assert report.tested > 0
        assert report.max_residual < 1e-6

    def test_conic_pair_tight(self):
        c = curve(CIRCLE_SOURCE)
        formulas = conic_dual_matrix(ConicMatrix.of(1, 1, -1, 0, 0, 0))
        dual = DualCurve(content_and_primitive(formulas.polynomial(X, Y))[1], 2, 2)
        report = verify_duality(c, dual, sample_curve(c, WINDOW, 100))
        assert report.max_residual < 1e-8

    def test_negative_control(self):
        # reusing the source circle equation in (x, y) is not its dual
        c = curve(CIRCLE_SOURCE)
        wrong = DualCurve(parse("x^2 + y^2 - 1"), 2, 2)
        report = verify_duality(c, wrong, sample_curve(c, WINDOW, 100))
        assert report.max_residual > 1e-2

    def test_skipped_counted(self):
        c = curve(CIRCLE_SOURCE)
        samples = sample_curve(c, WINDOW, 200)
        report = verify_duality(c, dual_curve(c), samples)
        assert report.tested + report.skipped == len(samples)

    def test_no_samples(self):
        c = curve("x1^2 + x2^2 + 1")
        with pytest.raises(NoSamplesError):
            verify_duality(c, DualCurve(parse("x + y"), 2, 2),
                           sample_curve(c, WINDOW, 10))


class TestImplicitCurve:
    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            ImplicitCurve(parse("0"))

    def test_rejects_constant(self):
        with pytest.raises(ValueError):
            ImplicitCurve(parse("3"))

    def test_rejects_foreign_variables(self):
        with pytest.raises(ValueError):
            ImplicitCurve(parse("x + y"))

    def test_degree_recorded(self):
        assert curve(FIG9_SOURCE).n == 3
