"""Zero-dimensional solving: singular loci and common points over the
splitting field."""

from fractions import Fraction

import pytest

from abelcover.curves import NonReducedError, PlaneCurve, PlanePoint
from abelcover.solve import (
    PositiveDimensionalError,
    common_points,
    singular_locus,
)

from test_linear_system import (
    C3_TEXT, C6_TEXT, C7_TEXT, P0, P1, P2, P3, P4, P5)

C6 = PlaneCurve.parse(C6_TEXT)
C7 = PlaneCurve.parse(C7_TEXT)
C3 = PlaneCurve.parse(C3_TEXT)
T4 = PlaneCurve.parse("x+3y")

BASE = {P0, P1, P2, P3, P4, P5}


def test_singular_locus_of_pair_union_is_exactly_the_base_points():
    sol = singular_locus(C6.union(C7))
    assert set(sol.points) == BASE
    assert sol.extensions == ()


def test_singular_locus_smooth_conic_empty():
    sol = singular_locus(PlaneCurve.parse("x^2+y^2-z^2"))
    assert sol.points == () and sol.extensions == ()


def test_singular_locus_cusp():
    sol = singular_locus(PlaneCurve.parse("y^2*z-x^3"))
    # the cusp at the origin and the singular point at infinity (0:1:0)
    assert PlanePoint.affine(0, 0) in sol.points
    assert sol.extensions == ()


def test_singular_locus_rejects_nonreduced():
    with pytest.raises(NonReducedError):
        singular_locus(PlaneCurve.parse("(x+y)^2"))


def test_common_points_of_the_three_generator_images():
    sol = common_points([T4.union(C6), C7, T4.union(C3)])
    assert set(sol.points) == BASE
    assert sol.extensions == ()


def test_common_points_two_lines():
    sol = common_points([PlaneCurve.parse("x"), PlaneCurve.parse("y")])
    assert sol.points == (PlanePoint(0, 0, 1),)


def test_common_points_conjugate_pair():
    circle = PlaneCurve.parse("x^2+y^2-z^2")
    diag = PlaneCurve.parse("x-y")
    sol = common_points([circle, diag])
    assert sol.points == ()
    assert len(sol.extensions) == 1
    comp = sol.extensions[0]
    assert comp.degree == 2
    assert comp.modulus == (Fraction(-1, 2), Fraction(0), Fraction(1))
    x, y, z = comp.coords
    assert x == y and z == 1


def test_common_points_rejects_fully_shared_component():
    with pytest.raises(PositiveDimensionalError):
        common_points([T4.union(C6), T4.union(C3)])


def test_common_points_at_infinity():
    a = PlaneCurve.parse("x*z-y^2")   # conic through (1:0:0)
    b = PlaneCurve.parse("x*y-z^2")   # cubic-ish through (1:0:0)
    sol = common_points([a, b])
    assert PlanePoint(1, 0, 0) in sol.points
