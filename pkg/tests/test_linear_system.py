"""Linear systems with assigned base conditions: golden curve reproduction.

The three defining polynomials (degrees 6, 7, 3) and the two auxiliary conics
are pinned as golden strings; the linear-system solver must reproduce each
one bit-exactly in canonical form.
"""

from fractions import Fraction

import pytest

from abelcover.curves import (
    ConditionError,
    PlaneCurve,
    PlanePoint,
    SingularityCondition,
    linear_system,
    multiplicity,
)
from abelcover.polynomials import parse_poly

P0 = PlanePoint.affine(0, 0)
P1 = PlanePoint.affine(2, 2)
P2 = PlanePoint.affine(-2, 2)
P3 = PlanePoint.affine(3, 1)
P4 = PlanePoint.affine(-3, 1)
P5 = PlanePoint.affine(0, 5)

T1, T2, T3, T4, T5 = (1, 1), (-1, 1), (3, 1), (-3, 1), (1, 0)

C6_TEXT = (
    "289*x^6+754326*x^4*y^2+2610657*x^2*y^4+1906344*y^6-2013848*x^4*y*z"
    "-17946576*x^2*y^3*z-22212504*y^5*z+1336400*x^4*z^2"
    "+35856160*x^2*y^2*z^2+89326224*y^4*z^2-22270208*x^2*y*z^3"
    "-146421504*y^3*z^3+295936*x^2*z^4+84049920*y^2*z^4"
)

C7_TEXT = (
    "8683464*x^6*y-494984955*x^4*y^3-1064093674*x^2*y^5-558251235*y^7"
    "-11358312*x^6*z+1253331746*x^4*y^2*z+8340957732*x^2*y^4*z"
    "+7286240034*y^6*z-920312219*x^4*y*z^2-17394911410*x^2*y^3*z^2"
    "-32292289971*y^5*z^2+179839940*x^4*z^3+11716330200*x^2*y^2*z^3"
    "+55580514660*y^4*z^3-1270036000*x^2*y*z^4-32468306400*y^3*z^4"
)

C3_TEXT = (
    "17*x^3-924*x^2*y-153*x*y^2-996*y^3+1164*x^2*z"
    "+544*x*y*z+6516*y^2*z-544*x*z^2-7680*y*z^2"
)


def conditions_c6():
    return [
        SingularityCondition(P0, (2,)),
        SingularityCondition(P1, (2, 2), T1),
        SingularityCondition(P2, (2, 2), T2),
        SingularityCondition(P3, (2, 2), T3),
        SingularityCondition(P4, (2, 2), T4),
        SingularityCondition(P5, (1, 1), T5),
    ]


def conditions_c7():
    return [
        SingularityCondition(P0, (3,)),
        SingularityCondition(P1, (2, 2), T1),
        SingularityCondition(P2, (2, 2), T2),
        SingularityCondition(P3, (2, 2), T3),
        SingularityCondition(P4, (2, 2), T4),
        SingularityCondition(P5, (2, 2), T5),
    ]


def conditions_c3():
    return [
        SingularityCondition(P0, (1,)),
        SingularityCondition(P1, (1, 1), T1),
        SingularityCondition(P2, (1, 1), T2),
        SingularityCondition(P3, (1, 1), T3),
        SingularityCondition(P4, (1, 0), T4),
        SingularityCondition(P5, (1, 0), T5),
    ]


def test_sextic_is_unique_and_matches_listing():
    basis = linear_system(6, conditions_c6())
    assert len(basis) == 1
    assert str(basis[0]) == C6_TEXT


def test_septic_is_unique_and_matches_listing():
    basis = linear_system(7, conditions_c7())
    assert len(basis) == 1
    assert str(basis[0]) == C7_TEXT


def test_cubic_is_unique_and_matches_listing():
    basis = linear_system(3, conditions_c3())
    assert len(basis) == 1
    assert str(basis[0]) == C3_TEXT


def test_line_through_two_points():
    basis = linear_system(1, [SingularityCondition(P0, (1,)),
                              SingularityCondition(P1, (1,))])
    assert len(basis) == 1
    assert basis[0] == parse_poly("x-y", ("x", "y", "z"))


def test_tangent_conic_misses_sixth_point():
    basis = linear_system(2, [
        SingularityCondition(P4, (1,)),
        SingularityCondition(P1, (1, 1), T1),
        SingularityCondition(P2, (1, 1), T2),
    ])
    assert len(basis) == 1
    conic = basis[0]
    assert conic == parse_poly("x^2-9y^2+32y*z-32z^2", ("x", "y", "z"))
    assert conic.evaluate({"x": Fraction(0), "y": Fraction(5), "z": Fraction(1)}) != 0


def test_conic_through_five_points():
    basis = linear_system(2, [SingularityCondition(p, (1,))
                              for p in (P1, P2, P3, P4, P5)])
    assert len(basis) == 1
    assert basis[0] == parse_poly("-12x^2+11y^2-93y*z+190z^2", ("x", "y", "z")).canonical()


def test_basis_members_satisfy_conditions():
    basis = linear_system(6, conditions_c6())
    curve = PlaneCurve(basis[0])
    assert multiplicity(curve, P0) == 2
    assert multiplicity(curve, P1) == 2
    assert multiplicity(curve, P5) == 1


def test_condition_validation():
    with pytest.raises(ConditionError):
        SingularityCondition(P0, ())
    with pytest.raises(ConditionError):
        SingularityCondition(P0, (1, 2), (1, 1))
    with pytest.raises(ConditionError):
        SingularityCondition(P0, (2, 2))  # tangent missing
    with pytest.raises(ConditionError):
        linear_system(2, [SingularityCondition(P0, (1,)),
                          SingularityCondition(P0, (1,))])


def test_empty_system_when_overconstrained():
    conds = [SingularityCondition(p, (1,)) for p in (P0, P1, P2, P3, P4, P5)]
    conds.append(SingularityCondition(PlanePoint.affine(1, 7), (1,)))
    basis = linear_system(1, conds)
    assert basis == []
