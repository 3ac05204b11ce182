"""Local curve analysis: multiplicities, tangent cones, blow-ups, resolution
graphs, classification, intersection multiplicities (two independent routes).
"""

import random
from fractions import Fraction

import pytest

from abelcover.curves import (
    InfiniteMultiplicityError,
    NotOnCurveError,
    PlaneCurve,
    PlanePoint,
    blow_up,
    classify,
    intersection_multiplicity,
    intersection_multiplicity_resultant,
    multiplicity,
    resolution_graph,
    tangent_cone,
)
from abelcover.polynomials import parse_poly

from test_linear_system import (
    C3_TEXT, C6_TEXT, C7_TEXT, P0, P1, P2, P3, P4, P5)

XY = ("x", "y")


def curve(text):
    return PlaneCurve.parse(text)


C6 = curve(C6_TEXT)
C7 = curve(C7_TEXT)
C3 = curve(C3_TEXT)
T4 = curve("x+3y")


def test_multiplicities_at_base_points():
    assert multiplicity(C7, P0) == 3
    assert multiplicity(C6, P0) == 2
    assert multiplicity(C6, P5) == 1
    line = curve("x-y")
    assert multiplicity(line, P1) == 1
    assert multiplicity(line, P3) == 0


def test_tangent_cone_of_septic_at_origin():
    cone = tangent_cone(C7, P0)
    expected = parse_poly("y*(x^2 + 40585383/1587545*y^2)", XY).canonical()
    assert cone == expected


def test_tangent_cone_node():
    c = curve("y^2-x^2+x^3")
    cone = tangent_cone(c, P0)
    assert cone == parse_poly("(y-x)*(y+x)", XY).canonical()
    with pytest.raises(NotOnCurveError):
        tangent_cone(c, PlanePoint.affine(5, 1))


def test_tangent_cone_of_total_union_at_origin():
    union = T4.union(C3, C6, C7)
    cone = tangent_cone(union, P0)
    expected = parse_poly(
        "y*(x+3y)*(x + 240/17*y)*(x^2 + 82080/289*y^2)"
        "*(x^2 + 40585383/1587545*y^2)", XY).canonical()
    assert cone == expected


def test_blow_up_node():
    c = curve("y^2-x^2")
    res = blow_up(c, P0)
    assert res.multiplicity == 2
    pts = [p for p in res.points]
    assert len(pts) == 2
    assert all(p.h_multiplicity == 1 and p.strict_multiplicity == 1 for p in pts)
    assert sorted(p.rational_direction for p in pts) == [
        (Fraction(1), Fraction(-1)), (Fraction(1), Fraction(1))]


def test_blow_up_tacnode():
    c = curve("y^2*z^2-x^4")
    res = blow_up(c, P0)
    assert res.multiplicity == 2
    assert len(res.points) == 1
    pt = res.points[0]
    assert pt.h_multiplicity == 2 and pt.strict_multiplicity == 2
    assert not pt.tangent_to_exceptional
    graph = resolution_graph(c, P0)
    assert graph.blowup_count == 2
    assert graph.multiplicity_sequences() == [(2, 2)]


def test_blow_up_cusp():
    c = curve("y^2*z-x^3")
    res = blow_up(c, P0)
    assert len(res.points) == 1
    pt = res.points[0]
    assert pt.h_multiplicity == 2 and pt.strict_multiplicity == 1
    assert pt.tangent_to_exceptional
    with pytest.raises(NotOnCurveError):
        blow_up(c, PlanePoint.affine(1, 5))


def test_resolution_tacnodes_of_golden_curves():
    g = resolution_graph(C7, P1)
    assert g.blowup_count == 2
    assert g.multiplicity_sequences() == [(2, 2)]
    g = resolution_graph(C6, P0)
    assert g.blowup_count == 1
    assert g.root.multiplicity == 2


def test_resolution_of_pair_union_at_origin():
    union = C6.union(C7)
    g = resolution_graph(union, P0)
    assert g.blowup_count == 1
    assert g.root.multiplicity == 5


def test_resolution_counts_of_pair_union():
    union = C6.union(C7)
    expected = {P0: 1, P1: 2, P2: 2, P3: 2, P4: 2, P5: 2}
    for p, n in expected.items():
        assert resolution_graph(union, p).blowup_count == n


def test_classification_table():
    assert classify(C6, P5).kind == "smooth"
    assert classify(C6, P0).kind == "node"
    c = classify(C6, P1)
    assert c.kind == "tacnode" and c.tangent == (1, 1)
    c = classify(C6, P4)
    assert c.kind == "tacnode" and c.tangent == (1, Fraction(-1, 3))
    assert classify(C7, P0).kind == "ordinary_triple"
    for p in (P1, P2, P3, P4, P5):
        assert classify(C7, p).kind == "tacnode"


def test_intersection_multiplicity_transverse_lines():
    a, b = curve("x-y"), curve("x+y")
    assert intersection_multiplicity(a, b, P0) == 1
    assert intersection_multiplicity_resultant(a, b, P0) == 1


def test_intersection_multiplicity_tacnode_pair():
    # two tacnodes sharing a tangent: 2*2 + 2*2 = 8
    assert intersection_multiplicity(C6, C7, P1) == 8
    assert intersection_multiplicity_resultant(C6, C7, P1) == 8


def test_bezout_audit_of_golden_pair():
    total = sum(intersection_multiplicity(C6, C7, p)
                for p in (P0, P1, P2, P3, P4, P5))
    assert total == 42 == C6.degree * C7.degree


def test_intersection_infinite_on_shared_component():
    a = curve("x*y")
    b = curve("x*z")
    with pytest.raises(InfiniteMultiplicityError):
        intersection_multiplicity(a, b, P0)


def test_two_routes_agree_randomized():
    rng = random.Random(31)
    ctx = ("x", "y", "z")
    agreements = 0
    while agreements < 20:
        d1, d2 = rng.randrange(1, 4), rng.randrange(1, 4)
        f = _random_affine_through_origin(rng, d1)
        g = _random_affine_through_origin(rng, d2)
        A, B = PlaneCurve.from_affine(f), PlaneCurve.from_affine(g)
        from abelcover.curves import _share_component
        if _share_component(A.form, B.form):
            continue
        i1 = intersection_multiplicity(A, B, P0)
        i2 = intersection_multiplicity_resultant(A, B, P0)
        assert i1 == i2, f"{A} vs {B}: {i1} != {i2}"
        agreements += 1


def _random_affine_through_origin(rng, deg):
    terms = {}
    for a in range(deg + 1):
        for b in range(deg + 1 - a):
            if a == b == 0:
                continue
            if rng.random() < 0.6:
                terms[(a, b)] = Fraction(rng.randrange(-5, 6))
    terms[(deg, 0)] = Fraction(rng.randrange(1, 5))
    from abelcover.polynomials import MultiPoly
    return MultiPoly(XY, terms)
