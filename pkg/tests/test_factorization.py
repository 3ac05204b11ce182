"""Univariate factorization and quotient-field arithmetic."""

import random
from fractions import Fraction

import pytest

from abelcover.factorization import is_irreducible, uni_factor
from abelcover.polynomials import MultiPoly, parse_poly
from abelcover.quotients import InvalidModulusError, QuotientElement, quotient_gcd

X = ("x",)


def U(text):
    return parse_poly(text, X)


def reassemble(content, factors, ctx=X):
    out = MultiPoly.constant(content, ctx)
    for f, k in factors:
        out = out * f ** k
    return out


def test_difference_of_squares_factors():
    content, factors = uni_factor(U("x^2-1"))
    assert content == 1
    assert sorted(str(f) for f, _ in factors) == ["x+1", "x-1"]


def test_irreducible_quadratic():
    content, factors = uni_factor(U("x^2+1"))
    assert content == 1
    assert len(factors) == 1 and factors[0] == (U("x^2+1"), 1)
    assert is_irreducible(U("x^2+1"))


def test_content_and_cyclotomic():
    content, factors = uni_factor(U("2x^3-2"))
    assert content == 2
    assert [(str(f), k) for f, k in factors] == [("x-1", 1), ("x^2+x+1", 1)]


def test_repeated_factors():
    f = U("x-2") ** 3 * U("x^2+3") ** 2 * 5
    content, factors = uni_factor(f)
    assert reassemble(content, factors) == f
    assert sorted((str(p), k) for p, k in factors) == [("x-2", 3), ("x^2+3", 2)]


def test_rational_content():
    f = U("x^2-1") * Fraction(3, 7)
    content, factors = uni_factor(f)
    assert content == Fraction(3, 7)
    assert reassemble(content, factors) == f


def test_factor_roundtrip_randomized():
    rng = random.Random(99)
    for _ in range(15):
        nf = rng.randrange(1, 4)
        f = MultiPoly.constant(rng.randrange(1, 5), X)
        for _ in range(nf):
            deg = rng.randrange(1, 4)
            coeffs = [rng.randrange(-6, 7) for _ in range(deg)] + [rng.randrange(1, 6)]
            g = MultiPoly(X, {(k,): c for k, c in enumerate(coeffs)})
            f = f * g
        content, factors = uni_factor(f)
        assert reassemble(content, factors) == f
        for p, _ in factors:
            assert is_irreducible(p)
            _, lead = p.leading()
            assert lead > 0


def test_recombination_pressure():
    # swinnerton-dyer-style: irreducible over Q, splits mod every prime
    f = U("x^4-10x^2+1")  # minimal polynomial of sqrt(2)+sqrt(3)
    content, factors = uni_factor(f)
    assert content == 1
    assert factors == [(f, 1)]


def test_bigger_product():
    f = U("x^6+2x^5-3x^4+x-7") * U("x^5-x-1") * U("x^2+x+1")
    content, factors = uni_factor(f)
    assert reassemble(content, factors) == f
    assert len(factors) == 3


def test_quotient_element_basics():
    i = QuotientElement([0, 1], [1, 0, 1])  # t mod t^2+1
    assert i * i == -1
    assert (i + 1) * (i - 1) == i * i - 1
    one = i / i
    assert one == 1
    with pytest.raises(InvalidModulusError):
        QuotientElement([0, 1], [Fraction(-1), 0, 1])  # t^2-1 reducible


def test_quotient_gcd_root_extraction():
    ty = ("t", "y")
    m = parse_poly("t^2+1", ("t",))
    f = parse_poly("y^2+1", ty)
    g = parse_poly("y-t", ty)
    assert quotient_gcd(f, g, m) == parse_poly("y-t", ty)


def test_quotient_gcd_rational_modulus():
    ty = ("t", "y")
    m = parse_poly("t-5", ("t",))
    f = parse_poly("y-5", ty)
    assert quotient_gcd(f, f, m) == parse_poly("y-5", ty)


def test_quotient_gcd_derived_small_instance():
    # oracle: hand Euclid mod t^2-2 on (y^2-2, (y-t)(y+2t) = y^2+t*y-2t^2=y^2+t*y-4)
    ty = ("t", "y")
    m = parse_poly("t^2-2", ("t",))
    f = parse_poly("y^2-2", ty)
    g = parse_poly("y^2+t*y-4", ty)
    # gcd should be y - t: y^2-2 - (y^2+ty-4) = -ty+2 = -t(y - 2/t) = -t(y-t)
    assert quotient_gcd(f, g, m) == parse_poly("y-t", ty)


def test_quotient_gcd_rejects_reducible_modulus():
    ty = ("t", "y")
    with pytest.raises(InvalidModulusError):
        quotient_gcd(parse_poly("y-t", ty), parse_poly("y+t", ty),
                     parse_poly("t^2-1", ("t",)))
