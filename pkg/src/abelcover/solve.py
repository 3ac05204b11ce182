"""Zero-dimensional solving of plane curve systems over the splitting field.

Strategy: a deterministic shear x -> x + lambda*y until the eliminant is
squarefree and every fiber carries a single point, elimination by resultants,
factorization of the eliminant, and per-factor fiber gcds in Q[t]/(m) for the
remaining coordinate. Points at infinity are handled on the restricted binary
forms. Every reported point is verified by substitution into every input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import NonReducedError, PlaneCurve, PlanePoint, AFF, PROJ, _dehom
from .factorization import uni_factor
from .polynomials import MultiPoly, mp_gcd, resultant
from .quotients import QuotientElement, quotient_gcd

__all__ = [
    "SolutionSet", "ExtensionComponent", "PositiveDimensionalError",
    "common_points", "singular_locus",
]


class PositiveDimensionalError(ValueError):
    """The common zero set contains a curve."""


@dataclass(frozen=True)
class ExtensionComponent:
    """A Galois orbit of non-rational solutions: a monic irreducible modulus
    of degree >= 2 and the three homogeneous coordinates in Q[t]/(m)."""

    modulus: tuple[Fraction, ...]
    coords: tuple[QuotientElement, QuotientElement, QuotientElement]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def modulus_poly(self) -> MultiPoly:
        return MultiPoly(("t",), {(k,): c for k, c in enumerate(self.modulus)})

    def __str__(self):
        x, y, z = self.coords
        return (f"[{self.modulus_poly()}: x={x.representative}, "
                f"y={y.representative}, z={z.representative}]")


@dataclass(frozen=True)
class SolutionSet:
    points: tuple[PlanePoint, ...]
    extensions: tuple[ExtensionComponent, ...]

    @property
    def is_rational(self) -> bool:
        return not self.extensions

    def __str__(self):
        pts = ", ".join(str(p) for p in self.points)
        body = "{" + pts + "}"
        if self.extensions:
            body += " + " + "; ".join(str(e) for e in self.extensions)
        return body


def _sorted_points(points) -> tuple[PlanePoint, ...]:
    return tuple(sorted(set(points), key=lambda p: p.coords))


def _sorted_extensions(exts) -> tuple[ExtensionComponent, ...]:
    return tuple(sorted(set(exts),
                        key=lambda e: (e.degree, e.modulus,
                                       tuple(c.rep for c in e.coords))))


# ---------------------------------------------------------------------------
# public operations


def common_points(curves: list[PlaneCurve]) -> SolutionSet:
    """The finite common zero set of the given curves over the splitting
    field.

    Pairs may share components as long as the whole system still cuts out
    finitely many points; a component shared by the entire system raises
    :class:`PositiveDimensionalError`.
    """
    if len(curves) < 2:
        raise PositiveDimensionalError("need at least two curves")
    forms = [c.form for c in curves]
    total = forms[0]
    for ftot in forms[1:]:
        total = mp_gcd(total, ftot)
        if total.is_constant():
            break
    if not total.is_constant():
        raise PositiveDimensionalError("all curves share a component")
    points, exts = _solve_projective(forms)
    sol = SolutionSet(_sorted_points(points), _sorted_extensions(exts))
    _verify(sol, forms)
    return sol


def singular_locus(C: PlaneCurve) -> SolutionSet:
    """All singular points of a reduced curve, over the splitting field."""
    if not C.is_reduced():
        raise NonReducedError("singular locus of a non-reduced curve")
    F = C.form
    partials = [F.derivative(v) for v in PROJ]
    # affine chart: common zeros of (f, f_x, f_y)
    f = _dehom(F)
    affine_polys = [f, f.derivative("x"), f.derivative("y")]
    affine_polys = [g for g in affine_polys if not g.is_zero()]
    points, exts = _solve_affine_decomposed(affine_polys)
    # line at infinity: common zeros of the three restricted partials
    ipoints, iexts = _solve_at_infinity([p for p in partials])
    sol = SolutionSet(_sorted_points(points + ipoints),
                      _sorted_extensions(exts + iexts))
    _verify(sol, partials + [F])
    return sol


# ---------------------------------------------------------------------------
# projective wrapper


def _solve_projective(forms: list[MultiPoly]):
    affine = [_dehom(g) for g in forms]
    affine = [g for g in affine if not g.is_zero()]
    points, exts = _solve_affine_decomposed(affine)
    ipts, iexts = _solve_at_infinity(forms)
    return points + ipts, exts + iexts


def _solve_at_infinity(forms: list[MultiPoly]):
    """Common zeros on z = 0 of the restrictions (binary forms)."""
    restricted = []
    for g in forms:
        r = MultiPoly(AFF, {(e[0], e[1]): c for e, c in g.terms.items()
                            if e[2] == 0})
        restricted.append(r)
    live = [r for r in restricted if not r.is_zero()]
    if not live:
        raise PositiveDimensionalError("every form vanishes on the infinity line")
    if any(r.is_constant() for r in live):
        return [], []
    # the direction (1:0): x-only leading coefficient
    at_10 = all(r.coefficient((r.degree(), 0)) == 0 for r in live)
    # other directions (t:1): roots of r(t, 1)
    w = None
    for r in live:
        u = MultiPoly(("t",), {(e[0],): c for e, c in
                               r.substitute({"y": 1}).terms.items()})
        w = u if w is None else mp_gcd(w, u)
        if w.is_constant():
            break
    points = []
    exts = []
    if at_10:
        points.append(PlanePoint(1, 0, 0))
    if w is not None and not w.is_constant():
        _, factors = uni_factor(w)
        for irr, _m in factors:
            dense = _dense_t(irr)
            if len(dense) == 2:
                t0 = -dense[0] / dense[1]
                points.append(PlanePoint(t0, 1, 0))
            else:
                mod = tuple(c / dense[-1] for c in dense)
                tau = QuotientElement([0, 1], mod, "t")
                one = QuotientElement([1], mod, "t")
                zero = QuotientElement([], mod, "t")
                exts.append(ExtensionComponent(mod, (tau, one, zero)))
    return points, exts


def _dense_t(p: MultiPoly) -> list[Fraction]:
    var = [v for v in p.variables if p.degree_in(v) > 0][0]
    i = p.variables.index(var)
    out = [Fraction(0)] * (p.degree_in(var) + 1)
    for e, c in p.terms.items():
        out[e[i]] = Fraction(c)
    return out


# ---------------------------------------------------------------------------
# affine solver with shared-component decomposition


def _solve_affine_decomposed(polys: list[MultiPoly]):
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return [], []
    if not polys:
        return [], []
    if len(polys) == 1:
        raise PositiveDimensionalError("a single curve has no finite zero set")
    # split off shared components: V(d*a, d*b, R) = V(d, R) u V(a, b, R)
    from .modular import affine_coprime
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if affine_coprime(polys[i], polys[j]):
                continue
            d = mp_gcd(polys[i], polys[j])
            if d.degree() > 0:
                rest = [p for k, p in enumerate(polys) if k not in (i, j)]
                if not rest:
                    raise PositiveDimensionalError(
                        "two curves share a component")
                pi = polys[i].exact_div(d)
                pj = polys[j].exact_div(d)
                p1, e1 = _solve_affine_decomposed([d] + rest)
                p2, e2 = _solve_affine_decomposed([pi, pj] + rest)
                return p1 + p2, e1 + e2
    return _solve_affine_core(polys)


_MAX_SHEAR = 60


def _solve_affine_core(polys: list[MultiPoly]):
    """Pairwise-coprime affine polynomials; returns (points, extensions)."""
    for lam in range(_MAX_SHEAR):
        result = _try_shear(polys, lam)
        if result is not None:
            return result
    raise RuntimeError("no shear yielded simple fibers")  # pragma: no cover


def _try_shear(polys: list[MultiPoly], lam: int):
    x, y = MultiPoly.variables_of(AFF)
    sheared = [g.substitute({"x": x + lam * y}) for g in polys]
    pure_x = [g for g in sheared if g.degree_in("y") <= 0]
    in_y = [g for g in sheared if g.degree_in("y") > 0]
    elim = None
    if not in_y:
        # all vertical-fiber constraints: coprime pure-x polys, no solutions
        return [], []
    base = min(in_y, key=lambda g: g.degree_in("y"))
    others = [g for g in in_y if g is not base]
    for g in others:
        r = resultant(base, g, "y")
        elim = r if elim is None else mp_gcd(elim, r)
        if elim.is_constant():
            break
    for g in pure_x:
        elim = g if elim is None else mp_gcd(elim, g)
    if elim is None:
        # single polynomial in y with nothing to intersect
        raise PositiveDimensionalError("underdetermined system")
    if elim.is_zero():
        raise PositiveDimensionalError("vanishing eliminant")
    elim_u = MultiPoly(("t",), {(e[0],): c for e, c in elim.terms.items()})
    if elim_u.is_constant():
        return [], []
    g = mp_gcd(elim_u, elim_u.derivative("t"))
    if not g.is_constant():
        elim_u = elim_u.exact_div(g)
    _, factors = uni_factor(elim_u)
    points: list[PlanePoint] = []
    exts: list[ExtensionComponent] = []
    for irr, _m in factors:
        dense = _dense_t(irr)
        if len(dense) == 2:
            out = _rational_fiber(sheared, -dense[0] / dense[1], lam)
        else:
            out = _extension_fiber(sheared, dense, lam)
        if out is None:
            return None  # fiber not simple: retry with the next shear
        points.extend(out[0])
        exts.extend(out[1])
    return points, exts


def _rational_fiber(sheared: list[MultiPoly], x0: Fraction, lam: int):
    fibers = []
    for g in sheared:
        h = g.substitute({"x": x0})
        u = MultiPoly(("y",), {(e[1],): c for e, c in h.terms.items()})
        if u.is_zero():
            continue  # this curve contains the whole fiber line
        fibers.append(u)
    w = fibers[0]
    for u in fibers[1:]:
        w = mp_gcd(w, u)
        if w.is_constant():
            break
    if w.is_constant():
        return [], []  # spurious eliminant root
    _, wf = uni_factor(w)
    if len(wf) != 1:
        return None
    irr = wf[0][0]
    dense = _dense_t(irr)
    if len(dense) != 2:
        return None  # conjugate y-values over a rational x: shear again
    y0 = -dense[0] / dense[1]
    return [PlanePoint.affine(x0 + lam * y0, y0)], []


def _extension_fiber(sheared: list[MultiPoly], modulus: list[Fraction], lam: int):
    mod = tuple(c / modulus[-1] for c in modulus)
    mpoly = MultiPoly(("t",), {(k,): c for k, c in enumerate(mod)})
    ty = ("t", "y")
    fibers = []
    for g in sheared:
        h = MultiPoly(ty, {(e[0], e[1]): c for e, c in g.terms.items()})
        fibers.append(h)
    w = None
    for h in fibers:
        if w is None:
            w = h
            continue
        w = quotient_gcd(w, h, mpoly)
        if w.degree_in("y") == 0:
            break
    assert w is not None
    dy = w.degree_in("y")
    if dy == 0:
        reduced = _reduce_mod(w, mod)
        if all(qe == 0 for qe in reduced):
            return None  # degenerate; be safe and reshear
        return [], []  # spurious
    if dy > 1:
        return None
    coeffs = _reduce_mod(w, mod)  # [c0, c1] with y = -c0/c1
    c0, c1 = coeffs[0], coeffs[1]
    yv = (-1) * c0 * c1.inverse()
    tau = QuotientElement([0, 1], mod, "t")
    xv = tau + lam * yv
    if xv.is_rational() and yv.is_rational():
        return None  # should not happen; reshear defensively
    one = QuotientElement([1], mod, "t")
    return [], [ExtensionComponent(mod, (xv, yv, one))]


def _reduce_mod(w: MultiPoly, mod: tuple[Fraction, ...]):
    """Coefficients of w in y as QuotientElements mod (t-modulus)."""
    dy = w.degree_in("y")
    ti = w.variables.index("t") if "t" in w.variables else None
    yi = w.variables.index("y")
    buckets: list[dict[int, Fraction]] = [dict() for _ in range(dy + 1)]
    for e, c in w.terms.items():
        tp = e[ti] if ti is not None else 0
        buckets[e[yi]][tp] = buckets[e[yi]].get(tp, Fraction(0)) + Fraction(c)
    out = []
    for b in buckets:
        n = max(b) + 1 if b else 0
        out.append(QuotientElement([b.get(i, Fraction(0)) for i in range(n)],
                                   mod, "t"))
    return out


# ---------------------------------------------------------------------------
# verification


def _verify(sol: SolutionSet, forms: list[MultiPoly]):
    for p in sol.points:
        for g in forms:
            if g.evaluate(dict(zip(PROJ, p.coords))) != 0:
                raise AssertionError(f"reported point {p} fails {g}")
    for comp in sol.extensions:
        vals = dict(zip(PROJ, comp.coords))
        for g in forms:
            acc = None
            for e, c in g.terms.items():
                term = QuotientElement([Fraction(c)], comp.modulus, "t")
                for vi, v in enumerate(PROJ):
                    if e[vi]:
                        term = term * (vals[v] ** e[vi])
                acc = term if acc is None else acc + term
            if acc is not None and not (acc == 0):
                raise AssertionError(f"reported component {comp} fails {g}")
