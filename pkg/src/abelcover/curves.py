"""Plane curve geometry: multiplicities, tangent cones, blow-ups, resolution
graphs, linear systems with infinitely near base conditions, and local
intersection multiplicities.

Curves are reduced projective plane curves over Q given by homogeneous forms
in (x, y, z). Local analysis happens in affine charts with the point of
interest translated to the origin; conjugate clusters of non-rational points
on exceptional lines are handled through one level of quotient-field
arithmetic (see the design notes in :mod:`abelcover.quotients`).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .factorization import uni_factor
from .polynomials import MultiPoly, mp_gcd, parse_poly
from .quotients import QuotientElement, TowerError

__all__ = [
    "PlanePoint", "PlaneCurve", "SingularityCondition", "ResolutionGraph",
    "ResolutionNode", "BlowupChartPoint", "BlowupResult", "Classification",
    "NotOnCurveError", "NonReducedError", "ConditionError",
    "InfiniteMultiplicityError",
    "multiplicity", "tangent_cone", "blow_up", "resolution_graph", "classify",
    "linear_system", "intersection_multiplicity",
    "intersection_multiplicity_resultant",
]

PROJ = ("x", "y", "z")
AFF = ("x", "y")


class NotOnCurveError(ValueError):
    """The point does not lie on the curve."""


class NonReducedError(ValueError):
    """The form has a repeated factor where a reduced curve was required."""


class ConditionError(ValueError):
    """Invalid base-condition data for a linear system."""


class InfiniteMultiplicityError(ValueError):
    """The curves share a component through the point."""


# ---------------------------------------------------------------------------
# points and curves


@dataclass(frozen=True)
class PlanePoint:
    """A projective plane point, normalized so the last nonzero coordinate
    is 1 (scaling-equivalent triples compare equal)."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, x, y, z=1):
        c = (Fraction(x), Fraction(y), Fraction(z))
        if c == (0, 0, 0):
            raise ValueError("(0,0,0) is not a projective point")
        for i in (2, 1, 0):
            if c[i] != 0:
                c = tuple(v / c[i] for v in c)
                break
        object.__setattr__(self, "coords", c)

    @classmethod
    def affine(cls, x, y) -> "PlanePoint":
        return cls(x, y, 1)

    @property
    def at_infinity(self) -> bool:
        return self.coords[2] == 0

    def affine_xy(self) -> tuple[Fraction, Fraction]:
        if self.at_infinity:
            raise ValueError(f"{self} has no affine form")
        return self.coords[0], self.coords[1]

    def __str__(self):
        x, y, z = self.coords
        if z == 1:
            return f"({x}, {y})"
        return f"({x} : {y} : {z})"


class PlaneCurve:
    """A plane curve cut out by a nonzero homogeneous form in (x, y, z)."""

    __slots__ = ("form", "degree", "_reduced")

    def __init__(self, form: MultiPoly):
        if form.variables != PROJ:
            form = form.lift(PROJ) if set(form.variables) <= set(PROJ) else form
        if form.variables != PROJ:
            raise ValueError(f"form must live in {PROJ}")
        if form.is_zero():
            raise ValueError("zero form")
        if not form.is_homogeneous():
            raise ValueError("form is not homogeneous")
        self.form = form.canonical()
        self.degree = form.degree()
        self._reduced = None

    @classmethod
    def from_affine(cls, poly: MultiPoly) -> "PlaneCurve":
        """Homogenize an affine polynomial in (x, y) with z."""
        lifted = poly.lift(PROJ) if poly.variables != PROJ else poly
        d = lifted.degree()
        terms = {}
        for e, c in lifted.terms.items():
            terms[(e[0], e[1], d - e[0] - e[1])] = c
        return cls(MultiPoly(PROJ, terms))

    @classmethod
    def parse(cls, text: str) -> "PlaneCurve":
        p = parse_poly(text, PROJ)
        if p.is_homogeneous():
            return cls(p)
        return cls.from_affine(p)

    @classmethod
    def line_through(cls, p: PlanePoint, q: PlanePoint) -> "PlaneCurve":
        (a1, a2, a3), (b1, b2, b3) = p.coords, q.coords
        form = MultiPoly(PROJ, {
            (1, 0, 0): a2 * b3 - a3 * b2,
            (0, 1, 0): a3 * b1 - a1 * b3,
            (0, 0, 1): a1 * b2 - a2 * b1,
        })
        if form.is_zero():
            raise ValueError("points coincide")
        return cls(form)

    def union(self, *others: "PlaneCurve") -> "PlaneCurve":
        form = self.form
        for o in others:
            form = form * o.form
        return PlaneCurve(form)

    def contains(self, p: PlanePoint) -> bool:
        return self.form.evaluate(dict(zip(PROJ, p.coords))) == 0

    def is_reduced(self) -> bool:
        if self._reduced is None:
            from .modular import form_squarefree
            self._reduced = form_squarefree(self.form)
        return self._reduced

    def affine_form(self) -> MultiPoly:
        return _dehom(self.form)

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"PlaneCurve(deg {self.degree}: {self.form})"


def _dehom(form: MultiPoly) -> MultiPoly:
    """Restrict a projective form to the chart z = 1, in variables (x, y)."""
    terms = {}
    for e, c in form.terms.items():
        key = (e[0], e[1])
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(AFF, {k: v for k, v in terms.items() if v != 0})


def local_form(C: PlaneCurve, p: PlanePoint) -> MultiPoly:
    """The curve in affine coordinates centered at ``p`` (variables (x, y)).

    For points at infinity a chart with the point at finite distance is
    selected first (x = 1 when possible, else y = 1).
    """
    f = C.form
    x0, y0, z0 = p.coords
    if z0 != 0:
        aff = _dehom(f)
        return aff.substitute({"x": MultiPoly.variable("x", AFF) + x0,
                               "y": MultiPoly.variable("y", AFF) + y0})
    if x0 != 0:
        # chart x = 1: local coords (y, z) -> rename to (x, y)
        terms = {}
        for e, c in f.terms.items():
            key = (e[1], e[2])
            terms[key] = terms.get(key, Fraction(0)) + c
        aff = MultiPoly(AFF, {k: v for k, v in terms.items() if v != 0})
        return aff.substitute({"x": MultiPoly.variable("x", AFF) + y0})
    # chart y = 1: local coords (x, z)
    terms = {}
    for e, c in f.terms.items():
        key = (e[0], e[2])
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(AFF, {k: v for k, v in terms.items() if v != 0})


# ---------------------------------------------------------------------------
# multiplicity and tangent cone


def multiplicity(C: PlaneCurve, p: PlanePoint) -> int:
    """Order of vanishing of the curve at the point (0 when off the curve)."""
    f = local_form(C, p)
    m = f.min_degree()
    return 0 if m < 0 else m


def tangent_cone(C: PlaneCurve, p: PlanePoint) -> MultiPoly:
    """Lowest-degree homogeneous part of the local expansion at ``p``,
    canonically normalized (the cone is only defined up to scale)."""
    f = local_form(C, p)
    m = f.min_degree()
    if m <= 0:
        raise NotOnCurveError(f"{p} is not on the curve")
    return f.homogeneous_part(m).canonical()


# ---------------------------------------------------------------------------
# blow-up machinery

# A "cluster" is a Galois orbit of points on the exceptional line t -> (1:t):
# the irreducible modulus m(t) of the direction, or the single chart-2
# direction (0:1). Rational directions have a linear modulus.


@dataclass(frozen=True)
class BlowupChartPoint:
    """A cluster of exceptional-line points met by the strict transform."""

    modulus: tuple[Fraction, ...] | None   # None marks the (0:1) direction
    h_multiplicity: int                    # contact order with the new line
    strict_multiplicity: int               # multiplicity of the strict transform

    @property
    def rational_direction(self) -> tuple[Fraction, Fraction] | None:
        if self.modulus is None:
            return (Fraction(0), Fraction(1))
        if len(self.modulus) == 2:
            return (Fraction(1), -self.modulus[0])
        return None

    @property
    def degree(self) -> int:
        return 1 if self.modulus is None else len(self.modulus) - 1

    @property
    def tangent_to_exceptional(self) -> bool:
        return self.h_multiplicity > self.strict_multiplicity


@dataclass(frozen=True)
class BlowupResult:
    multiplicity: int
    strict_t: MultiPoly          # chart (x, y) -> (x, x*y); exceptional x = 0
    strict_s: MultiPoly          # chart (x, y) -> (x*y, y); exceptional y = 0
    points: tuple[BlowupChartPoint, ...]


def _mono_shift_div(f: MultiPoly, var: str, m: int) -> MultiPoly:
    """Exact division by var**m via exponent shift."""
    i = f.variables.index(var)
    terms = {}
    for e, c in f.terms.items():
        if e[i] < m:
            raise ValueError("not divisible by the exceptional power")
        ne = list(e)
        ne[i] -= m
        terms[tuple(ne)] = c
    return MultiPoly(f.variables, terms)


def _blow_up_local(f: MultiPoly) -> tuple[int, MultiPoly, MultiPoly]:
    """Blow up the origin: (multiplicity, chart-T strict, chart-S strict).

    Chart T: (x, y) = (x, x*t), exceptional {x = 0}, coordinates (x, t)
    renamed back to (x, y). Chart S: (x, y) = (s*y, y), exceptional {y = 0},
    coordinates (s, y) renamed to (x, y).
    """
    m = f.min_degree()
    x, y = MultiPoly.variables_of(AFF)
    ft = f.substitute({"y": x * y})          # y -> x*t (t stored as y)
    fs = f.substitute({"x": x * y})          # x -> s*y (s stored as x)
    return m, _mono_shift_div(ft, "x", m), _mono_shift_div(fs, "y", m)


def _univar_dense(f: MultiPoly, var: str):
    i = f.variables.index(var)
    n = f.degree_in(var)
    out = [0] * (n + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return out


def _exceptional_slice(strict_t: MultiPoly) -> MultiPoly:
    """Restriction of the chart-T strict transform to the exceptional line."""
    return MultiPoly(AFF, {e: c for e, c in strict_t.terms.items() if e[0] == 0})


def _strict_mult_at_cluster(strict_t: MultiPoly, modulus: list[Fraction]) -> int:
    """Multiplicity of the strict transform at a (possibly conjugate) cluster
    (0, tau) with tau a root of the irreducible modulus."""
    if len(modulus) == 2:  # rational root
        tau = -Fraction(modulus[0]) / modulus[1]
        g = strict_t.substitute({"y": MultiPoly.variable("y", AFF) + tau})
        return g.min_degree()
    mod = tuple(Fraction(c) / modulus[-1] for c in modulus)
    tau = QuotientElement([0, 1], mod, "a")
    y = MultiPoly.variable("y", AFF)
    g = strict_t.substitute({"y": y + MultiPoly.constant(tau, AFF)})
    return g.min_degree()


def blow_up(C: PlaneCurve, p: PlanePoint) -> BlowupResult:
    """One blow-up at a point of the curve: strict transforms per chart and
    the clusters where the strict transform meets the exceptional line.

    Reported multiplicities are contact orders with the exceptional line
    (a cluster tangent to it has contact above its own multiplicity).
    """
    f = local_form(C, p)
    m = f.min_degree()
    if m <= 0:
        raise NotOnCurveError(f"{p} is not on the curve")
    m, strict_t, strict_s = _blow_up_local(f)
    points = _cluster_points(strict_t, strict_s)
    return BlowupResult(m, strict_t, strict_s, points)


def _cluster_points(strict_t: MultiPoly, strict_s: MultiPoly) -> tuple[BlowupChartPoint, ...]:
    h = _exceptional_slice(strict_t)
    dense = _univar_dense(h, "y") if not h.is_zero() else []
    clusters = []
    if dense:
        hpoly = MultiPoly(("y",), {(k,): c for k, c in enumerate(dense)})
        if hpoly.degree() > 0:
            _, factors = uni_factor(hpoly)
        else:
            factors = []
        for irr, mult in factors:
            coeffs = _univar_dense(irr, "y")
            coeffs = [Fraction(c) for c in coeffs]
            sm = _strict_mult_at_cluster(strict_t, coeffs)
            clusters.append(BlowupChartPoint(tuple(coeffs), mult, sm))
    # direction (0:1) lives only in the S chart
    s_slice = strict_s.substitute({"x": 0, "y": 0})
    if s_slice.is_zero() or (s_slice.is_constant() and s_slice.constant_value() == 0):
        h_s = MultiPoly(AFF, {e: c for e, c in strict_s.terms.items() if e[1] == 0})
        hm = h_s.min_degree() if not h_s.is_zero() else 0
        sm = strict_s.min_degree()
        clusters.append(BlowupChartPoint(None, hm if hm > 0 else 0, sm))
    clusters.sort(key=lambda cp: (cp.modulus is None, cp.degree,
                                  cp.modulus or ()))
    return tuple(clusters)


# ---------------------------------------------------------------------------
# resolution graphs


@dataclass
class ResolutionNode:
    """One blow-up center: its strict-transform multiplicity and the
    resolved exceptional contacts; children are further centers.

    ``performed`` is False only for a root at which the curve was already
    smooth and no blow-up was needed.
    """

    label: str
    multiplicity: int
    contacts: list[tuple[str, int]] = field(default_factory=list)
    children: list["ResolutionNode"] = field(default_factory=list)
    performed: bool = True

    def count(self) -> int:
        return (1 if self.performed else 0) + sum(c.count() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def sequences(self) -> list[tuple[int, ...]]:
        if not self.children:
            return [(self.multiplicity,)]
        out = []
        for c in self.children:
            out.extend((self.multiplicity,) + s for s in c.sequences())
        return out


@dataclass
class ResolutionGraph:
    root: ResolutionNode

    @property
    def blowup_count(self) -> int:
        return self.root.count()

    @property
    def depth(self) -> int:
        return self.root.depth()

    def multiplicity_sequences(self) -> list[tuple[int, ...]]:
        return self.root.sequences()


_MAX_BLOWUPS = 400


def resolution_graph(C: PlaneCurve, p: PlanePoint) -> ResolutionGraph:
    """Iterate blow-ups until the strict transform is smooth and transverse
    to the exceptional configuration (no tangencies, no corner crossings)."""
    f = local_form(C, p)
    m = f.min_degree()
    if m < 0:
        raise NotOnCurveError(f"{p} is not on the curve")
    if not C.is_reduced():
        sq = mp_gcd(C.form, C.form.derivative("x"))
        sq = mp_gcd(sq, C.form.derivative("y"))
        sq = mp_gcd(sq, C.form.derivative("z"))
        if sq.evaluate(dict(zip(PROJ, p.coords))) == 0:
            raise NonReducedError("repeated factor through the point")
    if m <= 1:
        return ResolutionGraph(ResolutionNode(str(p), m, performed=False))
    budget = [_MAX_BLOWUPS]
    root = _resolve(f, [], str(p), budget)
    return ResolutionGraph(root)


def _line_through_origin(line: MultiPoly) -> bool:
    return line.coefficient((0, 0)) == 0


def _resolve(f: MultiPoly, exc_lines: list[MultiPoly], label: str,
             budget: list[int]) -> ResolutionNode:
    """Recursive resolution at the origin of the local chart.

    ``exc_lines`` are the strict transforms of previous exceptional curves
    passing through the origin (linear forms in the chart coordinates).
    """
    budget[0] -= 1
    if budget[0] < 0:
        raise NonReducedError("blow-up budget exhausted; input not reduced?")
    m = f.min_degree()
    node = ResolutionNode(label, m)
    if m == 0:
        return node
    mm, strict_t, strict_s = _blow_up_local(f)
    # exceptional lines transform: old line a*x + b*y -> direction t = -a/b
    # (strict transform is the horizontal line through that direction).
    old_dirs: list[tuple[Fraction, Fraction] | None] = []
    for line in exc_lines:
        a = line.coefficient((1, 0))
        b = line.coefficient((0, 1))
        old_dirs.append((Fraction(1), -Fraction(a) / b) if b != 0 else None)
        # b == 0: the line x = 0 has direction (0:1)
    for cp in _cluster_points(strict_t, strict_s):
        corner = False
        if cp.modulus is None:
            corner = any(d is None for d in old_dirs)
        elif cp.rational_direction is not None:
            corner = any(d == cp.rational_direction for d in old_dirs
                         if d is not None)
        resolved = (cp.strict_multiplicity <= 1 and cp.h_multiplicity <= 1
                    and not corner)
        if resolved:
            node.contacts.append((_cluster_label(cp), cp.h_multiplicity))
            continue
        child = _resolve_cluster(strict_t, strict_s, cp, old_dirs, budget)
        node.children.append(child)
    return node


def _cluster_label(cp: BlowupChartPoint) -> str:
    if cp.modulus is None:
        return "(0:1)"
    if cp.rational_direction is not None:
        return f"(1:{cp.rational_direction[1]})"
    mod = MultiPoly(("t",), {(k,): c for k, c in enumerate(cp.modulus)})
    return f"[deg {cp.degree}: {mod}]"


def _resolve_cluster(strict_t: MultiPoly, strict_s: MultiPoly,
                     cp: BlowupChartPoint,
                     old_dirs: list, budget: list[int]) -> ResolutionNode:
    x, y = MultiPoly.variables_of(AFF)
    if cp.modulus is None:
        # chart S at (0, 0): new exceptional is {y = 0}; old line with
        # direction (0:1) becomes {x = 0} here.
        g = strict_s
        lines = [y] + ([x] if any(d is None for d in old_dirs) else [])
        return _resolve(g, lines, _cluster_label(cp), budget)
    if len(cp.modulus) == 2:
        tau = -cp.modulus[0] / cp.modulus[1]
        g = strict_t.substitute({"y": y + tau})
        lines = [x]
        if any(d is not None and d[1] == tau for d in old_dirs):
            lines.append(y)
        return _resolve(g, lines, _cluster_label(cp), budget)
    # conjugate cluster over an extension: one quotient level is supported
    if any(c.__class__ is QuotientElement for c in strict_t.terms.values()):
        raise TowerError("nested extension required during resolution")
    tau = QuotientElement([0, 1], tuple(cp.modulus), "a")
    g = strict_t.substitute({"y": y + MultiPoly.constant(tau, AFF)})
    return _resolve(g, [x], _cluster_label(cp), budget)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    kind: str                                     # smooth/node/tacnode/ordinary_triple/other
    tangent: tuple[Fraction, Fraction] | None = None
    graph: ResolutionGraph | None = None

    def __str__(self):
        if self.kind == "tacnode" and self.tangent is not None:
            return f"tacnode({self.tangent[0]},{self.tangent[1]})"
        return self.kind


def classify(C: PlaneCurve, p: PlanePoint) -> Classification:
    """Singularity type from the tangent-cone structure and the resolution."""
    m = multiplicity(C, p)
    if m == 0:
        raise NotOnCurveError(f"{p} is not on the curve")
    if m == 1:
        return Classification("smooth")
    graph = resolution_graph(C, p)
    cone = tangent_cone(C, p)
    cone_sqfree = _binary_form_squarefree(cone)
    if m == 2:
        if cone_sqfree:
            return Classification("node")
        # double tangent line: tacnode iff exactly one more blow-up finishes
        root = graph.root
        if len(root.children) == 1 and not root.children[0].children \
                and root.children[0].multiplicity == 2:
            return Classification("tacnode", _double_root_direction(cone), graph)
        return Classification("other", None, graph)
    if m == 3 and cone_sqfree and not graph.root.children:
        return Classification("ordinary_triple", None, graph)
    return Classification("other", None, graph)


def _binary_form_squarefree(cone: MultiPoly) -> bool:
    dense = _univar_dense(cone.substitute({"x": 1}), "y")
    u = MultiPoly(("t",), {(k,): c for k, c in enumerate(dense)})
    xfactor = cone.degree() - u.degree()  # power of x dividing the cone
    if xfactor > 1:
        return False
    if u.degree() > 0:
        g = mp_gcd(u, u.derivative("t"))
        if not g.is_constant():
            return False
    return True


def _double_root_direction(cone: MultiPoly):
    # cone = c*(b*x - a*y)^2: direction (a, b)
    cxx = cone.coefficient((2, 0))
    cxy = cone.coefficient((1, 1))
    cyy = cone.coefficient((0, 2))
    if cyy != 0:
        # root t = -cxy/(2cyy) of cyy t^2 + cxy t + cxx
        t0 = -Fraction(cxy) / (2 * Fraction(cyy))
        return (Fraction(1), t0)
    return (Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# linear systems with assigned base conditions


@dataclass(frozen=True)
class SingularityCondition:
    """An imposed (possibly infinitely near) base condition.

    ``multiplicities[0]`` is required at the point; later entries at the
    successive infinitely near points selected by ``tangent`` (zero entries
    impose nothing). Only one infinitely near level is supported.
    """

    point: PlanePoint
    multiplicities: tuple[int, ...]
    tangent: tuple[Fraction, Fraction] | None = None

    def __init__(self, point, multiplicities, tangent=None):
        mults = tuple(int(m) for m in multiplicities)
        if not mults or mults[0] < 1:
            raise ConditionError("multiplicity sequence must start positive")
        for a, b in zip(mults, mults[1:]):
            if b > a:
                raise ConditionError("multiplicity sequence must be weakly decreasing")
        if len(mults) >= 2 and tangent is None:
            raise ConditionError("tangent direction required for length >= 2")
        if len([m for m in mults[1:] if m > 0]) > 1 or len(mults) > 2:
            if any(m > 0 for m in mults[2:]):
                raise ConditionError("only one infinitely near level is supported")
            mults = mults[:2]
        if tangent is not None:
            tangent = (Fraction(tangent[0]), Fraction(tangent[1]))
            if tangent == (0, 0):
                raise ConditionError("zero tangent direction")
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "multiplicities", mults)
        object.__setattr__(self, "tangent", tangent)


def _monomial_basis(degree: int) -> list[tuple[int, int, int]]:
    from .polynomials import _grevlex_key
    monos = [(a, b, degree - a - b) for a in range(degree + 1)
             for b in range(degree + 1 - a)]
    monos.sort(key=_grevlex_key, reverse=True)
    return monos


def linear_system(degree: int, conditions: list[SingularityCondition]) -> list[MultiPoly]:
    """Exact basis of degree-``degree`` forms meeting every condition.

    Each condition contributes linear constraints on the coefficient space:
    Taylor vanishing to the first multiplicity at the point, then vanishing
    of the chart strict transform to the second multiplicity at the tangent
    direction. The basis is the canonical reduced nullspace.
    """
    if degree < 0:
        raise ConditionError("degree must be nonnegative")
    seen = set()
    for c in conditions:
        if c.point in seen:
            raise ConditionError(f"duplicate condition point {c.point}")
        seen.add(c.point)
        if c.point.at_infinity:
            raise ConditionError("conditions at infinity are not supported")
    basis = _monomial_basis(degree)
    rows: list[list[Fraction]] = []
    for cond in conditions:
        rows.extend(_condition_rows(degree, basis, cond))
    null = _nullspace(rows, len(basis))
    out = []
    for vec in null:
        form = MultiPoly(PROJ, {m: v for m, v in zip(basis, vec) if v != 0})
        out.append(form.canonical())
    return out


def _condition_rows(degree, basis, cond: SingularityCondition) -> list[list[Fraction]]:
    x0, y0 = cond.point.affine_xy()
    x, y = MultiPoly.variables_of(AFF)
    translated = []
    for (a, b, c) in basis:
        t = ((x + x0) ** a) * ((y + y0) ** b)
        translated.append(t)
    m1 = cond.multiplicities[0]
    rows = []
    for k in range(m1):
        for alpha in range(k + 1):
            beta = k - alpha
            rows.append([t.coefficient((alpha, beta)) for t in translated])
    m2 = cond.multiplicities[1] if len(cond.multiplicities) > 1 else 0
    if m2 <= 0:
        return rows
    u, v = cond.tangent
    if u != 0:
        tau = v / u
        # slices of f(x, x*t): x^k picks the degree-k part at (1, t)
        at_dir = []
        for t in translated:
            w = _strict_slices(t, m1, chart="t")
            w = w.substitute({"y": y + tau})
            at_dir.append(w)
    else:
        at_dir = []
        for t in translated:
            w = _strict_slices(t, m1, chart="s")
            at_dir.append(w)
    for k in range(m2):
        for alpha in range(k + 1):
            beta = k - alpha
            rows.append([w.coefficient((alpha, beta)) for w in at_dir])
    return rows


def _strict_slices(t: MultiPoly, m1: int, chart: str) -> MultiPoly:
    """Linear-in-coefficients strict transform: sum over k >= m1 of
    e^(k-m1) * (degree-k part evaluated along the chart direction)."""
    terms: dict[tuple[int, int], Fraction] = {}
    for (a, b), c in t.terms.items():
        k = a + b
        if k < m1:
            continue
        if chart == "t":
            key = (k - m1, b)     # x^(k-m1) * t^b
        else:
            key = (a, k - m1)     # s^a * y^(k-m1)
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(AFF, terms)


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Deterministic reduced nullspace basis over Q."""
    mat = [list(map(Fraction, r)) for r in rows if any(v != 0 for v in r)]
    pivots: dict[int, int] = {}
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][col]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots[col] = r
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for col, prow in pivots.items():
            vec[col] = -mat[prow][fc]
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# intersection multiplicity


@functools.lru_cache(maxsize=None)
def _share_component(f1: MultiPoly, f2: MultiPoly) -> bool:
    from .modular import forms_coprime
    return not forms_coprime(f1, f2)


def intersection_multiplicity(C: PlaneCurve, D: PlaneCurve, p: PlanePoint) -> int:
    """Local intersection number at ``p`` by blow-up recursion:
    I(C, D; p) = m_C * m_D summed over the tree of common infinitely near
    points."""
    if _share_component(C.form, D.form):
        g = mp_gcd(C.form, D.form)
        if g.evaluate(dict(zip(PROJ, p.coords))) == 0:
            raise InfiniteMultiplicityError("common component through the point")
    f = local_form(C, p)
    g = local_form(D, p)
    bound = C.degree * D.degree
    return _imult(f, g, bound)


def _imult(f: MultiPoly, g: MultiPoly, bound: int) -> int:
    mf, mg = f.min_degree(), g.min_degree()
    if mf <= 0 or mg <= 0:
        if mf < 0 or mg < 0:
            raise InfiniteMultiplicityError("zero local form")
        return 0
    total = mf * mg
    if total > bound:
        raise InfiniteMultiplicityError("intersection exceeds the Bezout bound")
    _, ft, fs = _blow_up_local(f)
    _, gt, gs = _blow_up_local(g)
    hf = _exceptional_slice(ft)
    hg = _exceptional_slice(gt)
    x, y = MultiPoly.variables_of(AFF)
    if not hf.is_zero() and not hg.is_zero() and \
            hf.degree_in("y") >= 0 and hg.degree_in("y") >= 0:
        common = _gcd_slice(hf, hg)
        if common is not None and common.degree() > 0:
            for irr, tau in _cluster_roots(common):
                f2 = ft.substitute({"y": y + tau})
                g2 = gt.substitute({"y": y + tau})
                deg = 1 if not isinstance(tau, QuotientElement) else \
                    len(tau.mod) - 1
                total += deg * _imult(f2, g2, bound)
    # the (0:1) direction
    if _passes_origin(fs) and _passes_origin(gs):
        total += _imult(fs, gs, bound)
    if total > bound:
        raise InfiniteMultiplicityError("intersection exceeds the Bezout bound")
    return total


def _passes_origin(strict_s: MultiPoly) -> bool:
    c = strict_s.coefficient((0, 0))
    return c == 0


def _gcd_slice(hf: MultiPoly, hg: MultiPoly):
    uf = MultiPoly(("y",), {(e[1],): c for e, c in hf.terms.items()})
    ug = MultiPoly(("y",), {(e[1],): c for e, c in hg.terms.items()})
    rational = all(isinstance(c, Fraction) or isinstance(c, int)
                   for c in list(uf.terms.values()) + list(ug.terms.values()))
    if rational:
        return mp_gcd(uf, ug)
    return _field_gcd(uf, ug)


def _field_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Euclidean gcd of univariate polynomials over a coefficient field."""
    def norm(p):
        if p.is_zero():
            return p
        _, lc = p.leading()
        return p * (1 / lc) if lc != 1 else p
    while not b.is_zero():
        a, b = b, _poly_rem_field(a, b)
    return norm(a)


def _poly_rem_field(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    var = a.variables[0]
    while not a.is_zero() and a.degree_in(var) >= b.degree_in(var):
        da, db = a.degree_in(var), b.degree_in(var)
        ca = a.coefficient((da,))
        cb = b.coefficient((db,))
        shift = MultiPoly(a.variables, {(da - db,): ca * (1 / cb)})
        a = a - shift * b
    return a


def _cluster_roots(common: MultiPoly):
    """Roots of a common slice polynomial: (irreducible modulus, root value)
    pairs; over an extension field only rational roots are supported."""
    coeffs = list(common.terms.values())
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        _, factors = uni_factor(common)
        out = []
        for irr, _m in factors:
            dense = _univar_dense(irr, "y")
            if len(dense) == 2:
                out.append((irr, -Fraction(dense[0]) / dense[1]))
            else:
                mod = tuple(Fraction(c) / dense[-1] for c in dense)
                out.append((irr, QuotientElement([0, 1], mod, "a")))
        return out
    # extension coefficients: only degree-1 overall gcd supported
    var = common.variables[0]
    if common.degree_in(var) == 1:
        c0 = common.coefficient((0,))
        c1 = common.coefficient((1,))
        val = c0 * (1 / c1)
        return [(common, -val if not isinstance(val, QuotientElement) else -val)]
    raise TowerError("conjugate cluster over an extension of an extension")


def intersection_multiplicity_resultant(C: PlaneCurve, D: PlaneCurve,
                                        p: PlanePoint) -> int:
    """Independent computation of the local intersection number as the
    x-adic valuation of Res_y after a deterministic shear."""
    from .polynomials import resultant

    if _share_component(C.form, D.form):
        g = mp_gcd(C.form, D.form)
        if g.evaluate(dict(zip(PROJ, p.coords))) == 0:
            raise InfiniteMultiplicityError("common component through the point")
    f = local_form(C, p)
    g = local_form(D, p)
    x, y = MultiPoly.variables_of(AFF)
    lam = 0
    while True:
        if lam > 200:  # pragma: no cover
            raise RuntimeError("no valid shear found")
        fl = f.substitute({"x": x + lam * y})
        gl = g.substitute({"x": x + lam * y})
        ok = True
        for poly in (fl, gl):
            d = poly.degree()
            top = poly.homogeneous_part(d)
            if top.coefficient((0, d)) == 0:
                ok = False
                break
        if ok:
            f0 = fl.substitute({"x": 0})
            g0 = gl.substitute({"x": 0})
            u0 = MultiPoly(("y",), {(e[1],): c for e, c in f0.terms.items()})
            v0 = MultiPoly(("y",), {(e[1],): c for e, c in g0.terms.items()})
            if not u0.is_zero() and not v0.is_zero():
                w = mp_gcd(u0, v0)
                # only the origin may be a common zero on the shear axis,
                # i.e. the fiber gcd must be a power of y
                if len(w.terms) == 1:
                    res = resultant(fl, gl, "y")
                    dense = _univar_dense(res, "x")
                    val = 0
                    while val < len(dense) and dense[val] == 0:
                        val += 1
                    return val
        lam += 1
