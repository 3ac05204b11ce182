"""Arithmetic in a univariate quotient field Q[t]/(m).

One extension level is all the toolkit needs (splitting-field reporting for
zero-dimensional solving and conjugate-cluster recursion); towers are out of
scope and raise :class:`TowerError`.
"""

from __future__ import annotations

from fractions import Fraction

from .factorization import is_irreducible
from .polynomials import MultiPoly

__all__ = ["QuotientElement", "InvalidModulusError", "TowerError", "quotient_gcd"]


class InvalidModulusError(ValueError):
    """Modulus is zero, non-monic, or reducible."""


class TowerError(ValueError):
    """A second extension level was required (out of scope)."""


def _dense(f: MultiPoly, var: str) -> tuple[Fraction, ...]:
    i = f.variables.index(var)
    if any(v != var and f.degree_in(v) > 0 for v in f.variables):
        raise ValueError("not univariate")
    out = [Fraction(0)] * (f.degree_in(var) + 1 if f.terms else 0)
    for e, c in f.terms.items():
        out[e[i]] = Fraction(c)
    return tuple(out)


_IRREDUCIBLE_CACHE: dict[tuple, bool] = {}


class QuotientElement:
    """An element of Q[t]/(m), reduced below the modulus degree."""

    __slots__ = ("rep", "mod", "var")

    def __init__(self, rep, mod, var: str = "t", _checked: bool = False):
        if isinstance(mod, MultiPoly):
            live = [v for v in mod.variables if mod.degree_in(v) > 0]
            var = live[0] if live else var
            mod = _dense(mod, var)
        mod = tuple(Fraction(c) for c in mod)
        if len(mod) < 2:
            raise InvalidModulusError("modulus must have positive degree")
        if mod[-1] != 1:
            raise InvalidModulusError("modulus must be monic")
        if not _checked:
            key = mod
            if key not in _IRREDUCIBLE_CACHE:
                ctx = (var,)
                poly = MultiPoly(ctx, {(k,): c for k, c in enumerate(mod)})
                _IRREDUCIBLE_CACHE[key] = is_irreducible(poly)
            if not _IRREDUCIBLE_CACHE[key]:
                raise InvalidModulusError("modulus is reducible over Q")
        if isinstance(rep, MultiPoly):
            rep = _dense(rep, var)
        elif isinstance(rep, (int, Fraction)):
            rep = (Fraction(rep),)
        rep = [Fraction(c) for c in rep]
        rep = _reduce(rep, mod)
        self.rep = tuple(rep)
        self.mod = mod
        self.var = var

    # -- views ----------------------------------------------------------

    @property
    def representative(self) -> MultiPoly:
        return MultiPoly((self.var,), {(k,): c for k, c in enumerate(self.rep)})

    @property
    def modulus(self) -> MultiPoly:
        return MultiPoly((self.var,), {(k,): c for k, c in enumerate(self.mod)})

    def is_rational(self) -> bool:
        return len(self.rep) <= 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.rep[0] if self.rep else Fraction(0)

    # -- field arithmetic -------------------------------------------------

    def _make(self, rep) -> "QuotientElement":
        return QuotientElement(rep, self.mod, self.var, _checked=True)

    def _coerce(self, other):
        if isinstance(other, QuotientElement):
            if other.mod != self.mod:
                raise TowerError("mixing distinct extension fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self._make([Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.rep), len(o.rep))
        return self._make([
            (self.rep[i] if i < len(self.rep) else 0) + (o.rep[i] if i < len(o.rep) else 0)
            for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._make([-c for c in self.rep])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.rep or not o.rep:
            return self._make([])
        out = [Fraction(0)] * (len(self.rep) + len(o.rep) - 1)
        for i, a in enumerate(self.rep):
            if a:
                for j, b in enumerate(o.rep):
                    out[i + j] += a * b
        return self._make(out)

    __rmul__ = __mul__

    def inverse(self) -> "QuotientElement":
        if not self.rep:
            raise ZeroDivisionError("zero has no inverse")
        # extended Euclid against the modulus
        r0, r1 = list(self.mod), list(self.rep)
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        # r0 = gcd (a unit, modulus irreducible)
        inv_lead = 1 / r0[-1]
        return self._make([c * inv_lead for c in t0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self._make([Fraction(1)])
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.rep
            return self.is_rational() and self.rational_value() == other
        if isinstance(other, QuotientElement):
            return self.mod == other.mod and self.rep == other.rep
        return NotImplemented

    def __hash__(self):
        return hash((self.rep, self.mod))

    def __repr__(self):
        return f"[{self.representative} mod {self.modulus}]"


def _reduce(rep: list[Fraction], mod: tuple[Fraction, ...]) -> list[Fraction]:
    d = len(mod) - 1
    rep = list(rep)
    while len(rep) > d:
        c = rep.pop()
        if c:
            for j in range(d):
                rep[len(rep) - d + j] -= c * mod[j]
    while rep and rep[-1] == 0:
        rep.pop()
    return rep


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    while b and b[-1] == 0:
        b = b[:-1]
        db -= 1
    q = [Fraction(0)] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] / b[-1]
        k = len(a) - 1 - db
        q[k] = c
        for j in range(db + 1):
            a[k + j] -= c * b[j]
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def quotient_gcd(f: MultiPoly, g: MultiPoly, modulus: MultiPoly) -> MultiPoly:
    """Monic gcd of two univariate polynomials with coefficients in
    Q[t]/(modulus).

    Inputs live in a two-variable context (modulus variable, main variable);
    powers of the modulus variable are reduced before the Euclidean loop.
    The result is returned in the same two-variable context with reduced
    coefficients.
    """
    if modulus.is_zero():
        raise InvalidModulusError("zero modulus")
    live = [v for v in modulus.variables if modulus.degree_in(v) > 0]
    if len(live) != 1:
        raise InvalidModulusError("modulus must be univariate")
    tvar = live[0]
    f, g = f._coerce(g)
    mains = [v for v in f.variables if v != tvar and
             (f.degree_in(v) > 0 or g.degree_in(v) > 0)]
    if len(mains) != 1:
        raise ValueError(f"expected exactly one main variable, got {mains}")
    yvar = mains[0]
    dense_f = _to_quotient_dense(f, tvar, yvar, modulus)
    dense_g = _to_quotient_dense(g, tvar, yvar, modulus)
    if not dense_f and not dense_g:
        raise ValueError("gcd of two zero polynomials")
    a, b = dense_f, dense_g
    while b:
        a, b = b, _qe_poly_mod(a, b)
    lead_inv = a[-1].inverse()
    a = [c * lead_inv for c in a]
    return _from_quotient_dense(a, tvar, yvar, f.variables)


def _to_quotient_dense(f: MultiPoly, tvar: str, yvar: str, modulus: MultiPoly) -> list[QuotientElement]:
    ti = f.variables.index(tvar) if tvar in f.variables else None
    yi = f.variables.index(yvar)
    for v in f.variables:
        if v not in (tvar, yvar) and f.degree_in(v) > 0:
            raise ValueError(f"unexpected variable {v!r}")
    dy = f.degree_in(yvar)
    buckets: list[dict[int, Fraction]] = [dict() for _ in range(dy + 1)] if dy >= 0 else []
    for e, c in f.terms.items():
        k = e[yi]
        tpow = e[ti] if ti is not None else 0
        buckets[k][tpow] = buckets[k].get(tpow, Fraction(0)) + Fraction(c)
    mod_dense = _dense(modulus, tvar)
    out = []
    for bucket in buckets:
        n = max(bucket) + 1 if bucket else 0
        rep = [bucket.get(i, Fraction(0)) for i in range(n)]
        out.append(QuotientElement(rep, mod_dense, tvar))
    while out and not out[-1].rep:
        out.pop()
    return out


def _from_quotient_dense(coeffs: list[QuotientElement], tvar: str, yvar: str,
                         variables: tuple[str, ...]) -> MultiPoly:
    if tvar not in variables:
        variables = variables + (tvar,)
    ti, yi = variables.index(tvar), variables.index(yvar)
    terms = {}
    for k, qe in enumerate(coeffs):
        for tp, c in enumerate(qe.rep):
            if c:
                e = [0] * len(variables)
                e[ti], e[yi] = tp, k
                terms[tuple(e)] = c
    return MultiPoly(variables, terms)


def _qe_poly_mod(a: list[QuotientElement], b: list[QuotientElement]) -> list[QuotientElement]:
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        for j in range(len(b)):
            a[k + j] = a[k + j] - c * b[j]
        while a and not a[-1].rep:
            a.pop()
        if len(a) >= len(b) and not a:
            break
    return a
