"""Exact sparse multivariate polynomials over the rationals.

Coefficients are `fractions.Fraction` by default, which already enforces the
reduced-form invariants (coprime numerator/denominator, positive denominator).
The same term arithmetic also works over a quotient field `Q[t]/(m)` (see
:mod:`abelcover.quotients`); anything field-like with ``+ - * /`` and equality
against ``0`` can serve as a coefficient.

Monomial order is graded reverse lexicographic with respect to the declared
variable order; canonical printing scales a rational polynomial to coprime
integer coefficients with a positive leading coefficient, so equal polynomials
print identically and printed forms round-trip through :func:`parse_poly`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Mapping

Rational = Fraction

__all__ = [
    "Rational",
    "MultiPoly",
    "ContextError",
    "DegenerateInputError",
    "poly_arith",
    "derivative",
    "resultant",
    "parse_poly",
]


class ContextError(ValueError):
    """Operands do not share a variable context."""


class DegenerateInputError(ValueError):
    """Input outside an operation's stated domain (e.g. degree-zero resultant)."""


def _as_coeff(value):
    if isinstance(value, int):
        return Fraction(value)
    return value


def _grevlex_key(exps: tuple[int, ...]) -> tuple:
    # Larger key = later in ascending sort = smaller monomial printed last.
    # grevlex: higher total degree wins; ties broken by the *smallest* exponent
    # in the last position where they differ (reverse lex on negated tuple).
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """A sparse polynomial with an ordered variable context.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients. Instances are immutable by convention; all operations
    return fresh objects.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], object]):
        vs = tuple(variables)
        clean: dict[tuple[int, ...], object] = {}
        for exps, c in terms.items():
            c = _as_coeff(c)
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vs):
                raise ContextError(
                    f"exponent vector {exps} does not match variables {vs}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            clean[exps] = clean.get(exps, Fraction(0)) + c if exps in clean else c
        self.variables = vs
        self.terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value, variables: Iterable[str] = ()) -> "MultiPoly":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): _as_coeff(value)})

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str]) -> "MultiPoly":
        vs = tuple(variables)
        if name not in vs:
            raise ContextError(f"unknown variable {name!r} in context {vs}")
        exps = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exps: Fraction(1)})

    @classmethod
    def variables_of(cls, names: Iterable[str]) -> tuple["MultiPoly", ...]:
        vs = tuple(names)
        return tuple(cls.variable(v, vs) for v in vs)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self._var_index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly(self.variables, {e: c for e, c in self.terms.items() if sum(e) == k})

    def coefficient(self, exps: tuple[int, ...]):
        return self.terms.get(tuple(exps), Fraction(0))

    def leading(self) -> tuple[tuple[int, ...], object]:
        """Leading (exponents, coefficient) in grevlex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grevlex_key)
        return e, self.terms[e]

    def _var_index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ContextError(f"unknown variable {var!r} in context {self.variables}") from None

    # -- context handling ---------------------------------------------

    def lift(self, variables: Iterable[str]) -> "MultiPoly":
        """Embed into a larger variable context (must contain the current one)."""
        vs = tuple(variables)
        pos = []
        for v in self.variables:
            if v not in vs:
                raise ContextError(f"cannot lift {self.variables} into {vs}")
            pos.append(vs.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vs)
            for i, exp in enumerate(e):
                ne[pos[i]] = exp
            terms[tuple(ne)] = c
        return MultiPoly(vs, terms)

    def _coerce(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.variables)
        if self.variables == other.variables:
            return self, other
        if other.is_constant():
            return self, MultiPoly.constant(other.constant_value() if other.terms else 0, self.variables)
        if self.is_constant():
            return MultiPoly.constant(self.constant_value() if self.terms else 0, other.variables), other
        raise ContextError(
            f"variable contexts differ: {self.variables} vs {other.variables}"
        )

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or not isinstance(other, MultiPoly):
            c = _as_coeff(other)
            if isinstance(c, (int, Fraction)) and c == 0:
                return MultiPoly.zero(self.variables)
            return MultiPoly(self.variables, {e: v * c for e, v in self.terms.items()})
        a, b = self._coerce(other)
        terms: dict[tuple[int, ...], object] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_constant():
                other = other.constant_value()
            else:
                return self.exact_div(other)
        c = _as_coeff(other)
        return MultiPoly(self.variables, {e: v / c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and (self.constant_value() == other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        try:
            a, b = self._coerce(other)
        except ContextError:
            return False
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, tuple(sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0])))))
        return self._hash

    # -- calculus and substitution --------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        i = self._var_index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.variables, terms)

    def substitute(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Unmapped variables stay; results live in the context of the
        substituted values (which must all agree) extended as needed.
        """
        vs = self.variables
        values = []
        for v in vs:
            if v in mapping:
                val = mapping[v]
                if not isinstance(val, MultiPoly):
                    val = MultiPoly.constant(val, vs)
                values.append(val)
            else:
                values.append(MultiPoly.variable(v, vs))
        ctx = vs
        for val in values:
            if not val.is_constant() and val.variables != vs:
                ctx = val.variables
        values = [v if v.variables == ctx else
                  (v.lift(ctx) if set(v.variables) <= set(ctx) else v) for v in values]
        # power cache per variable keeps repeated exponents cheap
        caches: list[dict[int, MultiPoly]] = [dict() for _ in vs]
        result = MultiPoly.zero(ctx)
        for e, c in sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0])):
            term = MultiPoly.constant(c, ctx)
            for i, exp in enumerate(e):
                if exp == 0:
                    continue
                if exp not in caches[i]:
                    caches[i][exp] = values[i] ** exp
                term = term * caches[i][exp]
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, object]):
        """Full evaluation; every variable must be assigned a scalar."""
        total = None
        for e, c in self.terms.items():
            v = c
            for i, exp in enumerate(e):
                if exp:
                    v = v * (_as_coeff(point[self.variables[i]]) ** exp)
            total = v if total is None else total + v
        return Fraction(0) if total is None else total

    def drop_variable(self, var: str) -> "MultiPoly":
        """Remove a variable that no longer occurs."""
        i = self._var_index(var)
        if self.degree_in(var) > 0:
            raise ContextError(f"variable {var!r} still occurs")
        vs = self.variables[:i] + self.variables[i + 1:]
        return MultiPoly(vs, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    # -- division -------------------------------------------------------

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact multivariate division; raises ValueError when not divisible."""
        a, b = self._coerce(divisor)
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if b.is_constant():
            return a / b.constant_value()
        live = [v for v in b.variables if b.degree_in(v) > 0]
        if len(live) == 1 and all(a.degree_in(v) == 0 for v in a.variables if v not in live):
            q, r = a._uni_divmod(b, live[0])
        else:
            q, r = a._divmod(b)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def _uni_divmod(self, divisor: "MultiPoly", var: str) -> tuple["MultiPoly", "MultiPoly"]:
        # dense synthetic division for the effectively-univariate case
        i = self._var_index(var)
        da, db = self.degree_in(var), divisor.degree_in(var)
        if da < db:
            return MultiPoly.zero(self.variables), self
        zero = Fraction(0)
        a = [zero] * (da + 1)
        for e, c in self.terms.items():
            a[e[i]] = c
        b = [zero] * (db + 1)
        for e, c in divisor.terms.items():
            b[e[i]] = c
        inv = 1 / b[db]
        q = [zero] * (da - db + 1)
        for k in range(da - db, -1, -1):
            coef = a[k + db] * inv
            if coef != 0:
                q[k] = coef
                for j in range(db + 1):
                    if b[j] != 0:
                        a[k + j] = a[k + j] - coef * b[j]
        def build(coeffs):
            terms = {}
            base = [0] * len(self.variables)
            for k, c in enumerate(coeffs):
                if c != 0:
                    e = list(base)
                    e[i] = k
                    terms[tuple(e)] = c
            return MultiPoly(self.variables, terms)
        return build(q), build(a[:db])

    def divides(self, other: "MultiPoly") -> bool:
        a, b = self._coerce(other)
        _, r = b._divmod(a)
        return r.is_zero()

    def _divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        # multivariate reduction by the grevlex leading term of the divisor
        lead_e, lead_c = divisor.leading()
        quo: dict[tuple[int, ...], object] = {}
        rem = self
        guard = 0
        while not rem.is_zero():
            guard += 1
            if guard > 100000:
                raise RuntimeError("division does not terminate")
            # find the largest remaining monomial divisible by the lead
            cand = None
            for e in rem.terms:
                if all(x >= y for x, y in zip(e, lead_e)):
                    if cand is None or _grevlex_key(e) > _grevlex_key(cand):
                        cand = e
            if cand is None:
                break
            c = rem.terms[cand] / lead_c
            qe = tuple(x - y for x, y in zip(cand, lead_e))
            quo[qe] = quo.get(qe, Fraction(0)) + c
            rem = rem - divisor * MultiPoly(self.variables, {qe: c})
        return MultiPoly(self.variables, quo), rem

    # -- canonical form --------------------------------------------------

    def integer_normalized(self) -> tuple[Fraction, "MultiPoly"]:
        """Split ``self = scale * primitive`` with coprime integer
        coefficients and positive grevlex-leading coefficient."""
        if not self.terms:
            return Fraction(1), self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // int_gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = int_gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(num, den)
        prim = MultiPoly(self.variables, {e: c / scale for e, c in self.terms.items()})
        _, lead_c = prim.leading()
        if lead_c < 0:
            prim = -prim
            scale = -scale
        return scale, prim

    def canonical(self) -> "MultiPoly":
        return self.integer_normalized()[1]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.variables, e) if k
            )
            if isinstance(c, Fraction):
                coeff = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
                neg = c < 0
                mag = coeff.lstrip("-")
            else:
                coeff, neg, mag = str(c), False, str(c)
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"-{body}" if neg else f"+{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({'+'.join(self.variables)}: {self})"


# -- spec-level operation wrappers -----------------------------------------

def poly_arith(a: MultiPoly, b: MultiPoly, kind: str) -> MultiPoly:
    """Exact ring arithmetic; ``kind`` is one of add, sub, mul."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def derivative(f: MultiPoly, var: str) -> MultiPoly:
    return f.derivative(var)


# -- resultants -------------------------------------------------------------

def _to_dense(f: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficient list in ``var`` (ascending), coefficients in the same context."""
    i = f._var_index(var)
    n = f.degree_in(var)
    coeffs = [dict() for _ in range(n + 1)]
    for e, c in f.terms.items():
        ne = list(e)
        k = ne[i]
        ne[i] = 0
        coeffs[k][tuple(ne)] = c
    return [MultiPoly(f.variables, d) for d in coeffs]

def _from_dense(coeffs: list[MultiPoly], var: str, variables: tuple[str, ...]) -> MultiPoly:
    i = variables.index(var)
    terms: dict[tuple[int, ...], object] = {}
    for k, c in enumerate(coeffs):
        for e, v in c.terms.items():
            ne = list(e)
            ne[i] += k
            terms[tuple(ne)] = v
    return MultiPoly(variables, terms)

def _dense_deg(c: list[MultiPoly]) -> int:
    for i in range(len(c) - 1, -1, -1):
        if not c[i].is_zero():
            return i
    return -1

def _dense_trim(c: list[MultiPoly]) -> list[MultiPoly]:
    return c[:_dense_deg(c) + 1]

def _dense_mul_scalar(c: list[MultiPoly], s: MultiPoly) -> list[MultiPoly]:
    return [x * s for x in c]

def _pseudo_rem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a  mod  b."""
    da, db = _dense_deg(a), _dense_deg(b)
    lb = b[db]
    r = list(a)
    for k in range(da, db - 1, -1):
        if _dense_deg(r) < k:
            r = _dense_mul_scalar(r, lb)
            continue
        lead = r[k]
        r = _dense_mul_scalar(r, lb)
        for j in range(db + 1):
            r[k - db + j] = r[k - db + j] - lead * b[j]
        r = r[:k]
        if not r:
            break
    return _dense_trim(r)


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant with respect to ``var`` via the subresultant PRS.

    Both inputs must have positive degree in ``var``; the result lives in the
    shared context with degree 0 in ``var``. Vanishes identically exactly when
    the inputs share a factor of positive degree in ``var``.
    """
    f, g = f._coerce(g)
    if f.is_zero() or g.is_zero():
        raise DegenerateInputError("resultant of the zero polynomial")
    if f.degree_in(var) <= 0 or g.degree_in(var) <= 0:
        raise DegenerateInputError(f"inputs must have positive degree in {var!r}")
    A = _dense_trim(_to_dense(f, var))
    B = _dense_trim(_to_dense(g, var))
    sign = 1
    if _dense_deg(A) < _dense_deg(B):
        if (_dense_deg(A) % 2) and (_dense_deg(B) % 2):
            sign = -sign
        A, B = B, A
    one = MultiPoly.constant(1, f.variables)
    gcoef, h = one, one
    while True:
        da, db = _dense_deg(A), _dense_deg(B)
        delta = da - db
        if (da % 2) and (db % 2):
            sign = -sign
        R = _pseudo_rem(A, B)
        A = B
        denom = gcoef * (h ** delta)
        B = [x.exact_div(denom) for x in R]
        if not B:
            return MultiPoly.zero(f.variables)  # common factor in var
        gcoef = A[_dense_deg(A)]
        if delta > 0:
            h = (gcoef ** delta).exact_div(h ** (delta - 1))
        if _dense_deg(B) == 0:
            da = _dense_deg(A)
            res = (B[0] ** da).exact_div(h ** (da - 1)) if da > 1 else (
                B[0] if da == 1 else h)
            if sign < 0:
                res = -res
            return res


# -- gcd --------------------------------------------------------------------

def _content_univariate(f: MultiPoly) -> Fraction:
    if not f.terms:
        return Fraction(0)
    return f.integer_normalized()[0]

def mp_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Multivariate gcd over Q, normalized to canonical form.

    Primitive polynomial remainder sequence, recursing on the number of
    variables; fine for the moderate degrees this toolkit needs.
    """
    f, g = f._coerce(g)
    if f.is_zero():
        return g.canonical()
    if g.is_zero():
        return f.canonical()
    if f.is_constant() or g.is_constant():
        return MultiPoly.constant(1, f.variables)
    live = [v for v in f.variables if f.degree_in(v) > 0 or g.degree_in(v) > 0]
    if len(live) == 1 and f.degree_in(live[0]) + g.degree_in(live[0]) > 16:
        # large univariate gcds: modular images with certification
        from .modular import uni_gcd_modular
        got = uni_gcd_modular(f, g, live[0])
        if got is not None:
            return got.canonical()
    # choose the live variable of smallest combined degree as the main one
    var = min(live, key=lambda v: f.degree_in(v) + g.degree_in(v))
    if f.degree_in(var) <= 0 or g.degree_in(var) <= 0:
        # one input does not involve var: gcd divides the content side
        fc = _poly_content(f, var) if f.degree_in(var) > 0 else f
        gc = _poly_content(g, var) if g.degree_in(var) > 0 else g
        return mp_gcd(fc, gc)
    fcont = _poly_content(f, var)
    gcont = _poly_content(g, var)
    fp = f.exact_div(fcont) if not fcont.is_constant() else f
    gp = g.exact_div(gcont) if not gcont.is_constant() else g
    A = _dense_trim(_to_dense(fp, var))
    B = _dense_trim(_to_dense(gp, var))
    if _dense_deg(A) < _dense_deg(B):
        A, B = B, A
    while True:
        R = _pseudo_rem(A, B)
        if not R:
            prim = _from_dense(B, var, f.variables)
            prim = prim.exact_div(_poly_content(prim, var))
            return (prim * mp_gcd(fcont, gcont)).canonical()
        if _dense_deg(R) == 0:
            return mp_gcd(fcont, gcont).canonical()
        Rp = _from_dense(R, var, f.variables)
        Rp = Rp.exact_div(_poly_content(Rp, var))
        A, B = B, _dense_trim(_to_dense(Rp, var))

def _poly_content(f: MultiPoly, var: str) -> MultiPoly:
    coeffs = [c for c in _to_dense(f, var) if not c.is_zero()]
    acc = coeffs[0]
    for c in coeffs[1:]:
        if acc.is_constant():
            break
        acc = mp_gcd(acc, c)
    if acc.is_constant():
        return MultiPoly.constant(1, f.variables)
    return acc.canonical()


def squarefree_part(f: MultiPoly) -> MultiPoly:
    """The product of the distinct irreducible factors of ``f``."""
    if f.is_zero() or f.is_constant():
        return f.canonical()
    d = f
    for v in f.variables:
        if f.degree_in(v) > 0:
            d = mp_gcd(d, f.derivative(v))
            if d.is_constant():
                return f.canonical()
    return f.exact_div(d).canonical()


def is_squarefree(f: MultiPoly) -> bool:
    if f.is_zero():
        return False
    if f.is_constant():
        return True
    g = f
    for v in f.variables:
        if f.degree_in(v) > 0:
            g = mp_gcd(g, f.derivative(v))
            if g.is_constant():
                return True
    return g.is_constant()


# -- parsing ----------------------------------------------------------------

class _Parser:
    """Recursive-descent parser for ``+ - * ^ ( )`` polynomial expressions."""

    def __init__(self, text: str, variables: tuple[str, ...] | None):
        self.text = text
        self.pos = 0
        self.variables = variables

    def error(self, msg: str):
        raise ValueError(f"parse error at position {self.pos}: {msg} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek():
            self.error("trailing input")
        return p

    def expr(self) -> MultiPoly:
        ch = self.peek()
        neg = False
        if ch in "+-":
            neg = ch == "-"
            self.pos += 1
        p = self.term()
        if neg:
            p = -p
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                p = p + self.term()
            elif ch == "-":
                self.pos += 1
                p = p - self.term()
            else:
                return p

    def term(self) -> MultiPoly:
        p = self.power()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                p = p * self.power()
            elif ch == "(" or ch.isalpha():
                p = p * self.power()  # implicit product like 3y or y(x+1)
            else:
                return p

    def power(self) -> MultiPoly:
        p = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            p = p ** n
        return p

    def atom(self) -> MultiPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return p
        if ch.isdigit():
            n = self.integer()
            if self.peek() == "/":
                self.pos += 1
                d = self.integer()
                return MultiPoly.constant(Fraction(n, d), self.variables or ())
            return MultiPoly.constant(n, self.variables or ())
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if self.variables is None:
                self.error(f"variable {name!r} needs an explicit context")
            return MultiPoly.variable(name, self.variables)
        self.error("unexpected character")

    def integer(self) -> int:
        ch = self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected integer")
        return int(self.text[start:self.pos])


def parse_poly(text: str, variables: Iterable[str]) -> MultiPoly:
    """Parse the canonical polynomial text format (appendix-style listings)."""
    return _Parser(text, tuple(variables)).parse()
