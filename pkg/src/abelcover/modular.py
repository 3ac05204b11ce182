"""Fast sound certificates for coprimality and squarefreeness of plane forms.

A common factor with positive y-degree of f, g in F_p[x][y] divides both
primitive parts, and its leading y-coefficient divides lc_y(pp_f); so at any
evaluation point x0 with lc_y(pp_f)(x0) != 0, a constant gcd of the two
evaluated univariate polynomials *proves* there is no such factor. Pure-x
common factors are caught by the (univariate) content gcd. Reduction mod p
preserves divisibility degreewise whenever total degrees survive, so the
mod-p certificate lifts to Q. Failure of the certificate is inconclusive;
the exact primitive-PRS gcd remains the authority.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .polynomials import MultiPoly, mp_gcd

_PRIMES = (1073741789, 1073741783, 1073741741)
_MAX_POINTS = 40

__all__ = ["forms_coprime", "form_squarefree"]


def _int_terms(f: MultiPoly) -> dict:
    den = 1
    for c in f.terms.values():
        c = Fraction(c)
        den = den * c.denominator // int_gcd(den, c.denominator)
    return {e: int(Fraction(c) * den) for e, c in f.terms.items()}


def _reduce_biv(f: MultiPoly, p: int) -> list[list[int]] | None:
    """Dense y-major table mod p; None if the total degree drops."""
    terms = _int_terms(f)
    deg = f.degree()
    dx = max((e[0] for e in terms), default=0)
    dy = max((e[1] for e in terms), default=0)
    out = [[0] * (dx + 1) for _ in range(dy + 1)]
    top_alive = False
    for (i, j), c in terms.items():
        c %= p
        out[j][i] = c
        if c and i + j == deg:
            top_alive = True
    if not top_alive:
        return None
    while out and not any(out[-1]):
        out.pop()
    return out


def _fp_uni_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    b = [x % p for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            k = len(a) - len(b)
            for j in range(len(b)):
                a[k + j] = (a[k + j] - c * b[j]) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return a


def _fp_uni_divexact(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j in range(len(b)):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return q


def _content_pp(table: list[list[int]], p: int):
    """(content in F_p[x], primitive part table) of a y-major table."""
    cont: list[int] = []
    for row in table:
        if any(row):
            cont = _fp_uni_gcd(cont, row, p)
            if len(cont) == 1:
                return [1], table
    if not cont:
        return [1], table
    pp = [_fp_uni_divexact(row, cont, p) if any(row) else [] for row in table]
    return cont, pp


def _eval_x(table: list[list[int]], x0: int, p: int) -> list[int]:
    out = []
    for row in table:
        acc = 0
        for c in reversed(row):
            acc = (acc * x0 + c) % p
        out.append(acc)
    while out and out[-1] == 0:
        out.pop()
    return out


def _no_common_y_factor(ppf, ppg, p) -> bool:
    """Certify that two y-primitive tables share no positive-y-degree factor."""
    lc = ppf[-1]
    for x0 in range(_MAX_POINTS):
        lcv = 0
        for c in reversed(lc):
            lcv = (lcv * x0 + c) % p
        if lcv == 0:
            continue
        fe = _eval_x(ppf, x0, p)
        ge = _eval_x(ppg, x0, p)
        if not ge:
            continue
        if len(_fp_uni_gcd(fe, ge, p)) == 1:
            return True
    return False


def forms_coprime(F: MultiPoly, G: MultiPoly) -> bool:
    """True when two homogeneous plane forms share no component."""
    if F.variables != G.variables or len(F.variables) != 3:
        raise ValueError("expected two forms in the same projective context")
    zdivF = all(e[2] > 0 for e in F.terms)
    zdivG = all(e[2] > 0 for e in G.terms)
    if zdivF and zdivG:
        return False
    f = MultiPoly(("x", "y"), _dehom_terms(F))
    g = MultiPoly(("x", "y"), _dehom_terms(G))
    if f.is_constant() or g.is_constant():
        return True
    for p in _PRIMES:
        tf = _reduce_biv(f, p)
        tg = _reduce_biv(g, p)
        if tf is None or tg is None:
            continue
        contf, ppf = _content_pp(tf, p)
        contg, ppg = _content_pp(tg, p)
        if len(_fp_uni_gcd(contf, contg, p)) != 1:
            continue  # possible pure-x common factor; inconclusive
        if len(ppf) == 1 or len(ppg) == 1:
            return True  # one side has no positive-y part at all
        if _no_common_y_factor(ppf, ppg, p):
            return True
    return mp_gcd(F, G).degree() == 0


def form_squarefree(F: MultiPoly) -> bool:
    """True when a homogeneous plane form is squarefree (a reduced curve)."""
    if len(F.variables) != 3:
        raise ValueError("expected a form in three variables")
    if F.is_zero():
        return False
    if min(e[2] for e in F.terms) >= 2:
        return False
    f = MultiPoly(("x", "y"), _dehom_terms(F))
    if f.is_constant():
        return True
    for p in _PRIMES:
        tf = _reduce_biv(f, p)
        if tf is None:
            continue
        cont, pp = _content_pp(tf, p)
        if len(cont) > 1:
            dcont = [(k * c) % p for k, c in enumerate(cont)][1:]
            if len(_fp_uni_gcd(cont, dcont, p)) != 1:
                continue  # content possibly non-squarefree; inconclusive
        if len(pp) > 1:
            dpp = [[(j * c) % p for c in row] for j, row in enumerate(pp)][1:]
            while dpp and not any(dpp[-1]):
                dpp.pop()
            if not _no_common_y_factor(pp, dpp, p):
                continue
        return True
    g = f
    for d in (f.derivative("x"), f.derivative("y")):
        if not d.is_zero():
            g = mp_gcd(g, d)
            if g.is_constant():
                return True
    return g.is_constant()


def _dehom_terms(form: MultiPoly) -> dict:
    out: dict = {}
    for (i, j, _k), c in form.terms.items():
        out[(i, j)] = out.get((i, j), 0) + c
    return {e: c for e, c in out.items() if c != 0}


def affine_coprime(f: MultiPoly, g: MultiPoly) -> bool | None:
    """Certify coprimality of two affine bivariate polynomials.

    True is a proof; None means inconclusive (caller must fall back to the
    exact gcd)."""
    if f.is_constant() or g.is_constant():
        return True
    for p in _PRIMES:
        tf = _reduce_biv(f, p)
        tg = _reduce_biv(g, p)
        if tf is None or tg is None:
            continue
        contf, ppf = _content_pp(tf, p)
        contg, ppg = _content_pp(tg, p)
        if len(_fp_uni_gcd(contf, contg, p)) != 1:
            continue
        if len(ppf) == 1 or len(ppg) == 1:
            return True
        if _no_common_y_factor(ppf, ppg, p):
            return True
    return None


def uni_gcd_modular(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly | None:
    """Exact gcd of two univariate rational polynomials by modular images
    plus trial-division certification; None when certification fails."""
    from math import gcd as igcd

    def dense_int(poly):
        i = poly.variables.index(var)
        den = 1
        for c in poly.terms.values():
            c = Fraction(c)
            den = den * c.denominator // igcd(den, c.denominator)
        out = [0] * (poly.degree_in(var) + 1)
        for e, c in poly.terms.items():
            out[e[i]] = int(Fraction(c) * den)
        return out

    a, b = dense_int(f), dense_int(g)
    ca = 0
    for c in a:
        ca = igcd(ca, c)
    cb = 0
    for c in b:
        cb = igcd(cb, c)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    lc_bound = igcd(a[-1], b[-1])
    images = []
    target_deg = None
    mod_acc = 1
    res_acc: list[int] = []
    for p in _PRIMES + (2147483629, 2147483587, 2147483579, 2147483563):
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        d = _fp_uni_gcd(a, b, p)
        deg = len(d) - 1
        if deg == 0:
            return MultiPoly.constant(1, f.variables)
        if target_deg is None or deg < target_deg:
            target_deg = deg
            mod_acc, res_acc = 1, []
        if deg > target_deg:
            continue  # unlucky prime
        scaled = [(c * lc_bound) % p for c in d]
        if mod_acc == 1:
            res_acc = scaled
            mod_acc = p
        else:
            # CRT combine
            inv = pow(mod_acc % p, p - 2, p)
            combined = []
            for i in range(target_deg + 1):
                r0 = res_acc[i] if i < len(res_acc) else 0
                r1 = scaled[i] if i < len(scaled) else 0
                t = ((r1 - r0) % p) * inv % p
                combined.append(r0 + mod_acc * t)
            res_acc = combined
            mod_acc *= p
        cand = [c - mod_acc if 2 * c > mod_acc else c for c in res_acc]
        cg = 0
        for c in cand:
            cg = igcd(cg, c)
        if cg:
            cand = [c // cg for c in cand]
        if cand and cand[-1] < 0:
            cand = [-c for c in cand]
        if _divides_int(cand, a) and _divides_int(cand, b):
            terms = {}
            i = f.variables.index(var)
            for k, c in enumerate(cand):
                if c:
                    e = [0] * len(f.variables)
                    e[i] = k
                    terms[tuple(e)] = Fraction(c)
            return MultiPoly(f.variables, terms)
    return None


def _divides_int(d: list[int], a: list[int]) -> bool:
    if not d:
        return False
    if len(d) == 1:
        return True
    rem = list(a)
    lead = d[-1]
    for k in range(len(rem) - len(d), -1, -1):
        num = rem[k + len(d) - 1]
        if num % lead:
            return False
        c = num // lead
        if c:
            for j in range(len(d)):
                rem[k + j] -= c * d[j]
    return not any(rem[:len(d) - 1])
