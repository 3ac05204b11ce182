"""Univariate factorization over the rationals.

Classical Zassenhaus: factor modulo a machine-word prime that keeps the input
squarefree, Hensel-lift the modular factors past a Mignotte-style coefficient
bound, then recombine subsets by trial division. Everything is exact integer
arithmetic on little-endian dense coefficient lists.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as int_gcd, isqrt

from .polynomials import MultiPoly

__all__ = ["uni_factor", "uni_factor_dense", "is_irreducible"]

_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
           67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
           137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197,
           199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271]


# -- dense integer polynomial helpers (little-endian) -----------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f

def _deg(f: list[int]) -> int:
    return len(f) - 1

def _mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return out

def _add(f, g):
    n = max(len(f), len(g))
    return _trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])

def _sub(f, g):
    n = max(len(f), len(g))
    return _trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])

def _scale(f, c):
    return [a * c for a in f] if c else []

def _content(f: list[int]) -> int:
    c = 0
    for a in f:
        c = int_gcd(c, a)
    return c

def _primitive(f: list[int]) -> tuple[int, list[int]]:
    c = _content(f)
    if c == 0:
        return 0, []
    if f[-1] < 0:
        c = -c
    return c, [a // c for a in f]

def _deriv(f: list[int]) -> list[int]:
    return _trim([i * f[i] for i in range(1, len(f))])

def _divmod_exact_q(f: list[int], g: list[int]) -> tuple[list[int], list[int]] | None:
    """Division over Q returning integer quotient/remainder when exact-ish;
    None when the quotient is not integral."""
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    lg = g[-1]
    for k in range(len(f) - len(g), -1, -1):
        num = f[k + len(g) - 1]
        if num % lg:
            return None
        c = num // lg
        q[k] = c
        if c:
            for j, b in enumerate(g):
                f[k + j] -= c * b
    return q, _trim(f)

def _zz_gcd(f: list[int], g: list[int]) -> list[int]:
    """gcd of primitive integer polynomials via the subresultant PRS."""
    f, g = _trim(list(f)), _trim(list(g))
    if not f:
        return _primitive(g)[1]
    if not g:
        return _primitive(f)[1]
    _, a = _primitive(f)
    _, b = _primitive(g)
    if _deg(a) < _deg(b):
        a, b = b, a
    while True:
        # pseudo remainder
        r = list(a)
        lb = b[-1]
        while _deg(r) >= _deg(b):
            if not r:
                break
            k = _deg(r) - _deg(b)
            lead = r[-1]
            r = _scale(r, lb)
            for j, c in enumerate(b):
                r[k + j] -= lead * c
            r = _trim(r[:-1] if r and r[-1] == 0 else r)
            r = _trim(r)
        if not r:
            return _primitive(b)[1]
        if _deg(r) == 0:
            return [1]
        a, b = b, _primitive(r)[1]


# -- arithmetic mod p --------------------------------------------------------

def _gf_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f

def _gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _gf_trim(out)

def _gf_divmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    for k in range(len(f) - len(g), -1, -1):
        c = (f[k + len(g) - 1] * inv) % p
        q[k] = c
        if c:
            for j, b in enumerate(g):
                f[k + j] = (f[k + j] - c * b) % p
    return _gf_trim(q), _gf_trim(f[:len(g) - 1])

def _gf_gcd(f, g, p):
    f = _gf_trim([a % p for a in f])
    g = _gf_trim([a % p for a in g])
    while g:
        f, g = g, _gf_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [(a * inv) % p for a in f]
    return f

def _gf_pow_mod(f, n, mod, p):
    r = [1]
    f = _gf_divmod(f, mod, p)[1] if _deg(f) >= _deg(mod) else list(f)
    while n:
        if n & 1:
            r = _gf_divmod(_gf_mul(r, f, p), mod, p)[1]
        n >>= 1
        if n:
            f = _gf_divmod(_gf_mul(f, f, p), mod, p)[1]
    return r

def _gf_monic(f, p):
    inv = pow(f[-1], p - 2, p)
    return [(a * inv) % p for a in f]


def _gf_factor_squarefree(f: list[int], p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus on a monic squarefree polynomial mod p (p odd)."""
    factors = []
    # distinct-degree decomposition
    stack = []
    h = [0, 1]  # x
    v = list(f)
    d = 0
    while _deg(v) > 0:
        d += 1
        if 2 * d > _deg(v):
            stack.append((v, _deg(v)))
            break
        h = _gf_pow_mod(h, p, v, p)
        g = _gf_gcd(_sub_mod(h, [0, 1], p), v, p)
        if _deg(g) > 0:
            stack.append((g, d))
            v = _gf_divmod(v, g, p)[0]
            h = _gf_divmod(h, v, p)[1]
    for (g, d) in stack:
        factors.extend(_gf_split_equal_degree(g, d, p, rng))
    factors.sort(key=lambda q: (len(q), q))
    return factors

def _sub_mod(f, g, p):
    n = max(len(f), len(g))
    return _gf_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])

def _gf_split_equal_degree(f, d, p, rng):
    if _deg(f) == d:
        return [_gf_monic(f, p)]
    n = _deg(f)
    while True:
        r = [rng.randrange(p) for _ in range(n)] + [1]
        g = _gf_pow_mod(r, (p ** d - 1) // 2, f, p)
        g = _sub_mod(g, [1], p)
        w = _gf_gcd(g, f, p)
        if 0 < _deg(w) < _deg(f):
            return _gf_split_equal_degree(w, d, p, rng) + \
                   _gf_split_equal_degree(_gf_divmod(f, w, p)[0], d, p, rng)


# -- Hensel lifting ----------------------------------------------------------

def _sym(a: int, m: int) -> int:
    a %= m
    return a - m if 2 * a > m else a

def _sym_poly(f, m):
    return _trim([_sym(a, m) for a in f])

def _egcd_poly(f, g, p):
    """s, t, h with s*f + t*g = h = monic gcd, over GF(p)."""
    r0, r1 = _gf_trim(list(f)), _gf_trim(list(g))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub_mod(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _sub_mod(t0, _gf_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return ([(a * inv) % p for a in s0],
            [(a * inv) % p for a in t0],
            [(a * inv) % p for a in r0])

def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: from f = g*h mod m, s*g + t*h = 1 mod m,
    to the same equations mod m**2 (see the classical Zassenhaus scheme)."""
    M = m * m
    e = _sub(f, _mul(g, h))
    e = [_sym(a, M) for a in e]
    q, r = _divmod_q_mod(_mul(s, e), h, M)
    G = _sym_poly(_add(_add(g, _mul(t, e)), _mul(q, g)), M)
    H = _sym_poly(_add(h, r), M)
    b = _sub(_add(_mul(s, G), _mul(t, H)), [1])
    b = [_sym(a, M) for a in b]
    c, d = _divmod_q_mod(_mul(s, b), H, M)
    S = _sym_poly(_sub(s, d), M)
    T = _sym_poly(_sub(_sub(t, _mul(t, b)), _mul(c, G)), M)
    return G, H, S, T

def _divmod_q_mod(f, g, m):
    """divmod modulo m, g monic mod m."""
    f = [a % m for a in f]
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1] % m, -1, m)
    for k in range(len(f) - len(g), -1, -1):
        c = (f[k + len(g) - 1] * inv) % m
        q[k] = c
        if c:
            for j, b in enumerate(g):
                f[k + j] = (f[k + j] - c * b) % m
    return _trim(q), _trim(f[:len(g) - 1])

def _hensel_lift_list(p, f, mod_factors, level):
    """Lift the full factorization f = lc * prod(mod_factors) from p to p**(2**level)."""
    r = len(mod_factors)
    lc = f[-1]
    if r == 1:
        # f = lc * g: lift g = f/lc mod p**k directly
        m = p ** (2 ** level)
        inv = pow(lc, -1, m)
        return [_sym_poly([a * inv % m for a in f], m)]
    k = r // 2
    m = p
    g = _scale([1], lc % p)
    for q in mod_factors[:k]:
        g = _gf_mul(g, q, p)
    h = [1]
    for q in mod_factors[k:]:
        h = _gf_mul(h, q, p)
    s, t, one = _egcd_poly(g, h, p)
    g = _sym_poly(g, p)
    h = _sym_poly(h, p)
    s = _sym_poly(s, p)
    t = _sym_poly(t, p)
    for _ in range(level):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return (_hensel_lift_list(p, g, mod_factors[:k], level) +
            _hensel_lift_list(p, h, mod_factors[k:], level))


# -- Zassenhaus --------------------------------------------------------------

def _factor_squarefree_primitive(f: list[int]) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree integer polynomial with
    positive leading coefficient."""
    n = _deg(f)
    if n <= 0:
        return []
    if n == 1:
        return [_primitive(f)[1]]
    lc = f[-1]
    seed = hash(tuple(f)) & 0xFFFFFFFF
    for p in _PRIMES:
        if lc % p == 0:
            continue
        fp = [a % p for a in f]
        if _deg(_gf_trim(list(fp))) != n:
            continue
        if _deg(_gf_gcd(fp, _deriv(fp), p)) != 0:
            continue
        break
    else:  # pragma: no cover - inputs in range never exhaust the table
        raise ArithmeticError("prime table exhausted")
    rng = random.Random(seed * 1000003 + p)
    mod_factors = _gf_factor_squarefree(_gf_monic(fp, p), p, rng)
    if len(mod_factors) == 1:
        return [_primitive(f)[1]]
    # Mignotte-style bound on factor coefficients of lc*f
    norm = isqrt(sum(a * a for a in f)) + 1
    bound = 2 * abs(lc) * norm * (1 << n)
    level = 0
    while p ** (2 ** level) <= 2 * bound:
        level += 1
    big = p ** (2 ** level)
    lifted = _hensel_lift_list(p, _scale(f, 1), mod_factors, level)
    # recombination by subsets of increasing cardinality
    result = []
    rest = f
    pool = list(lifted)
    s = 1
    while 2 * s <= len(pool):
        found = True
        while found and 2 * s <= len(pool):
            found = False
            for combo in _subsets(len(pool), s):
                cand = [rest[-1] % big]
                for idx in combo:
                    cand = [a % big for a in _mul(cand, pool[idx])]
                cand = _sym_poly(cand, big)
                _, cand_pp = _primitive(cand)
                if not cand_pp:
                    continue
                dv = _divmod_exact_q(rest, cand_pp)
                if dv is not None and not dv[1]:
                    result.append(cand_pp)
                    rest = dv[0]
                    pool = [q for i, q in enumerate(pool) if i not in combo]
                    found = True
                    break
        s += 1
    if _deg(rest) > 0:
        result.append(_primitive(rest)[1])
    result.sort(key=lambda q: (len(q), q))
    return result

def _subsets(n, k):
    import itertools
    return itertools.combinations(range(n), k)


def _yun_squarefree(f: list[int]) -> list[tuple[list[int], int]]:
    """Yun's squarefree decomposition of a primitive integer polynomial."""
    out = []
    g = _zz_gcd(f, _deriv(f))
    if _deg(g) == 0:
        return [(f, 1)]
    w = _divmod_exact_q(f, g)[0]
    y = _divmod_exact_q(_deriv(f), g)[0]
    i = 1
    while _deg(w) > 0:
        z = _sub(y, _deriv(w))
        h = _zz_gcd(w, z)
        if _deg(h) > 0:
            out.append((_primitive(h)[1], i))
        w = _divmod_exact_q(w, h)[0] if _deg(h) > 0 else w
        y = _divmod_exact_q(z, h)[0] if _deg(h) > 0 else z
        if _deg(h) == 0:
            y = z
        i += 1
    return out


def uni_factor_dense(coeffs: list[Fraction]) -> tuple[Fraction, list[tuple[list[int], int]]]:
    """Factor a dense rational univariate polynomial.

    Returns ``(content, [(primitive irreducible integer factor, exponent)])``
    with positive leading coefficients; content * product reconstructs the
    input exactly.
    """
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("cannot factor the zero polynomial")
    den = 1
    for c in coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    cont, prim = _primitive(ints)
    content = Fraction(cont, den)
    if _deg(prim) == 0:
        return content, []
    factors: list[tuple[list[int], int]] = []
    for part, mult in _yun_squarefree(prim):
        if _deg(part) <= 0:
            continue
        for irr in _factor_squarefree_primitive(part):
            factors.append((irr, mult))
    factors.sort(key=lambda t: (len(t[0]), t[0]))
    return content, factors


def uni_factor(f: MultiPoly) -> tuple[Fraction, list[tuple[MultiPoly, int]]]:
    """Factor a univariate :class:`MultiPoly` into content and irreducible
    primitive factors with positive leading coefficients."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    live = [v for v in f.variables if f.degree_in(v) > 0]
    if len(live) > 1:
        raise ValueError(f"not univariate: {live}")
    if not live:
        return Fraction(f.constant_value()), []
    var = live[0]
    i = f.variables.index(var)
    dense = [Fraction(0)] * (f.degree_in(var) + 1)
    for e, c in f.terms.items():
        dense[e[i]] = c
    content, raw = uni_factor_dense(dense)
    out = []
    for coeffs, mult in raw:
        terms = {}
        for k, a in enumerate(coeffs):
            if a:
                exp = [0] * len(f.variables)
                exp[i] = k
                terms[tuple(exp)] = Fraction(a)
        out.append((MultiPoly(f.variables, terms), mult))
    return content, out


def is_irreducible(f: MultiPoly) -> bool:
    """True when a univariate polynomial of positive degree is irreducible
    over the rationals."""
    content, factors = uni_factor(f)
    return len(factors) == 1 and factors[0][1] == 1 and \
        factors[0][0].degree() == f.degree()
