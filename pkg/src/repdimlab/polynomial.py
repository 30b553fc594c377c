"""Univariate polynomials over the working field.

Coefficient lists run from the constant term upward.  Over F_p the
factorization is the textbook chain: squarefree part, distinct-degree
splitting, then Cantor-Zassenhaus equal-degree splitting.  Over Q the
factorization is delegated to sympy.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .linalg import FieldSpec, IncrementalBasis

Poly = list


def trim(f: Poly) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: Poly) -> int:
    return len(trim(f)) - 1


def _norm(F: FieldSpec, f):
    return trim([F.elem(c) for c in f])


def monic(F: FieldSpec, f: Poly) -> Poly:
    f = _norm(F, f)
    if not f:
        return f
    lc = F.inv(f[-1])
    return _norm(F, [c * lc for c in f])


def add(F, f, g):
    n = max(len(f), len(g))
    return _norm(F, [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def sub(F, f, g):
    return add(F, f, [-c for c in g])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
        if not F.is_rational and i % 64 == 63:
            out = [c % F.p for c in out]
    return _norm(F, out)


def divmod_(F, f, g):
    f = _norm(F, f)
    g = _norm(F, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(g[-1])
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg and r:
        c = F.elem(r[-1] * inv)
        k = len(r) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = F.elem(r[k + i] - c * b)
        r = trim(r)
    return _norm(F, q), r


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def gcd(F, f, g):
    f, g = _norm(F, f), _norm(F, g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F, f, g):
    """``(d, u, v)`` with ``u f + v g = d`` and ``d`` monic."""
    r0, r1 = _norm(F, f), _norm(F, g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    lc = F.inv(r0[-1])
    return ([F.elem(c * lc) for c in r0], [F.elem(c * lc) for c in s0], [F.elem(c * lc) for c in t0])


def derivative(F, f):
    return _norm(F, [i * f[i] for i in range(1, len(f))])


def powmod(F, f, e: int, m):
    result = [F.one]
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def squarefree_part(F, f):
    """Product of the distinct monic irreducible factors (degree < p assumed)."""
    f = monic(F, f)
    if deg(f) <= 0:
        return f
    g = gcd(F, f, derivative(F, f))
    return monic(F, divmod_(F, f, g)[0])


def _distinct_degree(F, f):
    p = F.p
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    f = list(f)
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, p, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
    if deg(f) > 0:
        out.append((monic(F, f), deg(f)))
    return out


def _equal_degree(F, f, d: int, rng: np.random.Generator):
    n = deg(f)
    if n == d:
        return [monic(F, f)]
    p = F.p
    if p == 2:
        raise NotImplementedError("equal-degree splitting needs an odd prime")
    while True:
        a = [int(c) for c in rng.integers(0, p, size=n)]
        a = trim(a)
        if deg(a) < 1:
            continue
        g = gcd(F, a, f)
        if 0 < deg(g) < n:
            break
        b = powmod(F, a, (p**d - 1) // 2, f)
        g = gcd(F, sub(F, b, [1]), f)
        if 0 < deg(g) < n:
            break
    return _equal_degree(F, g, d, rng) + _equal_degree(F, divmod_(F, f, g)[0], d, rng)


def factor(F: FieldSpec, f: Poly, rng: np.random.Generator | None = None) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    f = monic(F, f)
    if deg(f) <= 0:
        return []
    if F.is_rational:
        return _factor_rational(f)
    rng = rng if rng is not None else np.random.default_rng(0)
    irreducibles = []
    for g, d in _distinct_degree(F, squarefree_part(F, f)):
        irreducibles.extend(_equal_degree(F, g, d, rng))
    out = []
    for q in irreducibles:
        m = 0
        r = f
        while True:
            qq, rr = divmod_(F, r, q)
            if rr:
                break
            r = qq
            m += 1
        out.append((q, m))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def _factor_rational(f):
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(map(Fraction, f)))
    _, facs = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for poly, m in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.monic().all_coeffs())]
        out.append((coeffs, int(m)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


# ---------------------------------------------------------------------------
# matrices


def minimal_polynomial(F: FieldSpec, a: np.ndarray, unit: np.ndarray) -> Poly:
    """Monic minimal polynomial of ``a`` inside the algebra whose identity is ``unit``."""
    basis = IncrementalBasis(F, unit.size, track=True)
    power = unit
    k = 0
    while True:
        if not basis.add(power.ravel()):
            dep = basis.last_dependency
            coeffs = [0] * (k + 1)
            for idx, c in dep.items():
                coeffs[idx] = c
            # power + sum(dep) * earlier == 0 after reduction, so a^k = -sum(...)
            coeffs[k] = F.one
            return _norm(F, coeffs)
        power = F.matmul(a, power)
        k += 1


def evaluate(F: FieldSpec, f: Poly, a: np.ndarray, unit: np.ndarray) -> np.ndarray:
    out = F.zeros(*a.shape)
    for c in reversed(_norm(F, f)):
        out = F.add(F.matmul(a, out), F.scale(c, unit) if not F.is_rational else unit * c)
    return out
