"""Roots of univariate polynomials over K.

``roots_bruteforce`` scans the field and is the oracle for everything else.
``roots_lowdegree`` isolates the linear factors with gcd(g, x^(q^n) - x) and
splits them: trace splitting in characteristic 2, random-shift equal-degree
splitting otherwise.  Dense polynomials are ascending coefficient lists.
"""

from __future__ import annotations

import numpy as np

from .errors import DegreeGuardExceeded
from .gfext import ENUMERATION_BITS, GF
from .sparsepoly import SparsePoly

DEGREE_GUARD = 65536

DensePoly = list[int]


def trim(a: DensePoly) -> DensePoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def to_dense(P: SparsePoly, guard: int = DEGREE_GUARD) -> DensePoly:
    d = P.degree()
    if d > guard:
        raise DegreeGuardExceeded(f"degree {d} exceeds the dense guard {guard}")
    out = [0] * (d + 1)
    for e, c in P.terms.items():
        out[e] = c
    return out


def p_add(F: GF, a: DensePoly, b: DensePoly) -> DensePoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def p_sub(F: GF, a: DensePoly, b: DensePoly) -> DensePoly:
    return p_add(F, a, [F.neg(c) for c in b])


def p_mul(F: GF, a: DensePoly, b: DensePoly) -> DensePoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def p_divmod(F: GF, a: DensePoly, b: DensePoly) -> tuple[DensePoly, DensePoly]:
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(list(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = F.inv(b[-1])
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = F.mul(c, inv_lead)
        q[k - db] = c
        for i in range(db + 1):
            if b[i]:
                r[k - db + i] = F.sub(r[k - db + i], F.mul(c, b[i]))
    return trim(q), trim(r[:db])


def p_mod(F: GF, a: DensePoly, b: DensePoly) -> DensePoly:
    return p_divmod(F, a, b)[1]


def p_monic(F: GF, a: DensePoly) -> DensePoly:
    if not a:
        return []
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def p_gcd(F: GF, a: DensePoly, b: DensePoly) -> DensePoly:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, p_mod(F, a, b)
    return p_monic(F, a)


def p_powmod(F: GF, base: DensePoly, e: int, m: DensePoly) -> DensePoly:
    result: DensePoly = [1]
    base = p_mod(F, base, m)
    while e:
        if e & 1:
            result = p_mod(F, p_mul(F, result, base), m)
        e >>= 1
        if e:
            base = p_mod(F, p_mul(F, base, base), m)
    return p_mod(F, result, m)


def p_eval(F: GF, a: DensePoly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def roots_bruteforce(P: SparsePoly, y: int) -> set[int]:
    """All x in K with P(x) = y, by exhaustive scan."""
    F = P.field
    if F.order > 1 << ENUMERATION_BITS:
        raise ValueError("field too large for exhaustive root search")
    return {x for x in range(F.order) if P.evaluate(x) == y}


def _linear_part(F: GF, g: DensePoly) -> DensePoly:
    """Product of the distinct linear factors of g over K: gcd(g, x^(q^n) - x)."""
    xq = p_powmod(F, [0, 1], F.q, g)
    for _ in range(F.n - 1):
        xq = p_powmod(F, xq, F.q, g)
    return p_gcd(F, g, p_sub(F, xq, [0, 1]))


def _trace_poly(F: GF, beta: int, h: DensePoly) -> DensePoly:
    u = p_mod(F, [0, beta], h)
    acc = list(u)
    for _ in range(F.n - 1):
        u = p_mod(F, p_mul(F, u, u), h)
        acc = p_add(F, acc, u)
    return acc


def _split(F: GF, h: DensePoly, rng, start: int, out: set[int]) -> None:
    deg = len(h) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.add(F.neg(F.div(h[0], h[1])))
        return
    if F.p == 2:
        # multipliers run over the power basis t^k; the int 2 encodes t
        for k in range(start, F.n):
            g = p_gcd(F, h, _trace_poly(F, F.pow(2, k), h))
            if 0 < len(g) - 1 < deg:
                _split(F, g, rng, k + 1, out)
                _split(F, p_divmod(F, h, g)[0], rng, k + 1, out)
                return
        raise AssertionError("trace splitting failed on a squarefree split polynomial")
    half = (F.order - 1) // 2
    while True:
        delta = F.random(rng)
        w = p_powmod(F, [delta, 1], half, h)
        g = p_gcd(F, h, p_sub(F, w, [1]))
        if 0 < len(g) - 1 < deg:
            _split(F, g, rng, 0, out)
            _split(F, p_divmod(F, h, g)[0], rng, 0, out)
            return


def roots_lowdegree(F: GF, P: DensePoly, y: int, guard: int = DEGREE_GUARD, seed: int = 0) -> set[int]:
    """All roots in K of P(x) - y for a dense P of degree <= guard."""
    g = trim(list(P))
    if len(g) - 1 > guard:
        raise DegreeGuardExceeded(f"degree {len(g) - 1} exceeds the guard {guard}")
    if not g:
        g = [0]
    g[0] = F.sub(g[0], y)
    g = trim(g)
    if not g:
        # P - y is identically zero: every element is a root
        if F.order > 1 << ENUMERATION_BITS:
            raise ValueError("P - y vanishes identically on a field too large to list")
        return set(range(F.order))
    if len(g) == 1:
        return set()
    h = _linear_part(F, p_monic(F, g))
    roots: set[int] = set()
    rng = np.random.default_rng(seed)
    _split(F, h, rng, 0, roots)
    for r in roots:
        if p_eval(F, g, r) != 0:
            raise AssertionError("root finder returned a non-root")
    return roots


def roots_sparse(P: SparsePoly, y: int, guard: int = DEGREE_GUARD) -> set[int]:
    return roots_lowdegree(P.field, to_dense(P, guard), y, guard)
