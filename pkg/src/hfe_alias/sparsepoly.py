"""Sparse univariate polynomials over K with q-power structured exponents.

Exponents are arbitrary-precision ints.  Reduction modulo x^(q^n) - x maps an
exponent e > 0 to ((e - 1) mod (q^n - 1)) + 1, which keeps e = 0 (the
constant) apart from e = q^n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ShapeViolation
from .gfext import GF


def digits(e: int, q: int) -> list[int]:
    out = []
    while e:
        e, r = divmod(e, q)
        out.append(r)
    return out


def weight(e: int, q: int = 2) -> int:
    """Number of nonzero base-q digits of e."""
    if q == 2:
        return bin(e).count("1")
    return sum(1 for d in digits(e, q) if d)


def digit_sum(e: int, q: int = 2) -> int:
    if q == 2:
        return bin(e).count("1")
    return sum(digits(e, q))


def is_q_power(e: int, q: int) -> bool:
    if e < 1:
        return False
    while e % q == 0:
        e //= q
    return e == 1


def reduce_exponent(e: int, order: int) -> int:
    if e == 0:
        return 0
    return (e - 1) % (order - 1) + 1


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """Polynomial over ``field`` stored as {exponent: nonzero coefficient}."""

    field: GF
    terms: Mapping[int, int]

    def __post_init__(self):
        clean = {int(e): int(c) for e, c in sorted(self.terms.items()) if c}
        object.__setattr__(self, "terms", clean)

    # -- construction ------------------------------------------------------------

    @classmethod
    def zero(cls, F: GF) -> "SparsePoly":
        return cls(F, {})

    @classmethod
    def constant(cls, F: GF, c: int) -> "SparsePoly":
        return cls(F, {0: c})

    @classmethod
    def monomial(cls, F: GF, e: int, c: int = 1) -> "SparsePoly":
        return cls(F, {e: c})

    @classmethod
    def x(cls, F: GF) -> "SparsePoly":
        return cls(F, {1: 1})

    @classmethod
    def linearized(cls, F: GF, coeffs: Sequence[int]) -> "SparsePoly":
        """sum_i coeffs[i] * x^(q^i)."""
        return cls(F, {F.q ** i: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_accumulator(cls, F: GF, acc: Mapping[int, int]) -> "SparsePoly":
        return cls(F, acc)

    # -- inspection ----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(self.terms.items())))

    def __repr__(self):
        F = self.field
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            cs = F.format(c)
            coef = "" if (c == 1 and e) else (f"({cs})" if "+" in cs and e else cs)
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            parts.append(coef + mono)
        return " + ".join(parts)

    def degree(self) -> int:
        return max(self.terms, default=-1)

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_reduced(self) -> bool:
        return all(e < self.field.order for e in self.terms)

    def is_linearized(self) -> bool:
        return all(is_q_power(e, self.field.q) for e in self.terms)

    # -- arithmetic ----------------------------------------------------------------

    def reduce(self) -> "SparsePoly":
        F = self.field
        acc: dict[int, int] = {}
        for e, c in self.terms.items():
            r = reduce_exponent(e, F.order)
            acc[r] = F.add(acc.get(r, 0), c)
        return SparsePoly(F, acc)

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        F = self.field
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = F.add(acc.get(e, 0), c)
        return SparsePoly(F, acc)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.field, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def scale(self, c: int) -> "SparsePoly":
        F = self.field
        return SparsePoly(F, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        """Product reduced mod x^(q^n) - x."""
        F = self.field
        acc: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = reduce_exponent(e1 + e2, F.order)
                acc[e] = F.add(acc.get(e, 0), F.mul(c1, c2))
        return SparsePoly(F, acc)

    def add_constant(self, c: int) -> "SparsePoly":
        return self + SparsePoly.constant(self.field, c)

    def evaluate(self, x: int) -> int:
        F = self.field
        acc = 0
        for e, c in self.terms.items():
            acc = F.add(acc, F.mul(c, F.pow(x, e)))
        return acc

    __call__ = evaluate

    def frobenius_twist(self, k: int) -> "SparsePoly":
        """The polynomial P(x)^(q^k), reduced: coefficients c -> c^(q^k), exponents e -> e*q^k."""
        F = self.field
        k %= F.n
        if k == 0:
            return self.reduce()
        acc: dict[int, int] = {}
        s = F.q ** k
        for e, c in self.terms.items():
            r = reduce_exponent(e * s, F.order)
            acc[r] = F.add(acc.get(r, 0), F.frobenius(c, k))
        return SparsePoly(F, acc)

    def to_json(self) -> list[dict]:
        F = self.field
        return [{"exponent": str(e), "coeff": F.to_text(c)} for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, F: GF, items: Iterable[Mapping]) -> "SparsePoly":
        acc: dict[int, int] = {}
        for it in items:
            e = int(it["exponent"])
            acc[e] = F.add(acc.get(e, 0), F.from_text(it["coeff"]))
        return cls(F, acc)


def poly_weight(P: SparsePoly) -> int:
    """Maximum Hamming weight over exponents with nonzero coefficient (0 for the zero polynomial)."""
    return max((weight(e, P.field.q) for e in P.terms), default=0)


def is_pseudoquadratic(P: SparsePoly) -> bool:
    """Every exponent is 0, q^i, q^i + q^j (i != j) or 2 q^i, i.e. digit sum <= 2."""
    q = P.field.q
    return all(e < P.field.order and digit_sum(e, q) <= 2 for e in P.terms)


def _check_linearized(L: SparsePoly) -> None:
    bad = [e for e in L.terms if not is_q_power(e, L.field.q)]
    if bad:
        raise ShapeViolation(f"exponents {bad[:4]} of the inner map are not q-powers")


def compose_linearized(P: SparsePoly, L: SparsePoly) -> SparsePoly:
    """P(L(x)) mod x^(q^n) - x for a linearized L.

    Uses L(x)^(q^a) = sum_j l_j^(q^a) x^(q^(j+a mod n)), so every base-q digit
    of an exponent of P becomes a product of Frobenius twists of L.
    """
    F = P.field
    _check_linearized(L)
    L = L.reduce()
    twists = [L.frobenius_twist(a) for a in range(F.n)]
    out: dict[int, int] = {}
    for e, c in P.reduce().terms.items():
        term = SparsePoly.constant(F, c)
        for a, d in enumerate(digits(e, F.q)):
            for _ in range(d):
                term = term * twists[a]
        for e2, c2 in term.terms.items():
            out[e2] = F.add(out.get(e2, 0), c2)
    return SparsePoly(F, out)


def apply_linearized(L: SparsePoly, P: SparsePoly) -> SparsePoly:
    """L(P(x)) = sum_i l_i P(x)^(q^i) for a linearized L."""
    F = P.field
    _check_linearized(L)
    out = SparsePoly.zero(F)
    for e, c in L.reduce().terms.items():
        a = 0
        while F.q ** a != e:
            a += 1
        out = out + P.frobenius_twist(a).scale(c)
    return out


def compose_translate(P: SparsePoly, c: int, side: str) -> SparsePoly:
    """Right: P(x + c).  Left: P(x) + c.

    The right translate expands (x + c)^(q^a) = x^(q^a) + c^(q^a) digit by
    digit, so a pseudoquadratic P stays pseudoquadratic.
    """
    F = P.field
    if side == "left":
        return P.add_constant(c)
    if side != "right":
        raise ValueError("side must be 'left' or 'right'")
    if c == 0:
        return P
    shifted = [SparsePoly(F, {F.q ** a: 1, 0: F.frobenius(c, a)}) for a in range(F.n)]
    out: dict[int, int] = {}
    for e, coef in P.reduce().terms.items():
        term = SparsePoly.constant(F, coef)
        for a, d in enumerate(digits(e, F.q)):
            for _ in range(d):
                term = term * shifted[a]
        for e2, c2 in term.terms.items():
            out[e2] = F.add(out.get(e2, 0), c2)
    return SparsePoly(F, out)


def linearized_from_images(F: GF, points: Sequence[int], images: Sequence[int]) -> SparsePoly:
    """The linearized polynomial sum_i l_i x^(q^i) taking points[j] to images[j].

    ``points`` must be a GF(p)-basis of K; the Moore matrix system
    sum_i l_i points[j]^(q^i) = images[j] is solved over K.
    """
    from .linalg import solve

    rows = []
    for b in points:
        row, v = [], b
        for _ in range(F.n):
            row.append(v)
            v = F.pow(v, F.q)
        rows.append(row)
    sol = solve(F, rows, list(images), backend="generic")
    if sol.rank != F.n:
        raise ShapeViolation("points do not form a basis")
    return SparsePoly.linearized(F, sol.solution)
