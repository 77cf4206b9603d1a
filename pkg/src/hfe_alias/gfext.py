"""Arithmetic in GF(p) and in one extension K = GF(p)[t]/(m(t)).

Elements of K are plain Python ints whose base-p digits are the coefficients
of the residue polynomial, lowest power first: for p=2, n=3 the int 0b110
is t^2 + t.  A :class:`GF` instance owns the modulus and every operation;
elements carry no back-reference to their field.

Small fields (p^n <= 2^16) multiply through log/antilog tables.  Larger binary
fields use carry-less multiplication with bitwise reduction, and larger odd
characteristic fields fall back to schoolbook multiplication on digit lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FieldMismatch, NotIrreducible

TABLE_LIMIT = 1 << 16
ENUMERATION_BITS = 24


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# -- polynomials over GF(p) as ascending coefficient lists --------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _ptrim(a)
    return a


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Deterministic test: m has no factor of degree <= deg(m)/2.

    Uses gcd(x^(p^i) - x, m) == 1 for each i <= n/2.
    """
    m = _ptrim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if m[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(n // 2):
        xp = _ppowmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, diff, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n over GF(p).

    Candidates are ranked by their integer code sum c_i p^i, so the highest
    non-leading coefficient decides first: over GF(2) t^3+t+1 wins over
    t^3+t^2+1, and over GF(3) t^2+1 wins over t^2+2.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    for code in range(p ** n):
        cand = [(code // p ** i) % p for i in range(n)] + [1]
        if cand[0] and is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldParams:
    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 2:
            raise ValueError("extension degree must be at least 2")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible(mod, self.p):
            raise NotIrreducible(f"{mod} is reducible over GF({self.p})")

    @classmethod
    def default(cls, p: int = 2, n: int = 3) -> "FieldParams":
        return cls(p, n, find_irreducible(p, n))

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, doc: dict) -> "FieldParams":
        return cls(int(doc["p"]), int(doc["n"]), tuple(int(c) for c in doc["modulus"]))


class PrimeField:
    """GF(p) with the same method names as :class:`GF`, for generic linear algebra."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        self.p = p
        self.q = p
        self.n = 1
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        return pow(a, e, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GFp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class GF:
    """The extension field K = GF(p)[t]/(modulus)."""

    def __init__(self, params: FieldParams):
        self.params = params
        self.p = params.p
        self.q = params.p
        self.n = params.n
        self.order = params.p ** params.n
        self.zero = 0
        self.one = 1
        self._mod = params.modulus
        self._digits = [self.p ** i for i in range(self.n)]
        if self.p == 2:
            self._mod_int = sum(c << i for i, c in enumerate(self._mod))
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    @classmethod
    def default(cls, p: int = 2, n: int = 3) -> "GF":
        return get_field(FieldParams.default(p, n))

    # -- representation ------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        if self.p == 2:
            return tuple((a >> i) & 1 for i in range(self.n))
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Iterable[int]) -> int:
        cs = [int(c) % self.p for c in cs]
        if len(cs) != self.n:
            raise FieldMismatch(f"expected {self.n} coefficients, got {len(cs)}")
        if self.p == 2:
            return sum(c << i for i, c in enumerate(cs))
        return sum(c * d for c, d in zip(cs, self._digits))

    def to_text(self, a: int) -> str:
        cs = self.coeffs(a)
        if self.p <= 10:
            return "".join(str(c) for c in cs)
        return ",".join(str(c) for c in cs)

    def from_text(self, s: str) -> int:
        s = s.strip()
        cs = s.split(",") if "," in s else list(s)
        try:
            return self.from_coeffs(int(c) for c in cs)
        except ValueError as exc:
            raise FieldMismatch(f"bad field element text {s!r}") from exc

    def format(self, a: int) -> str:
        """Human-readable form, highest power first, e.g. ``t^2+t+1``."""
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs(a)))):
            if not c:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if c != 1:
                mono = f"{c}" if i == 0 else f"{c}*{mono}"
            parts.append(mono)
        return "+".join(parts) if parts else "0"

    def parse(self, s: str) -> int:
        """Inverse of :meth:`format`: ``"t^2+t+1"``, ``"2*t+1"``, ``"0"``."""
        cs = [0] * self.n
        for part in s.replace(" ", "").split("+"):
            if not part or part == "0":
                continue
            c, _, mono = part.rpartition("*")
            if "t" not in mono:
                c, mono = mono, ""
            k = 0 if not mono else (1 if mono == "t" else int(mono.split("^")[1]))
            if k >= self.n:
                raise FieldMismatch(f"power t^{k} is not reduced")
            cs[k] += int(c) if c else 1
        return self.from_coeffs(cs)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise FieldMismatch(f"{a} is not an element of GF({self.p}^{self.n})")
        return a

    def elements(self) -> Iterator[int]:
        if self.order > 1 << ENUMERATION_BITS:
            raise ValueError("field too large to enumerate")
        return iter(range(self.order))

    def random(self, rng: np.random.Generator) -> int:
        if self.order < 1 << 62:
            return int(rng.integers(0, self.order))
        return self.from_coeffs(rng.integers(0, self.p, size=self.n))

    def random_nonzero(self, rng: np.random.Generator) -> int:
        while True:
            a = self.random(rng)
            if a:
                return a

    # -- arithmetic -------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs(x + y for x, y in zip(ca, cb))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs(x - y for x, y in zip(ca, cb))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_coeffs(-x for x in self.coeffs(a))

    def scalar(self, c: int, a: int) -> int:
        """Multiply by an element of the prime field."""
        c %= self.p
        if c == 1:
            return a
        return self.from_coeffs(c * x for x in self.coeffs(a))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                a <<= 1
                b >>= 1
            n, m = self.n, self._mod_int
            for i in range(r.bit_length() - 1, n - 1, -1):
                if (r >> i) & 1:
                    r ^= m << (i - n)
            return r
        res = _pmulmod(_ptrim(list(self.coeffs(a))), _ptrim(list(self.coeffs(b))), self._mod, self.p)
        return self.from_coeffs(res + [0] * (self.n - len(res)))

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        e %= self.order - 1
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in extension field")
        if self._log is not None:
            return self._exp[(self.order - 1) - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(p^k), as k successive p-th powers (k taken mod n)."""
        for _ in range(k % self.n):
            a = self.pow(a, self.p)
        return a

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p), returned as an int in [0, p)."""
        acc, x = a, a
        for _ in range(self.n - 1):
            x = self.pow(x, self.p)
            acc = self.add(acc, x)
        return self.coeffs(acc)[0]

    # -- tables -----------------------------------------------------------------

    def _build_tables(self) -> None:
        size = self.order - 1
        for g in range(2, self.order) if self.order > 2 else [1]:
            exp = [1] * (2 * size)
            x = 1
            ok = True
            for i in range(1, size):
                x = self._mul_slow(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if not ok:
                continue
            for i in range(size, 2 * size):
                exp[i] = exp[i - size]
            log = [0] * self.order
            for i in range(size):
                log[exp[i]] = i
            self._exp, self._log = exp, log
            self.generator = g
            return
        raise AssertionError("no primitive element")  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, GF) and other.params == self.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return f"GF({self.p}^{self.n}, modulus={list(self._mod)})"


@dataclass(frozen=True, eq=False)
class Basis:
    """An ordered GF(p)-basis of K.

    ``matrix`` columns are the power-basis coordinates of the basis elements;
    ``encode(v)`` is the element sum_i v[i] * beta_i.
    """

    field: GF
    matrix: np.ndarray
    inverse: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        from .linalg import inv_mod_p

        m = np.asarray(self.matrix, dtype=np.int64) % self.field.p
        if m.shape != (self.field.n, self.field.n):
            raise FieldMismatch("basis matrix must be n x n")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        inv = inv_mod_p(m, self.field.p)
        inv.setflags(write=False)
        object.__setattr__(self, "inverse", inv)

    @classmethod
    def power(cls, F: GF) -> "Basis":
        return cls(F, np.eye(F.n, dtype=np.int64))

    @classmethod
    def descending(cls, F: GF) -> "Basis":
        """t^(n-1), ..., t, 1 -- the ordering used when listing a basis highest power first."""
        return cls(F, np.eye(F.n, dtype=np.int64)[:, ::-1])

    @classmethod
    def from_elements(cls, F: GF, elems: Sequence[int]) -> "Basis":
        return cls(F, np.array([F.coeffs(e) for e in elems], dtype=np.int64).T)

    def elements(self) -> list[int]:
        return [self.field.from_coeffs(col) for col in self.matrix.T]

    def encode(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.field.n,):
            raise FieldMismatch(f"expected a length-{self.field.n} vector")
        return self.field.from_coeffs(self.matrix @ v % self.field.p)

    def decode(self, a: int) -> np.ndarray:
        return self.inverse @ np.array(self.field.coeffs(a), dtype=np.int64) % self.field.p

    def encode_many(self, V: np.ndarray) -> list[int]:
        C = np.asarray(V, dtype=np.int64) @ self.matrix.T % self.field.p
        if self.field.p == 2:
            w = 1 << np.arange(self.field.n, dtype=np.int64)
            return [int(x) for x in C @ w] if C.shape[1] < 63 else [self.field.from_coeffs(r) for r in C]
        return [self.field.from_coeffs(r) for r in C]

    def decode_many(self, xs: Sequence[int]) -> np.ndarray:
        C = np.array([self.field.coeffs(x) for x in xs], dtype=np.int64).reshape(-1, self.field.n)
        return C @ self.inverse.T % self.field.p

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.field.n, dtype=np.int64)))

    def to_json(self) -> list[list[int]]:
        return self.matrix.tolist()


@lru_cache(maxsize=64)
def get_field(params: FieldParams) -> GF:
    """Shared :class:`GF` per parameter set (table construction is not free)."""
    return GF(params)
