"""Recover the univariate alias A = S o f o T from a public key.

The unknowns are the coefficients of A on every exponent of base-q digit
sum <= 2; each evaluation point x in K contributes the row (x^e)_e with right
hand side encode(PK(decode(x))).  The system is solved over K.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Iterator

import numpy as np

from .errors import RankDeficient, VerificationFailed
from .gfext import GF, Basis
from .hfe import PublicKey
from .linalg import binary_kernel, binary_kernel_ok, solve
from .sparsepoly import SparsePoly, digit_sum, digits

CONVENTIONS = ("asc/asc", "asc/desc", "desc/asc", "desc/desc")


@dataclass(frozen=True)
class MonomialBasis:
    q: int
    n: int
    exponents: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.exponents)


def enumerate_monomials(q: int, n: int) -> MonomialBasis:
    """All exponents 0 <= e <= q^n - 1 with base-q digit sum <= 2, ascending.

    At q = 2 these are the exponents of Hamming weight <= 2: W = 1 + n + n(n-1)/2.
    For odd q the n square exponents 2 q^i are included as well.
    """
    exps = {0}
    for i in range(n):
        exps.add(q ** i)
    for i, j in combinations_with_replacement(range(n), 2):
        e = q ** i + q ** j
        if e < q ** n and digit_sum(e, q) == 2:
            exps.add(e)
    return MonomialBasis(q, n, tuple(sorted(exps)))


@dataclass(frozen=True, eq=False)
class AliasKey:
    A: SparsePoly
    points_used: int
    achieved_rank: int
    basis_convention: str
    monomials: MonomialBasis = field(repr=False)
    mults: int = 0
    solve_mults: int = 0

    @property
    def W(self) -> int:
        return self.monomials.count

    def to_json(self) -> dict:
        F = self.A.field
        return {"format_version": 1, "p": F.p, "n": F.n, "modulus": list(F.params.modulus),
                "A": self.A.to_json(), "points_used": self.points_used,
                "achieved_rank": self.achieved_rank, "convention": self.basis_convention}


def convention_bases(F: GF, name: str) -> tuple[Basis, Basis]:
    """(input basis, output basis) for a convention label such as ``asc/desc``."""
    pick = {"asc": Basis.power, "desc": Basis.descending}
    a, b = name.split("/")
    return pick[a](F), pick[b](F)


def point_schedule(p: int, n: int, order: str = "weight") -> Iterator[np.ndarray]:
    """Coordinate vectors in evaluation order.

    ``counting``: 0, 1, 2, ... read as base-p digit vectors, digit 0 first.
    ``weight``: the same vectors grouped by digit sum (0, then 1, then 2, ...),
    counting order inside each group.  Its first W points are unisolvent for
    quadratic maps, so no extra points are needed.
    """
    if order == "counting":
        for idx in range(p ** n):
            yield np.array([(idx // p ** i) % p for i in range(n)], dtype=np.int64)
        return
    if order != "weight":
        raise ValueError(f"unknown point schedule {order!r}")
    for total in range(0, (p - 1) * n + 1):
        yield from _vectors_with_digit_sum(p, n, total)


def _vectors_with_digit_sum(p: int, n: int, total: int) -> Iterator[np.ndarray]:
    # support-first enumeration keeps low totals cheap for large n
    found = []
    for k in range(0, min(n, total) + 1):
        for support in combinations(range(n), k):
            for vals in _compositions(total, k, p - 1):
                v = np.zeros(n, dtype=np.int64)
                v[list(support)] = vals
                found.append(v)
    found.sort(key=lambda v: int(sum(int(c) * p ** i for i, c in enumerate(v))))
    yield from found


def _compositions(total: int, parts: int, cap: int) -> Iterator[list[int]]:
    if parts == 0:
        if total == 0:
            yield []
        return
    for first in range(1, min(cap, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield [first] + rest


def _power_cost(q: int) -> int:
    # square-and-multiply multiplications for a q-th power
    return q.bit_length() - 1 + bin(q).count("1") - 1


def evaluation_rows(F: GF, mb: MonomialBasis, xs: list[int]):
    """Rows (x^e for e in the monomial basis) and the number of K-multiplications spent.

    Powers are built from the Frobenius vector (x, x^q, ..., x^(q^(n-1))):
    each exponent of digit sum s costs s - 1 products on top of it.
    """
    n, q = F.n, F.q
    pairs = [digits(e, q) for e in mb.exponents]
    frob_mults = (n - 1) * _power_cost(q) * len(xs)
    prod_mults = sum(max(sum(d) - 1, 0) for d in pairs) * len(xs)
    if binary_kernel_ok(F):
        K = binary_kernel(F)
        X = [np.asarray(xs, dtype=np.uint64)]
        for _ in range(n - 1):
            X.append(K.mul(X[-1], X[-1]))
        X = np.stack(X)
        cols = np.empty((len(xs), mb.count), dtype=np.uint64)
        two_i, two_j, two_c = [], [], []
        for c, e in enumerate(mb.exponents):
            bits = [i for i, dgt in enumerate(digits(e, 2)) if dgt]
            if not bits:
                cols[:, c] = 1
            elif len(bits) == 1:
                cols[:, c] = X[bits[0]]
            else:
                two_i.append(bits[0])
                two_j.append(bits[1])
                two_c.append(c)
        if two_c:
            cols[:, two_c] = K.mul(X[two_i], X[two_j]).T
        return cols, frob_mults + prod_mults
    rows = []
    for x in xs:
        fr = [x]
        for _ in range(n - 1):
            fr.append(F.pow(fr[-1], q))
        row = []
        for d in pairs:
            v = 1
            for i, k in enumerate(d):
                for _ in range(k):
                    v = fr[i] if v == 1 else F.mul(v, fr[i])
            row.append(v)
        rows.append(row)
    return rows, frob_mults + prod_mults


def public_map_on_field(pk: PublicKey, V: np.ndarray, in_basis: Basis, out_basis: Basis):
    """(points, values): x = encode_in(v) and encode_out(PK(v)) for each row v of V."""
    xs = in_basis.encode_many(V)
    ys = out_basis.encode_many(pk.evaluate_many(V))
    return xs, ys


def recover_alias(pk: PublicKey, F: GF | None = None, in_basis: Basis | None = None,
                  out_basis: Basis | None = None, convention: str | None = None,
                  schedule: str = "weight", verify: bool = True, backend: str = "auto") -> AliasKey:
    """Interpolate A from W (or more) public-key evaluations.

    The field defaults to the attacker's own choice, GF(p)[t] modulo the
    smallest irreducible of degree n; bases default to the power basis.
    Rows are appended one point at a time when the first W leave the system
    rank deficient.
    """
    F = F or GF.default(pk.p, pk.n)
    if convention is not None:
        in_basis, out_basis = convention_bases(F, convention)
    in_basis = in_basis or Basis.power(F)
    out_basis = out_basis or in_basis
    label = convention or ("asc/asc" if in_basis.is_identity() and out_basis.is_identity() else "custom")
    mb = enumerate_monomials(F.q, F.n)
    W = mb.count

    sched = point_schedule(F.p, F.n, schedule)
    V = [next(sched) for _ in range(W)]
    xs, ys = public_map_on_field(pk, np.array(V), in_basis, out_basis)
    rows, mults = evaluation_rows(F, mb, xs)
    while True:
        sol = solve(F, rows, ys, backend=backend)
        mults += sol.mults
        if sol.rank == W:
            break
        v = next(sched, None)
        if v is None:
            raise RankDeficient(f"rank {sol.rank} < {W} after all {len(xs)} points")
        x, y = public_map_on_field(pk, v[None, :], in_basis, out_basis)
        extra, m = evaluation_rows(F, mb, x)
        mults += m
        rows = np.concatenate([np.asarray(rows, dtype=np.uint64), extra]) if isinstance(rows, np.ndarray) \
            else rows + extra
        xs, ys = xs + x, ys + y
    A = SparsePoly(F, dict(zip(mb.exponents, sol.solution)))
    alias = AliasKey(A, len(xs), sol.rank, label, mb, mults, sol.mults)
    if verify and not verify_alias(alias, pk, in_basis=in_basis, out_basis=out_basis):
        raise VerificationFailed("recovered alias disagrees with the public key")
    return alias


def evaluate_many(P: SparsePoly, xs: list[int]) -> list[int]:
    """P at many points; vectorised for pseudoquadratic P over GF(2^n), n <= 32."""
    F = P.field
    if binary_kernel_ok(F) and all(bin(e).count("1") <= 2 and e < F.order for e in P.terms):
        K = binary_kernel(F)
        X = [np.asarray(xs, dtype=np.uint64)]
        for _ in range(F.n - 1):
            X.append(K.mul(X[-1], X[-1]))
        acc = np.zeros(len(xs), dtype=np.uint64)
        for e, c in P.terms.items():
            bits = [i for i in range(F.n) if (e >> i) & 1]
            if not bits:
                term = np.ones(len(xs), dtype=np.uint64)
            elif len(bits) == 1:
                term = X[bits[0]]
            else:
                term = K.mul(X[bits[0]], X[bits[1]])
            acc ^= K.mul(term, np.uint64(c))
        return [int(v) for v in acc]
    return [P.evaluate(x) for x in xs]


def verify_alias(alias: AliasKey, pk: PublicKey, trials: int | None = None, seed: int = 0,
                 in_basis: Basis | None = None, out_basis: Basis | None = None) -> bool:
    """Does A agree with the public map?

    ``trials=None`` checks every point when q^n <= 4096 and 200 random points
    otherwise; an int checks that many distinct random points (all of them if
    it exceeds the field size); 0 is vacuously true.
    """
    F = alias.A.field
    if alias.basis_convention in CONVENTIONS and in_basis is None:
        in_basis, out_basis = convention_bases(F, alias.basis_convention)
    in_basis = in_basis or Basis.power(F)
    out_basis = out_basis or in_basis
    if trials is None:
        trials = F.order if F.order <= 4096 else 200
    if trials <= 0:
        return True
    rng = np.random.default_rng(seed)
    if trials >= F.order:
        xs = list(range(F.order))
    elif F.order <= 1 << 24:
        xs = [int(x) for x in rng.choice(F.order, size=trials, replace=False)]
    else:
        xs = list({F.random(rng) for _ in range(trials)})
    V = in_basis.decode_many(xs)
    want = out_basis.encode_many(pk.evaluate_many(V))
    return evaluate_many(alias.A, xs) == want


def timed_recover(pk: PublicKey, F: GF | None = None) -> tuple[AliasKey, float]:
    """recover_alias without the verification pass, with wall time in milliseconds."""
    t0 = time.perf_counter()
    alias = recover_alias(pk, F, verify=False)
    return alias, (time.perf_counter() - t0) * 1000.0
