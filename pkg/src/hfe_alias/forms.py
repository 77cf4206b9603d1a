"""Quadratic/linear form view of a pseudoquadratic polynomial.

Writing X_i = x^(q^i), a pseudoquadratic A is c + sum_i lam_i X_i +
sum_{i<j} B_ij X_i X_j (plus B_ii X_i^2 for odd q).  A basis change X = P X'
acts on B by congruence and on lam covariantly (lam' = P^T lam).  In
characteristic 2 the quadratic part's symmetric matrix is alternating and is
brought to a sum of hyperbolic blocks; the linear tail outside the block is
then collapsed to at most one coordinate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import linalg
from .errors import DegreeTooHigh, NotAlternating, ShapeViolation, VerificationFailed
from .gfext import GF
from .linalg import Matrix
from .rootfind import DEGREE_GUARD, roots_lowdegree, to_dense
from .sparsepoly import SparsePoly, digits


@dataclass(frozen=True, eq=False)
class QuadDecomposition:
    field: GF
    constant: int
    linear: list[int]
    B: Matrix


def decompose(A: SparsePoly) -> QuadDecomposition:
    """Split A into constant, linear coefficient vector and symmetric matrix B.

    At p = 2, B_ij = B_ji = coefficient of x^(q^i + q^j) and the diagonal is
    zero; this is the polar form q(x+y) + q(x) + q(y) of the quadratic part.
    For odd p, B_ii holds the x^(2 q^i) coefficient and off-diagonal
    coefficients are split in half, so the quadratic part is X^T B X.
    """
    F = A.field
    n, q = F.n, F.q
    lam = [0] * n
    B = linalg.zeros(n, n)
    const = 0
    half = F.inv(2 % F.p) if F.p != 2 else None
    for e, c in A.reduce().terms.items():
        ds = digits(e, q)
        support = [i for i, d in enumerate(ds) if d]
        total = sum(ds)
        if e == 0:
            const = c
        elif total == 1:
            lam[support[0]] = c
        elif total == 2 and len(support) == 2:
            i, j = support
            v = c if F.p == 2 else F.mul(c, half)
            B[i][j] = B[j][i] = v
        elif total == 2:
            B[support[0]][support[0]] = c
        else:
            raise ShapeViolation(f"exponent {e} has base-{q} digit sum {total} > 2")
    return QuadDecomposition(F, const, lam, B)


def reconstruct(F: GF, constant: int, linear: list[int], B: Matrix) -> SparsePoly:
    """Inverse of :func:`decompose`: slot (i, j) -> x^(q^i + q^j), slot i -> x^(q^i)."""
    q, n = F.q, F.n
    terms: dict[int, int] = {0: constant}
    for i, c in enumerate(linear):
        if c:
            terms[q ** i] = F.add(terms.get(q ** i, 0), c)
    for i in range(n):
        if F.p != 2 and B[i][i]:
            e = 2 * q ** i
            terms[e] = F.add(terms.get(e, 0), B[i][i])
        for j in range(i + 1, n):
            if B[i][j]:
                c = B[i][j] if F.p == 2 else F.add(B[i][j], B[i][j])
                e = q ** i + q ** j
                terms[e] = F.add(terms.get(e, 0), c)
    return SparsePoly(F, terms)


def reconstruct_decomposition(dec: QuadDecomposition) -> SparsePoly:
    return reconstruct(dec.field, dec.constant, dec.linear, dec.B)


def hyperbolic_form(n: int, r: int) -> Matrix:
    """diag(H, ..., H, 0) with r blocks H = [[0, 1], [1, 0]]."""
    M = linalg.zeros(n, n)
    for k in range(r):
        M[2 * k][2 * k + 1] = M[2 * k + 1][2 * k] = 1
    return M


def _bil(F: GF, B: Matrix, u: list[int], v: list[int]) -> int:
    return sum_(F, (F.mul(x, y) for x, y in zip(u, linalg.matvec(F, B, v)) if x and y))


def sum_(F: GF, xs) -> int:
    acc = 0
    for x in xs:
        acc = F.add(acc, x)
    return acc


def canonicalize(F: GF, B: Matrix) -> tuple[Matrix, int]:
    """P, r with P^T B P = diag(H, ..., H, 0) for an alternating B.

    Greedy symplectic reduction: take the lowest-index nonzero entry among the
    remaining vectors, scale it to a hyperbolic pair, project the pair out of
    the rest, repeat.
    """
    n = len(B)
    if not linalg.is_symmetric(B) or any(B[i][i] for i in range(n)):
        raise NotAlternating("matrix is not symmetric with zero diagonal")
    if F.p != 2 and any(any(row) for row in B):
        raise NotAlternating("a nonzero symmetric matrix is not alternating in odd characteristic; use diagonalize")
    rem = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    cols: list[list[int]] = []
    while True:
        BW = [linalg.matvec(F, B, w) for w in rem]
        hit = None
        for a in range(len(rem)):
            for b in range(a + 1, len(rem)):
                g = sum_(F, (F.mul(x, y) for x, y in zip(rem[a], BW[b]) if x and y))
                if g:
                    hit = (a, b, g)
                    break
            if hit:
                break
        if hit is None:
            break
        a, b, g = hit
        e = rem[a]
        ginv = F.inv(g)
        f = [F.mul(ginv, x) for x in rem[b]]
        Be, Bf = BW[a], [F.mul(ginv, x) for x in BW[b]]
        # b(f, e) = -1 for an alternating form
        new_rem = []
        for k, w in enumerate(rem):
            if k in (a, b):
                continue
            wf = sum_(F, (F.mul(x, y) for x, y in zip(w, Bf) if x and y))
            we = sum_(F, (F.mul(x, y) for x, y in zip(w, Be) if x and y))
            new_rem.append([F.add(F.sub(wk, F.mul(wf, ek)), F.mul(we, fk)) for wk, ek, fk in zip(w, e, f)])
        cols += [e, f]
        rem = new_rem
    r = len(cols) // 2
    cols += rem
    return linalg.transpose(cols), r


def diagonalize(F: GF, B: Matrix) -> tuple[Matrix, int]:
    """P, k with P^T B P = diag(d_1, ..., d_k, 0, ...) for symmetric B, odd characteristic."""
    if F.p == 2:
        raise NotAlternating("diagonalization needs odd characteristic")
    if not linalg.is_symmetric(B):
        raise NotAlternating("matrix is not symmetric")
    n = len(B)
    rem = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    cols = []
    while rem:
        G = [[_bil(F, B, u, v) for v in rem] for u in rem]
        piv = next((k for k in range(len(rem)) if G[k][k]), None)
        if piv is None:
            off = next(((a, b) for a in range(len(rem)) for b in range(a + 1, len(rem)) if G[a][b]), None)
            if off is None:
                break
            a, b = off
            rem[a] = [F.add(x, y) for x, y in zip(rem[a], rem[b])]
            continue
        e = rem[piv]
        dinv = F.inv(G[piv][piv])
        new_rem = []
        for k, w in enumerate(rem):
            if k == piv:
                continue
            c = F.mul(G[k][piv], dinv)
            new_rem.append([F.sub(wk, F.mul(c, ek)) for wk, ek in zip(w, e)])
        cols.append(e)
        rem = new_rem
    k = len(cols)
    cols += rem
    return linalg.transpose(cols), k


def reduce_linear_tail(F: GF, lam: list[int], start: int) -> Matrix:
    """Q = diag(I_start, Q_tail) with the tail of Q^T lam equal to 0 or e_start.

    Coordinates below ``start`` (the nonzero block of the canonical quadratic
    form) are left alone, so Q preserves that form.
    """
    n = len(lam)
    Q = linalg.identity(n)
    tail = lam[start:]
    k0 = next((k for k, c in enumerate(tail) if c), None)
    if k0 is None:
        return Q
    inv = F.inv(tail[k0])
    m = n - start
    # column 0 of Q_tail pairs to 1 with the tail, the other columns to 0
    qcols = [[0] * m for _ in range(m)]
    qcols[0][k0] = inv
    others = [k for k in range(m) if k != k0]
    for slot, k in enumerate(others, start=1):
        qcols[slot][k] = 1
        qcols[slot][k0] = F.neg(F.mul(tail[k], inv))
    for c in range(m):
        for r in range(m):
            Q[start + r][start + c] = qcols[c][r]
    return Q


@dataclass(frozen=True, eq=False)
class ReducedKey:
    F_prime: SparsePoly
    P_total: Matrix
    r: int
    block: int
    provenance: str
    square_terms: list[int] = field(repr=False, default_factory=list)

    @property
    def degree(self) -> int:
        return self.F_prime.degree()

    def to_json(self, alias_constant: int | None = None) -> dict:
        F = self.F_prime.field
        doc = {"format_version": 1, "p": F.p, "n": F.n, "modulus": list(F.params.modulus),
               "F_prime": self.F_prime.to_json(),
               "P_total": [[F.to_text(x) for x in row] for row in self.P_total],
               "r": self.r, "degree": self.degree, "provenance": self.provenance}
        if alias_constant is not None:
            doc["constant_preserved"] = self.F_prime.constant_term == alias_constant
        return doc


def alias_digest(A: SparsePoly) -> str:
    return hashlib.sha256(json.dumps(A.to_json(), sort_keys=True).encode()).hexdigest()[:16]


def degree_bound(q: int, r: int) -> int:
    """q^(2r) + q^(2r-1); 1 when the quadratic part vanishes."""
    return 1 if r == 0 else q ** (2 * r) + q ** (2 * r - 1)


def square_defect(F: GF, dec: QuadDecomposition, P: Matrix) -> list[int]:
    """Q(P e_k) for each column: the X'_k^2 coefficients created by X = P X' in characteristic 2.

    The alternating matrix of the transformed form does not see them.
    """
    B = dec.B
    n = len(B)
    out = []
    for k in range(n):
        col = [P[i][k] for i in range(n)]
        acc = 0
        for i in range(n):
            if not col[i]:
                continue
            for j in range(i + 1, n):
                if B[i][j] and col[j]:
                    acc = F.add(acc, F.mul(B[i][j], F.mul(col[i], col[j])))
        out.append(acc)
    return out


def reduce_alias(A) -> ReducedKey:
    """decompose -> canonicalize -> transform lam -> collapse tail -> rebuild F'.

    ``A`` is an alias polynomial or anything carrying one as ``.A``.

    F' is rebuilt from (constant, P_total^T lam, P_total^T B P_total).  Every
    structural invariant is re-checked here and a breach raises
    :class:`VerificationFailed`.
    """
    A = getattr(A, "A", A)
    F = A.field
    dec = decompose(A)
    if F.p == 2:
        P, r = canonicalize(F, dec.B)
        block = 2 * r
    else:
        P, r = diagonalize(F, dec.B)
        block = r
    lam1 = linalg.matvec(F, linalg.transpose(P), dec.linear)
    Q = reduce_linear_tail(F, lam1, block)
    P_total = linalg.matmul(F, P, Q)
    lam2 = linalg.matvec(F, linalg.transpose(P_total), dec.linear)
    B2 = linalg.congruence(F, P_total, dec.B)
    Fp = reconstruct(F, dec.constant, lam2, B2)

    if linalg.rank(F, B2) != linalg.rank(F, dec.B):
        raise VerificationFailed("congruence changed the rank")
    if F.p == 2 and B2 != hyperbolic_form(F.n, r):
        raise VerificationFailed("canonical form is not hyperbolic")
    if any(lam2[block + 1:]):
        raise VerificationFailed("linear tail was not collapsed")
    if Fp.constant_term != dec.constant:
        raise VerificationFailed("constant term changed")
    bound = degree_bound(F.q, r) if F.p == 2 else max(1, 2 * F.q ** max(r - 1, 0), F.q ** r)
    if Fp.degree() > bound:
        raise VerificationFailed(f"deg F' = {Fp.degree()} exceeds {bound}")
    sq = square_defect(F, dec, P_total) if F.p == 2 else [0] * F.n
    return ReducedKey(Fp, P_total, r, block, alias_digest(A), sq)


def solve_via_reduction(rk: ReducedKey, A, ct: int, guard: int = DEGREE_GUARD) -> set[int]:
    """Candidates x with A(x) = ct obtained through the reduced polynomial.

    Each root z of F'(z) = ct gives X' = (z, z^q, ..., z^(q^(n-1))) and the
    candidate x = (P_total X')_0; only candidates that satisfy A(x) = ct are
    returned.  ``A`` may be the alias polynomial or an alias key.
    """
    A = getattr(A, "A", A)
    F = A.field
    if rk.degree > guard:
        raise DegreeTooHigh(f"deg F' = {rk.degree} exceeds the guard {guard}")
    zs = roots_lowdegree(F, to_dense(rk.F_prime, guard), ct, guard)
    out = set()
    row0 = rk.P_total[0]
    for z in zs:
        Xp = [z]
        for _ in range(F.n - 1):
            Xp.append(F.pow(Xp[-1], F.q))
        x = sum_(F, (F.mul(a, b) for a, b in zip(row0, Xp)))
        if A.evaluate(x) == ct:
            out.add(x)
    return out
