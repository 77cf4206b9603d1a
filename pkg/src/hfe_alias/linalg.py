"""Dense exact linear algebra over a field object.

Matrices are lists of rows; entries are whatever the field's ``add``/``mul``
accept (ints for both :class:`~hfe_alias.gfext.PrimeField` and
:class:`~hfe_alias.gfext.GF`).  Pivoting always takes the first nonzero entry
of the column, so results are deterministic.

For binary fields GF(2^n) with n <= 32 there is a vectorised Gauss-Jordan
(:func:`solve_binary`) used by the interpolation attack at benchmark sizes.
Both paths report how many field multiplications they performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import Inconsistent, SingularMatrix

Matrix = list[list[int]]


@dataclass
class LinearSystemSolution:
    solution: list[int]
    rank: int
    free_count: int
    mults: int = 0
    pivots: tuple[int, ...] = ()


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def matmul(F, A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(F, A: Matrix, v: Sequence[int]) -> list[int]:
    out = []
    for row in A:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return out


def congruence(F, P: Matrix, B: Matrix) -> Matrix:
    """P^T B P."""
    return matmul(F, transpose(P), matmul(F, B, P))


def is_symmetric(B: Matrix) -> bool:
    return all(B[i][j] == B[j][i] for i in range(len(B)) for j in range(i))


def _eliminate(F, M: Matrix, ncols: int):
    """In-place Gauss-Jordan on the first ``ncols`` columns; returns (pivots, mults)."""
    rows = len(M)
    width = len(M[0]) if rows else 0
    pivots: list[int] = []
    mults = 0
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        piv = M[r]
        inv = F.inv(piv[c])
        if inv != 1:
            for j in range(c, width):
                if piv[j]:
                    piv[j] = F.mul(piv[j], inv)
            mults += width - c
        for i in range(rows):
            if i == r:
                continue
            row = M[i]
            fac = row[c]
            if not fac:
                continue
            for j in range(c, width):
                if piv[j]:
                    row[j] = F.sub(row[j], F.mul(fac, piv[j]))
            mults += width - c
        pivots.append(c)
        r += 1
    return pivots, mults


def solve(F, A: Matrix, b: Sequence[int], backend: str = "auto") -> LinearSystemSolution:
    """One solution of A x = b (free variables zero) plus the rank.

    ``backend`` is ``"generic"``, ``"binary"`` (numpy, GF(2^n) with n <= 32) or
    ``"auto"``, which picks the binary kernel whenever it applies.
    """
    if len(A) != len(b):
        raise ValueError("row count of A must match length of b")
    cols = len(A[0]) if len(A) else 0
    if backend == "binary" or (backend == "auto" and binary_kernel_ok(F) and len(A)):
        return solve_binary(F, A, b)
    M = [[int(a) for a in row] + [int(bi)] for row, bi in zip(A, b)]
    pivots, mults = _eliminate(F, M, cols)
    rank = len(pivots)
    if any(M[i][cols] for i in range(rank, len(M))):
        raise Inconsistent("linear system has no solution")
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return LinearSystemSolution(x, rank, cols - rank, mults, tuple(pivots))


def rank(F, A: Matrix) -> int:
    if not A:
        return 0
    M = [list(r) for r in A]
    pivots, _ = _eliminate(F, M, len(M[0]))
    return len(pivots)


def invert(F, A: Matrix) -> Matrix:
    n = len(A)
    if any(len(r) != n for r in A):
        raise SingularMatrix("only square matrices can be inverted")
    M = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    pivots, _ = _eliminate(F, M, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in M]


# -- GF(p) helpers on numpy integer arrays ------------------------------------

def rank_mod_p(M: np.ndarray, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        A[[r, pr]] = A[[pr, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        r += 1
        if r == rows:
            break
    return r


def inv_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64) % p
    n = A.shape[0]
    if A.shape != (n, n):
        raise SingularMatrix("only square matrices can be inverted")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.nonzero(aug[c:, c])[0]
        if nz.size == 0:
            raise SingularMatrix("matrix is singular over GF(p)")
        pr = c + nz[0]
        aug[[c, pr]] = aug[[pr, c]]
        aug[c] = aug[c] * pow(int(aug[c, c]), p - 2, p) % p
        others = np.nonzero(aug[:, c])[0]
        others = others[others != c]
        aug[others] = (aug[others] - np.outer(aug[others, c], aug[c])) % p
    return aug[:, n:]


# -- vectorised GF(2^n), n <= 32 ------------------------------------------------

BINARY_KERNEL_MAX_N = 32


def binary_kernel_ok(F) -> bool:
    return getattr(F, "p", None) == 2 and 2 <= getattr(F, "n", 0) <= BINARY_KERNEL_MAX_N


class BinaryKernel:
    """Elementwise and outer-product multiplication in GF(2^n) on uint64 arrays.

    Products are formed byte-by-byte from 256-entry carry-less tables, then
    the high half is folded back with per-byte reduction tables.
    """

    def __init__(self, F):
        self.n = F.n
        self.mask = np.uint64((1 << F.n) - 1)
        nbytes_hi = (F.n - 1 + 7) // 8
        self._red = []
        for k in range(nbytes_hi):
            tab = np.array([_reduce_int(b << (F.n + 8 * k), F) for b in range(256)], dtype=np.uint64)
            self._red.append(tab)
        self._nbytes = (F.n + 7) // 8

    def _clmul_table(self, r: np.ndarray) -> np.ndarray:
        """T[beta, j] = clmul(beta, r[j]) unreduced, beta in 0..255."""
        beta = np.arange(256, dtype=np.uint64)[:, None]
        T = np.zeros((256, r.size), dtype=np.uint64)
        for bit in range(8):
            sel = (beta >> np.uint64(bit)) & np.uint64(1)
            T ^= sel * (r[None, :] << np.uint64(bit))
        return T

    def _reduce(self, x: np.ndarray) -> np.ndarray:
        hi = x >> np.uint64(self.n)
        out = x & self.mask
        for k, tab in enumerate(self._red):
            out ^= tab[((hi >> np.uint64(8 * k)) & np.uint64(255)).astype(np.intp)]
        return out

    def outer(self, f: np.ndarray, r: np.ndarray) -> np.ndarray:
        """Matrix of products f[i] * r[j]."""
        T = self._clmul_table(r)
        acc = np.zeros((f.size, r.size), dtype=np.uint64)
        for k in range(self._nbytes):
            idx = ((f >> np.uint64(8 * k)) & np.uint64(255)).astype(np.intp)
            acc ^= T[idx] << np.uint64(8 * k)
        return self._reduce(acc)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product (arrays broadcast)."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.uint64), np.asarray(b, dtype=np.uint64))
        acc = np.zeros(a.shape, dtype=np.uint64)
        for bit in range(self.n):
            sel = (b >> np.uint64(bit)) & np.uint64(1)
            acc ^= sel * (a << np.uint64(bit))
        return self._reduce(acc)

    def scale(self, c: int, r: np.ndarray) -> np.ndarray:
        return self.outer(np.array([c], dtype=np.uint64), r)[0]


def _reduce_int(x: int, F) -> int:
    n, m = F.n, F._mod_int
    for i in range(x.bit_length() - 1, n - 1, -1):
        if (x >> i) & 1:
            x ^= m << (i - n)
    return x


_KERNELS: dict = {}


def binary_kernel(F) -> BinaryKernel:
    k = _KERNELS.get(F.params)
    if k is None:
        k = _KERNELS[F.params] = BinaryKernel(F)
    return k


def solve_binary(F, A, b) -> LinearSystemSolution:
    """Gauss-Jordan over GF(2^n) with numpy row operations.

    Same pivot rule and same output as the generic path.  The multiplication
    count includes every product in the touched block, zero factors excluded.
    """
    K = binary_kernel(F)
    M = np.concatenate([np.asarray(A, dtype=np.uint64).reshape(len(b), -1),
                        np.asarray(b, dtype=np.uint64)[:, None]], axis=1)
    rows, width = M.shape
    cols = width - 1
    pivots: list[int] = []
    mults = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        inv = F.inv(int(M[r, c]))
        if inv != 1:
            M[r, c:] = K.scale(inv, M[r, c:])
            mults += width - c
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            M[others, c:] ^= K.outer(M[others, c], M[r, c:])
            mults += others.size * (width - c)
        pivots.append(c)
        r += 1
    rank_ = len(pivots)
    if np.any(M[rank_:, cols]):
        raise Inconsistent("linear system has no solution")
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = int(M[i, cols])
    return LinearSystemSolution(x, rank_, cols - rank_, mults, tuple(pivots))
