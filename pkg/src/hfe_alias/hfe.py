"""The HFE cryptosystem: key generation, public-key derivation, encryption
and decryption.

The secret affine maps S and T act on GF(p)-coordinates relative to the
private basis; ``private_eval`` is x -> S(f(T(x))) on K and the public key is
that map written as n quadratic polynomials in the coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ShapeViolation, VerificationFailed
from .gfext import GF, Basis, FieldParams, get_field
from .linalg import inv_mod_p, rank_mod_p
from .rootfind import roots_lowdegree, to_dense
from .sparsepoly import (
    SparsePoly,
    apply_linearized,
    compose_linearized,
    compose_translate,
    digit_sum,
    linearized_from_images,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HfeParams:
    field: FieldParams
    d: int
    seed: int = 0

    def __post_init__(self):
        q, n = self.field.p, self.field.n
        if not q + 1 <= self.d < q ** n:
            raise ValueError(f"degree bound d={self.d} must satisfy q+1 <= d < q^n")


def admissible_exponents(q: int, n: int, d: int) -> list[int]:
    """Exponents 0, q^i, q^i + q^j and 2 q^i (p > 2) not exceeding d."""
    out = {0}
    for i in range(n):
        if q ** i <= d:
            out.add(q ** i)
        for j in range(i, n):
            e = q ** i + q ** j
            if e <= d and (i != j or q > 2):
                out.add(e)
    return sorted(out)


@dataclass(frozen=True, eq=False)
class AffineMap:
    """v -> matrix @ v + translation over GF(p)."""

    matrix: np.ndarray
    translation: np.ndarray
    p: int = 2

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.p
        t = np.asarray(self.translation, dtype=np.int64) % self.p
        if m.shape[0] != m.shape[1] or t.shape != (m.shape[0],):
            raise ValueError("affine map needs an n x n matrix and a length-n translation")
        m.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls, n: int, p: int = 2) -> "AffineMap":
        return cls(np.eye(n, dtype=np.int64), np.zeros(n, dtype=np.int64), p)

    def __eq__(self, other):
        return (isinstance(other, AffineMap) and self.p == other.p
                and np.array_equal(self.matrix, other.matrix)
                and np.array_equal(self.translation, other.translation))

    def apply(self, v) -> np.ndarray:
        return (self.matrix @ np.asarray(v, dtype=np.int64) + self.translation) % self.p

    def apply_many(self, V: np.ndarray) -> np.ndarray:
        return (np.asarray(V, dtype=np.int64) @ self.matrix.T + self.translation) % self.p

    @cached_property
    def inverse(self) -> "AffineMap":
        mi = inv_mod_p(self.matrix, self.p)
        return AffineMap(mi, -mi @ self.translation % self.p, self.p)

    def is_linear(self) -> bool:
        return not self.translation.any()

    def linear_part(self) -> "AffineMap":
        return AffineMap(self.matrix, np.zeros_like(self.translation), self.p)

    def on_field(self, F: GF, basis: Basis) -> tuple[SparsePoly, int]:
        """(L, c) with x -> encode(M decode(x) + u) equal to L(x) + c, L linearized over K."""
        images = [basis.encode(col) for col in self.matrix.T]
        L = linearized_from_images(F, basis.elements(), images)
        return L, basis.encode(self.translation)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.tolist(), "translation": self.translation.tolist()}

    @classmethod
    def from_json(cls, doc: dict, p: int) -> "AffineMap":
        return cls(np.array(doc["matrix"], dtype=np.int64), np.array(doc["translation"], dtype=np.int64), p)


@dataclass(frozen=True, eq=False)
class PrivateKey:
    params: HfeParams
    basis: Basis
    f: SparsePoly
    S: AffineMap
    T: AffineMap

    def __post_init__(self):
        F = self.field
        bad = [e for e in self.f.terms if digit_sum(e, F.q) > 2 or e > self.params.d]
        if bad:
            raise ShapeViolation(f"f has inadmissible exponents {bad[:4]}")

    @property
    def field(self) -> GF:
        return self.f.field


@dataclass(frozen=True, eq=False)
class PublicKey:
    """n quadratic polynomials over GF(p).

    ``quad[k]`` is upper triangular: strictly so for p = 2 (x_i^2 = x_i),
    with the diagonal holding x_i^2 coefficients for p > 2.
    """

    p: int
    n: int
    constant: np.ndarray
    linear: np.ndarray
    quad: np.ndarray

    def __post_init__(self):
        n, p = self.n, self.p
        c = np.asarray(self.constant, dtype=np.int64).reshape(n) % p
        lin = np.asarray(self.linear, dtype=np.int64).reshape(n, n) % p
        qd = np.asarray(self.quad, dtype=np.int64).reshape(n, n, n) % p
        # p = 2 forbids the diagonal too, since x_i^2 = x_i there
        k = 0 if p == 2 else -1
        if np.any(np.tril(np.ones((n, n), dtype=bool), k)[None] & (qd != 0)):
            raise ValueError("quadratic part must be upper triangular")
        for a in (c, lin, qd):
            a.setflags(write=False)
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quad", qd)

    def __eq__(self, other):
        return (isinstance(other, PublicKey) and (self.p, self.n) == (other.p, other.n)
                and np.array_equal(self.constant, other.constant)
                and np.array_equal(self.linear, other.linear)
                and np.array_equal(self.quad, other.quad))

    def evaluate_many(self, V: np.ndarray) -> np.ndarray:
        V = np.asarray(V, dtype=np.int64).reshape(-1, self.n) % self.p
        lin = V @ self.linear.T
        quad = np.einsum("mi,kij,mj->mk", V, self.quad, V, optimize=True)
        return (self.constant[None, :] + lin + quad) % self.p

    def evaluate(self, v) -> np.ndarray:
        return self.evaluate_many(np.asarray(v)[None, :])[0]

    def to_json(self) -> dict:
        polys = [{"constant": int(self.constant[k]),
                  "linear": self.linear[k].tolist(),
                  "quad": self.quad[k].tolist()} for k in range(self.n)]
        return {"p": self.p, "n": self.n, "polys": polys}

    @classmethod
    def from_json(cls, doc: dict) -> "PublicKey":
        polys = doc["polys"]
        return cls(int(doc["p"]), int(doc["n"]),
                   np.array([pp["constant"] for pp in polys]),
                   np.array([pp["linear"] for pp in polys]),
                   np.array([pp["quad"] for pp in polys]))


def random_invertible(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(n, n))
        if rank_mod_p(m, p) == n:
            return m


def random_hfe_polynomial(F: GF, d: int, rng: np.random.Generator) -> SparsePoly:
    exps = admissible_exponents(F.q, F.n, d)
    coeffs = {e: F.random(rng) for e in exps}
    lead = exps[-1]
    while all(coeffs[e] == 0 for e in exps if e):
        coeffs[lead] = F.random(rng)
    return SparsePoly(F, coeffs)


def keygen(params: HfeParams, basis: Basis | None = None, affine: bool = True) -> tuple[PrivateKey, PublicKey]:
    """Deterministic in ``params.seed``.  ``affine=False`` draws linear S, T."""
    F = get_field(params.field)
    rng = np.random.default_rng(params.seed)
    n, p = F.n, F.p
    f = random_hfe_polynomial(F, params.d, rng)
    maps = []
    for _ in range(2):
        m = random_invertible(rng, n, p)
        t = rng.integers(0, p, size=n) if affine else np.zeros(n, dtype=np.int64)
        maps.append(AffineMap(m, t, p))
    S, T = maps
    sk = PrivateKey(params, basis or Basis.power(F), f, S, T)
    return sk, derive_public(sk)


def private_eval(sk: PrivateKey, x: int) -> int:
    B = sk.basis
    u = B.encode(sk.T.apply(B.decode(x)))
    y = sk.f.evaluate(u)
    return B.encode(sk.S.apply(B.decode(y)))


def coordinate_map(sk: PrivateKey, v) -> np.ndarray:
    """decode(private_eval(encode(v)))."""
    return sk.basis.decode(private_eval(sk, sk.basis.encode(v)))


def derive_public(sk: PrivateKey, extra_checks: int = 50) -> PublicKey:
    """Read the public polynomials off black-box evaluations of the coordinate map.

    Constants come from P(0), linear terms from P(e_i) - P(0), cross terms
    from P(e_i + e_j) - P(e_i) - P(e_j) + P(0); for odd p, P(2 e_i) supplies
    the square terms.
    """
    F = sk.field
    n, p = F.n, F.p
    eye = np.eye(n, dtype=np.int64)
    P0 = coordinate_map(sk, np.zeros(n, dtype=np.int64))
    Pe = [coordinate_map(sk, eye[i]) for i in range(n)]
    linear = np.zeros((n, n), dtype=np.int64)
    quad = np.zeros((n, n, n), dtype=np.int64)
    if p == 2:
        for i in range(n):
            linear[:, i] = Pe[i] - P0
    else:
        inv2 = pow(2, p - 2, p)
        for i in range(n):
            P2 = coordinate_map(sk, 2 * eye[i])
            sq = (P2 - 2 * Pe[i] + P0) * inv2 % p
            quad[:, i, i] = sq
            linear[:, i] = (Pe[i] - P0 - sq) % p
    for i in range(n):
        for j in range(i + 1, n):
            Pij = coordinate_map(sk, eye[i] + eye[j])
            quad[:, i, j] = Pij - Pe[i] - Pe[j] + P0
    pk = PublicKey(p, n, P0, linear, quad)

    rng = np.random.default_rng(sk.params.seed ^ 0x5EED)
    probes = [np.zeros(n, dtype=np.int64)] + [eye[i] for i in range(n)]
    probes += [eye[i] + eye[j] for i in range(n) for j in range(i + 1, n)]
    probes += [rng.integers(0, p, size=n) for _ in range(extra_checks)]
    got = pk.evaluate_many(np.array(probes))
    for v, y in zip(probes, got):
        if not np.array_equal(y, coordinate_map(sk, v)):
            raise VerificationFailed(f"public key disagrees with the private map at {v.tolist()}")
    return pk


def encrypt(pk: PublicKey, msg) -> np.ndarray:
    msg = np.asarray(msg, dtype=np.int64)
    if msg.shape != (pk.n,):
        raise ValueError(f"message must have length {pk.n}")
    return pk.evaluate(msg)


def decrypt(sk: PrivateKey, ct) -> set[tuple[int, ...]]:
    """Every message whose encryption is ``ct``; empty when ct is not in the image."""
    F, B = sk.field, sk.basis
    ct = np.asarray(ct, dtype=np.int64)
    if ct.shape != (F.n,):
        raise ValueError(f"ciphertext must have length {F.n}")
    y = B.encode(sk.S.inverse.apply(ct))
    roots = roots_lowdegree(F, to_dense(sk.f), y, seed=sk.params.seed)
    return {tuple(int(c) for c in sk.T.inverse.apply(B.decode(r))) for r in roots}


def split_affine(M: AffineMap, side: str, basis: Basis) -> tuple[AffineMap, int]:
    """Separate the translation of an affine map.

    ``right``: M = translate(shift) o linear, shift = encode(translation).
    ``left``: M = linear o translate(-s'), where s' = encode(matrix^-1 (-translation))
    is the unique root of M; the returned shift is s'.
    """
    p = M.p
    linear = M.linear_part()
    if side == "right":
        return linear, basis.encode(M.translation)
    if side == "left":
        root = inv_mod_p(M.matrix, p) @ (-M.translation % p) % p
        return linear, basis.encode(root)
    raise ValueError("side must be 'left' or 'right'")


def symbolic_alias(sk: PrivateKey) -> SparsePoly:
    """S o f o T as a reduced univariate polynomial over K, built symbolically."""
    F, B = sk.field, sk.basis
    S_lin, s = sk.S.on_field(F, B)
    T_lin, t = sk.T.on_field(F, B)
    inner = compose_linearized(compose_translate(sk.f, t, "right"), T_lin)
    return apply_linearized(S_lin, inner).add_constant(s)


def translation_normalized(sk: PrivateKey) -> PrivateKey:
    """Equivalent key with linear S, T and the translations folded into f."""
    F, B = sk.field, sk.basis
    S_lin, s_root = split_affine(sk.S, "left", B)
    T_lin, t_shift = split_affine(sk.T, "right", B)
    f2 = compose_translate(compose_translate(sk.f, t_shift, "right"), F.neg(s_root), "left")
    return PrivateKey(sk.params, B, f2, S_lin, T_lin)


def preimage_counts(pk: PublicKey) -> dict[tuple[int, ...], int]:
    """Exhaustive |{v : PK(v) = y}| for every y, small n only."""
    n, p = pk.n, pk.p
    if p ** n > 1 << 20:
        raise ValueError("too many messages to enumerate")
    V = counting_vectors(p, n)
    out: dict[tuple[int, ...], int] = {}
    for y in pk.evaluate_many(V):
        key = tuple(int(c) for c in y)
        out[key] = out.get(key, 0) + 1
    return out


def counting_vectors(p: int, n: int, count: int | None = None) -> np.ndarray:
    """Vectors over GF(p) in counting order, digit 0 least significant."""
    total = p ** n if count is None else min(count, p ** n)
    idx = np.arange(total, dtype=np.int64)
    return np.stack([(idx // p ** i) % p for i in range(n)], axis=1)

