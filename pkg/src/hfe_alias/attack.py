"""The full public-key-only pipeline and the planted-ciphertext experiment.

recover_alias -> reduce_alias -> solve_via_reduction, then every candidate
is pushed back through the public key before it is reported.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .alias import AliasKey, recover_alias
from .errors import DegreeGuardExceeded
from .forms import ReducedKey, reduce_alias, solve_via_reduction
from .gfext import GF, Basis, FieldParams
from .hfe import HfeParams, PublicKey, encrypt, keygen
from .rootfind import DEGREE_GUARD, roots_bruteforce

logger = logging.getLogger(__name__)


@dataclass
class AttackResult:
    candidates: set[tuple[int, ...]]
    raw_candidates: int
    r: int
    degree: int
    status: str
    alias: AliasKey = field(repr=False)
    reduced: ReducedKey | None = field(repr=False, default=None)

    def summary(self, msg=None) -> dict:
        doc = {"candidates": sorted(list(c) for c in self.candidates), "raw_candidates": self.raw_candidates,
               "r": self.r, "degree": self.degree, "status": self.status}
        if msg is not None:
            doc["hit"] = tuple(int(c) for c in msg) in self.candidates
        return doc


def run_attack(pk: PublicKey, ct, F: GF | None = None, alias: AliasKey | None = None,
               guard: int = DEGREE_GUARD) -> AttackResult:
    """Plaintext candidates for ``ct`` from the public key alone.

    ``status`` is ``ok`` after a completed solve and ``degree-guard`` when
    deg F' exceeds the guard; candidates are verified against the public key.
    """
    ct = np.asarray(ct, dtype=np.int64) % pk.p
    alias = alias or recover_alias(pk, F)
    A = alias.A
    basis = Basis.power(A.field)
    rk = reduce_alias(A)
    y = basis.encode(ct)
    try:
        xs = solve_via_reduction(rk, A, y, guard)
    except DegreeGuardExceeded:
        return AttackResult(set(), 0, rk.r, rk.degree, "degree-guard", alias, rk)
    out = set()
    for x in xs:
        v = basis.decode(x)
        if np.array_equal(encrypt(pk, v), ct):
            out.add(tuple(int(c) for c in v))
    return AttackResult(out, len(xs), rk.r, rk.degree, "ok", alias, rk)


@dataclass
class PlantedConfig:
    n_values: tuple[int, ...] = (4, 5, 6, 7, 8)
    trials: int = 200
    p: int = 2
    d: int = 8
    seed: int = 0


@dataclass
class PlantedRecord:
    n: int
    seed: int
    r: int
    degree: int
    candidates: int
    preimages: int
    hit: bool
    complete: bool
    sound: bool


def planted_trials(cfg: PlantedConfig) -> list[PlantedRecord]:
    """Encrypt a random message under a fresh key and attack the ciphertext.

    ``hit`` means the planted message was returned; ``complete`` means every
    preimage of the ciphertext was; ``sound`` means every returned x solves
    A(x) = y and encrypts to the ciphertext.
    """
    out = []
    rng = np.random.default_rng(cfg.seed)
    for k in range(cfg.trials):
        n = cfg.n_values[k % len(cfg.n_values)]
        seed = cfg.seed * 100_003 + k
        fp = FieldParams.default(cfg.p, n)
        d = min(cfg.d, cfg.p ** n - 1)
        sk, pk = keygen(HfeParams(fp, d, seed))
        msg = rng.integers(0, cfg.p, size=n)
        ct = encrypt(pk, msg)
        alias = recover_alias(pk)
        A = alias.A
        basis = Basis.power(A.field)
        rk = reduce_alias(A)
        y = basis.encode(ct)
        xs = solve_via_reduction(rk, A, y)
        sound = all(A.evaluate(x) == y and np.array_equal(encrypt(pk, basis.decode(x)), ct) for x in xs)
        pre = roots_bruteforce(A, y)
        rec = PlantedRecord(n, seed, rk.r, rk.degree, len(xs), len(pre),
                            basis.encode(msg) in xs, xs == pre, sound)
        logger.debug("planted %s", rec)
        out.append(rec)
    return out


def planted_summary(records: list[PlantedRecord]) -> dict:
    """Hit rate, completeness and soundness, overall and per n, plus the r distribution."""
    def rates(rs):
        m = len(rs)
        return {"trials": m, "hit_rate": sum(r.hit for r in rs) / m,
                "complete_rate": sum(r.complete for r in rs) / m,
                "soundness": sum(r.sound for r in rs) / m}

    per_n = {n: rates([r for r in records if r.n == n]) for n in sorted({r.n for r in records})}
    r_dist = {n: dict(sorted(Counter(r.r for r in records if r.n == n).items())) for n in per_n}
    return {"overall": rates(records), "per_n": per_n, "r_distribution": r_dist}
