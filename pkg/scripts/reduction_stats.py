"""Rank of the alias quadratic form against the shape of the hidden f.

For each seeded key: the number of distinct quadratic exponents of f, the
Frobenius indices they touch, r (half the rank of B_A), deg F', and the
number of quadratic monomials in F' versus f.
"""

from __future__ import annotations

import argparse
from collections import Counter, defaultdict
from dataclasses import dataclass

from hfe_alias.alias import recover_alias
from hfe_alias.forms import reduce_alias
from hfe_alias.gfext import FieldParams
from hfe_alias.hfe import HfeParams, keygen


@dataclass
class StatsConfig:
    n_values: tuple[int, ...] = (4, 5, 6, 7, 8)
    keys_per_n: int = 20
    d: int = 8
    seed: int = 0


def quad_exponents(P) -> list[int]:
    return [e for e in P.terms if bin(e).count("1") == 2]


def run(cfg: StatsConfig) -> None:
    table: dict[int, Counter] = defaultdict(Counter)
    same_count = total = 0
    for n in cfg.n_values:
        for k in range(cfg.keys_per_n):
            sk, pk = keygen(HfeParams(FieldParams.default(2, n), min(cfg.d, 2 ** n - 1), cfg.seed + 1000 * n + k))
            rk = reduce_alias(recover_alias(pk))
            table[n][(len(quad_exponents(sk.f)), rk.r)] += 1
            same_count += len(quad_exponents(rk.F_prime)) == len(quad_exponents(sk.f))
            total += 1
    print("n  (#quadratic exponents of f, r) -> keys")
    for n, c in table.items():
        print(f"{n:<2} " + ", ".join(f"{key}: {v}" for key, v in sorted(c.items())))
    print(f"F' has as many quadratic monomials as f in {same_count}/{total} keys")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--keys-per-n", type=int, default=20)
    ap.add_argument("--d", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    run(StatsConfig(keys_per_n=a.keys_per_n, d=a.d, seed=a.seed))


if __name__ == "__main__":
    main()
