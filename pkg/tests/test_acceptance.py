"""Acceptance gate: one test and one PASS/FAIL line per criterion.

Every check is exact (zero tolerance) except the benchmark slope window.
"""

from __future__ import annotations

import time
from itertools import product

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from hfe_alias import linalg
from hfe_alias.alias import recover_alias
from hfe_alias.attack import PlantedConfig, planted_summary, planted_trials
from hfe_alias.cli import bench, loglog_slope
from hfe_alias.forms import decompose, degree_bound, hyperbolic_form, reduce_alias
from hfe_alias.gfext import Basis, FieldParams
from hfe_alias.hfe import HfeParams, decrypt, encrypt, keygen, preimage_counts, symbolic_alias
from hfe_alias.rootfind import roots_bruteforce
from hfe_alias.toy import printed_alias, run_toy


def report(k: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}"
    ACCEPTANCE_LINES.append((k, line))
    print(line)


def seeded_keys(count, n_values, d_cap, seed0):
    for k in range(count):
        n = n_values[k % len(n_values)]
        d = 3 + (k // len(n_values)) % (min(d_cap, 2 ** n - 1) - 2)
        yield keygen(HfeParams(FieldParams.default(2, n), d, seed0 + k))


def test_criterion_1_toy_system():
    t0 = time.perf_counter()
    first = run_toy()
    elapsed = time.perf_counter() - t0
    second = run_toy()
    deterministic = first.lines == second.lines
    exact = first.system_matches_printed and not first.matrix_discrepancies and bool(first.matching_conventions)
    # a discrepancy report must name what disagrees and show every recovered alias
    precise = (len(first.lines) == 3
               and all(c in first.lines[1] for c in ("asc/asc", "asc/desc", "desc/asc", "desc/desc"))
               and (first.system_matches_printed or "printed system solves to" in first.lines[0])
               and all(f"row {r} x^{e}" in first.lines[0] for r, e, _, _ in first.matrix_discrepancies))
    ok = deterministic and elapsed < 1.0 and (exact or precise)
    kind = "printed alias reproduced" if exact else "discrepancy report"
    report(1, ok, f"{kind}, deterministic={deterministic}, {elapsed * 1000:.0f} ms; "
                  f"system solves to printed alias={first.system_matches_printed}, "
                  f"misprinted entries={len(first.matrix_discrepancies)}, "
                  f"matching conventions={first.matching_conventions or 'none'}")
    for line in first.lines:
        print("   ", line)
    assert ok


def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    total = bad = 0
    for sk, pk in seeded_keys(120, (3, 4, 5, 6, 7, 8), 8, 10_000):
        total += 1
        if recover_alias(pk).A != symbolic_alias(sk):
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = total >= 100 and bad == 0 and elapsed < 60
    report(2, ok, f"{total - bad}/{total} keys (n=3..8, d<=8) recover exactly the symbolic S o f o T, {elapsed:.1f} s")
    assert ok


def test_criterion_3_round_trip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    trips = misses = 0
    for sk, pk in seeded_keys(120, (3, 4, 5, 6, 7, 8), 8, 20_000):
        msg = rng.integers(0, 2, size=sk.field.n)
        trips += 1
        misses += tuple(msg.tolist()) not in decrypt(sk, encrypt(pk, msg))
    checked = wrong = 0
    for sk, pk in seeded_keys(15, (3, 4, 5), 8, 30_000):
        n = sk.field.n
        counts = preimage_counts(pk)
        for ct in product(range(2), repeat=n):
            checked += 1
            wrong += len(decrypt(sk, np.array(ct))) != counts.get(ct, 0)
    elapsed = time.perf_counter() - t0
    ok = trips >= 100 and misses == 0 and wrong == 0 and elapsed < 60
    report(3, ok, f"{trips - misses}/{trips} round trips; {checked - wrong}/{checked} exhaustive "
                  f"preimage counts (n<=5) agree, {elapsed:.1f} s")
    assert ok


def test_criterion_4_alias_parity():
    checked = bad = 0
    for n in range(3, 11):
        for seed in range(2):
            sk, pk = keygen(HfeParams(FieldParams.default(2, n), min(2 ** n - 1, 12), 40_000 + 10 * n + seed))
            al = recover_alias(pk)
            B = Basis.power(al.A.field)
            V = np.array(list(product(range(2), repeat=n)))[:, ::-1]
            images = [B.encode(y) for y in pk.evaluate_many(V)]
            xs = B.encode_many(V)
            by_y: dict[int, set[int]] = {}
            for x, y in zip(xs, images):
                by_y.setdefault(y, set()).add(x)
            rng = np.random.default_rng(n)
            ys = range(2 ** n) if n <= 6 else [int(v) for v in rng.choice(2 ** n, 12, replace=False)] + images[:4]
            for y in ys:
                checked += 1
                bad += roots_bruteforce(al.A, y) != by_y.get(y, set())
    ok = bad == 0
    report(4, ok, f"{checked - bad}/{checked} targets (n=3..10) have identical root sets for A(x)=y and PK(v)=y")
    assert ok


def test_criterion_5_reduction_invariants():
    calls = breaches = 0
    rs = []
    for sk, pk in seeded_keys(100, (4, 5, 6, 7, 8), 8, 50_000):
        A = recover_alias(pk).A
        F = A.field
        rk = reduce_alias(A)
        dec = decompose(A)
        C = linalg.congruence(F, rk.P_total, dec.B)
        calls += 1
        rs.append(rk.r)
        good = (linalg.rank(F, C) == linalg.rank(F, dec.B)
                and C == hyperbolic_form(F.n, rk.r)
                and rk.F_prime.constant_term == A.constant_term
                and rk.degree <= degree_bound(F.q, rk.r))
        breaches += not good
    ok = breaches == 0 and calls >= 100
    hist = {r: rs.count(r) for r in sorted(set(rs))}
    report(5, ok, f"{calls - breaches}/{calls} reduce calls satisfy rank, hyperbolic shape, constant and "
                  f"degree invariants; r distribution {hist}")
    assert ok


def test_criterion_6_planted_attack():
    t0 = time.perf_counter()
    recs = planted_trials(PlantedConfig(n_values=(4, 5, 6, 7, 8), trials=200, d=8, seed=6))
    s = planted_summary(recs)
    sound = s["overall"]["soundness"]
    ok = len(recs) == 200 and sound == 1.0
    per_n = ", ".join(f"n={n}: {v['hit_rate']:.2f}" for n, v in s["per_n"].items())
    report(6, ok, f"soundness {sound:.0%} over {len(recs)} planted ciphertexts; hit rate "
                  f"{s['overall']['hit_rate']:.3f} ({per_n}); full preimage set recovered in "
                  f"{s['overall']['complete_rate']:.3f}; {time.perf_counter() - t0:.1f} s")
    assert ok


@pytest.mark.slow
def test_criterion_7_complexity_slope():
    t0 = time.perf_counter()
    rows = bench(8, 32, trials=1)
    elapsed = time.perf_counter() - t0
    ns = [r["n"] for r in rows]
    mults = [r["mults"] for r in rows]
    slope = loglog_slope(ns, mults)
    w3 = loglog_slope(ns, [r["W"] ** 3 for r in rows])
    wall = loglog_slope(ns, [r["wall_ms"] for r in rows])
    monotone = all(a < b for a, b in zip(mults, mults[1:]))
    ok = 5.7 <= slope <= 6.3 and elapsed < 600 and monotone
    report(7, ok, f"log-log slope of K-multiplications over n=8..32 is {slope:.3f} (window [5.7, 6.3]; "
                  f"W^3 alone {w3:.3f}); wall-time slope {wall:.2f}; {elapsed:.0f} s")
    assert ok
