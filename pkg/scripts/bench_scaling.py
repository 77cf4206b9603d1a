"""Time alias recovery for n in a range and fit log-log slopes."""

from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass

from hfe_alias.cli import bench, loglog_slope


@dataclass
class BenchConfig:
    n_min: int = 8
    n_max: int = 32
    trials: int = 1
    d: int = 8
    seed: int = 0
    out_csv: str = "bench.csv"


def run(cfg: BenchConfig) -> None:
    rows = bench(cfg.n_min, cfg.n_max, cfg.trials, cfg.d, cfg.seed)
    with open(cfg.out_csv, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["n", "W", "wall_ms", "mults"])
        w.writeheader()
        w.writerows(rows)
    ns = [r["n"] for r in rows]
    for key in ("mults", "wall_ms"):
        print(f"slope({key}) = {loglog_slope(ns, [r[key] for r in rows]):.3f}")
    print(f"slope(W^3) = {loglog_slope(ns, [r['W'] ** 3 for r in rows]):.3f}")
    # the local slope climbs toward 6 as lower-order terms fade
    for lo in range(cfg.n_min, cfg.n_max - 7, 4):
        sub = [r for r in rows if lo <= r["n"] <= lo + 8]
        print(f"  n={lo}..{lo + 8}: slope(mults) = {loglog_slope([r['n'] for r in sub], [r['mults'] for r in sub]):.3f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=32)
    ap.add_argument("--trials", type=int, default=1)
    ap.add_argument("--out-csv", default="bench.csv")
    a = ap.parse_args()
    run(BenchConfig(a.n_min, a.n_max, a.trials, out_csv=a.out_csv))


if __name__ == "__main__":
    main()
