"""Attack planted ciphertexts end to end and report soundness, hit rate and r."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict

from hfe_alias.attack import PlantedConfig, planted_summary, planted_trials


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--d", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jsonl", help="write one record per trial here")
    a = ap.parse_args()
    cfg = PlantedConfig(tuple(a.n), a.trials, 2, a.d, a.seed)
    recs = planted_trials(cfg)
    if a.jsonl:
        with open(a.jsonl, "w") as fh:
            for r in recs:
                fh.write(json.dumps(asdict(r)) + "\n")
    print(json.dumps({"config": asdict(cfg), **planted_summary(recs)}, indent=1))


if __name__ == "__main__":
    main()
