"""Sample the two triangle-perimeter lemmas and report violations and timing.

    python3 scripts/lemma_oracles.py --samples 100000 --seed 0
"""
from __future__ import annotations

import argparse
import json
import time

from elratio.metrics import lemma_oracle


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    failed = False
    for which in ("lemma2", "lemma3"):
        start = time.perf_counter()
        rep = lemma_oracle(which, a.samples, seed=a.seed)
        out = {"lemma": which, "violations": len(rep.violations), "seconds": round(time.perf_counter() - start, 2)}
        print(json.dumps({**out, **rep.stats}))
        failed |= not rep.ok
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
