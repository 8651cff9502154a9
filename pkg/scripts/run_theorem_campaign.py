#!/usr/bin/env python3
"""Exhaustive monotonicity campaign over every registered theorem.

Enumerates all functions with values in {-1, -1/2, 0, 1/2, 1} on length-6
grids (shorter only where a theorem needs less), three orders per
admissible range, and reports counterexample counts and nonvacuity
witnesses.  Expected outcome: zero counterexamples everywhere.

Usage:
    python scripts/run_theorem_campaign.py [length]
"""

import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from discfrac.monotone import THEOREMS, min_live_length, search_campaign


def main() -> int:
    grid_length = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    values = [Fraction(k, 2) for k in range(-2, 3)]
    total = 0
    t0 = time.perf_counter()
    for tid in THEOREMS:
        length = max(grid_length, min_live_length(tid))
        results = search_campaign(tid, length, values, None, "exhaustive",
                                  budget=2_000_000, seed=0)
        ces = sum(len(r.counterexamples) for r in results)
        total += ces
        witnesses = ", ".join(
            "none" if r.witness is None else f"margin={r.witness_margin}"
            for r in results
        )
        status = "pass" if ces == 0 else "FAIL"
        print(f"{tid:10s} {status}  instances={sum(r.instances for r in results)}  "
              f"counterexamples={ces}  witnesses: {witnesses}")
    print(f"\ntotal counterexamples: {total}  "
          f"elapsed: {time.perf_counter() - t0:.1f}s")
    return 1 if total else 0


if __name__ == "__main__":
    sys.exit(main())
