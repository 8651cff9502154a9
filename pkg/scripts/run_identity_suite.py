#!/usr/bin/env python3
"""Run the full identity suite on both backends and print a summary table.

Usage:
    python scripts/run_identity_suite.py [instances] [seed]
"""

import sys
import time

sys.path.insert(0, "src")

from discfrac.backends import FLOATING, RATIONAL
from discfrac.dualities import run_identity_suite


def main() -> int:
    instances = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    failures = 0
    for backend in (RATIONAL, FLOATING):
        t0 = time.perf_counter()
        results = run_identity_suite(instances=instances, seed=seed, backend=backend)
        elapsed = time.perf_counter() - t0
        print(f"\n== backend: {backend.name} ({instances} instances/id, "
              f"{elapsed:.1f}s) ==")
        for r in results:
            status = "pass" if r.passed else "FAIL"
            print(f"  {r.identity.value:20s} {status}  max_residual={r.max_abs_residual}")
            failures += 0 if r.passed else 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
