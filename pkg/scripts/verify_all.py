#!/usr/bin/env python3
"""Run every claim in the manifest up to a length bound and time each suite.

    python3 scripts/verify_all.py            # n <= 9
    python3 scripts/verify_all.py --n-max 10
"""

import argparse
import sys
import time

from permstat.claims import SUITES, DEFAULT_N_MAX, Verifier, claims_for


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    args = ap.parse_args(argv)

    verifier = Verifier(args.n_max)  # shared, so class members are enumerated once
    failures = 0
    for suite in SUITES:
        if suite == "all":
            continue
        t0 = time.perf_counter()
        results = [verifier.run(c) for c in claims_for(suite)]
        dt = time.perf_counter() - t0
        bad = [r for r in results if not r.passed]
        failures += len(bad)
        print(f"== {suite}: {len(results) - len(bad)}/{len(results)} ({dt:.2f}s)")
        for r in results:
            print("  " + r.line())
            if not r.passed and r.counterexample is not None:
                print(f"    counterexample: {r.counterexample}")
    print(f"# {failures} failure(s) for n <= {args.n_max}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
