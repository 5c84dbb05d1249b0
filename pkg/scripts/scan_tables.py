#!/usr/bin/env python3
"""Scan all registry statistics over the six length-3 classes and compare the
foze2 and makl/bast rows against the hand-listed ledgers.

Prints the foze2 block, then any ledger row the scan did not find and any
unannotated scan row missing from the ledgers.
"""

import argparse
import time

from permstat.claims import claims_for
from permstat.distributions import scan_quadruples


def ledger(suite):
    return [(c.stats_a[0], c.stats_b[0], c.class_a, c.class_b) for c in claims_for(suite)]


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv", metavar="PATH", help="also write the full report as CSV")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    report = scan_quadruples(n_max=args.n_max, workers=args.workers)
    print(f"{len(report.quadruples)} quadruples in {time.perf_counter() - t0:.1f}s")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())

    t1, t2 = ledger("table1"), ledger("table2")
    print("\nfoze2 block:")
    for q in report.quadruples:
        if "foze2" in (q.st1, q.st2):
            known = any(q.matches(*row) for row in t1)
            print(f"  {q}  {'ledger' if known else q.annotation or 'NEW'}")

    missing = [row for row in t1 + t2 if report.find(*row) is None]
    print(f"\nledger rows not found: {missing or 'none'}")

    watched = {s for row in t1 + t2 for s in row[:2]}
    extra = [
        q for q in report.quadruples
        if not q.annotation and {q.st1, q.st2} <= watched and q.st1 != q.st2
        and not any(q.matches(*row) for row in t1 + t2)
    ]
    print(f"unannotated rows among ledger statistics but outside the ledgers: {len(extra)}")
    for q in extra:
        print(f"  {q}")


if __name__ == "__main__":
    main()
