#!/usr/bin/env python3
"""Checks the cross-validation median score improvements on the 41-trial
ulcer dataset, which is not bundled with this repository (it appears in
Efron 1996, Table 1). Supply your own transcription as a CSV file with
header id,y1,n1,y2,n2 where group 1 is Treatment and group 2 is Control,
and y counts occurrences (recurrent bleeding).

Usage: check_ulcer_medians.py <tables.csv> [--cli PATH] [--tol 0.1]

Expected medians of 100*(S_h - S_0): 0.54 (h=1) and 0.68 (h=2), checked
within +/- tol percentage points.
"""

import argparse
import json
import statistics
import subprocess
import sys


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("tables")
    ap.add_argument("--cli", default="build/imprior")
    ap.add_argument("--tol", type=float, default=0.1)
    args = ap.parse_args()

    proc = subprocess.run(
        [args.cli, "crossval", "--tables", args.tables, "--format", "json"],
        capture_output=True, text=True, check=True)
    rows = json.loads(proc.stdout)["results"]
    if len(rows) != 41:
        print(f"warning: expected 41 tables, found {len(rows)}")
    med1 = statistics.median(r["delta1_pct"] for r in rows)
    med2 = statistics.median(r["delta2_pct"] for r in rows)
    ok1 = abs(med1 - 0.54) <= args.tol
    ok2 = abs(med2 - 0.68) <= args.tol
    print(f"median improvement h=1: {med1:+.3f}%  (expected +0.54 +/- {args.tol})"
          f"  -> {'PASS' if ok1 else 'FAIL'}")
    print(f"median improvement h=2: {med2:+.3f}%  (expected +0.68 +/- {args.tol})"
          f"  -> {'PASS' if ok2 else 'FAIL'}")
    return 0 if (ok1 and ok2) else 1


if __name__ == "__main__":
    sys.exit(main())
