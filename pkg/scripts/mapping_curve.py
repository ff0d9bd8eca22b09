"""Tabulate the confidence level matching each minimum support level k as CSV."""

import argparse
import csv
import sys

import numpy as np

from supcal import MinFamily, min_support_to_ci_level


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--k-min", type=float, default=1e-4)
    parser.add_argument("--out", help="CSV path (default stdout)")
    args = parser.parse_args()

    ks = np.logspace(np.log10(args.k_min), 0, args.points)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k"] + [f.value for f in MinFamily])
    for k in ks:
        writer.writerow([f"{k:.10g}"] + [f"{min_support_to_ci_level(k, f):.10g}" for f in MinFamily])
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
