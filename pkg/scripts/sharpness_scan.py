"""Ratios |Delta| / M^(2d-3) and |Delta| / M^(2d-4) along the antipodal family.

    python3 scripts/sharpness_scan.py --k 2 --d 3 --decades 6
"""

import argparse
import csv
import sys

from mahler_gauge.energy import sharpness_family, sharpness_ratios


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=2, help="ambient dimension")
    p.add_argument("--d", type=int, default=3, help="number of points")
    p.add_argument("--r", default="1", help="pairing radius")
    p.add_argument("--decades", type=int, default=6, help="R = 10, 100, ..., 10^decades")
    p.add_argument("--csv", default=None, help="also write the table here")
    args = p.parse_args(argv)

    bound = (2 * int(args.r)) ** (args.d * (args.d - 1))
    rows = []
    prev = None
    for e in range(1, args.decades + 1):
        sharp, weak = sharpness_ratios(sharpness_family(args.k, args.d, args.r, 10**e))
        growth = float(weak / prev) if prev is not None else float("nan")
        rows.append((f"1e{e}", float(sharp), float(weak), growth))
        prev = weak
    print(f"k={args.k} d={args.d} r={args.r}; upper bound on the first ratio: {bound}")
    print(f"{'R':>6} {'|D|/M^(2d-3)':>16} {'|D|/M^(2d-4)':>16} {'growth':>10}")
    for R, s, w, g in rows:
        print(f"{R:>6} {s:16.10f} {w:16.6e} {g:10.2f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["R", "ratio_2d_3", "ratio_2d_4", "decade_growth"])
            out.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
