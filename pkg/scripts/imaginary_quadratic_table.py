"""M(O_K) against |Delta_K| / 4 for the tabulated imaginary quadratic fields.

Each value is computed by coefficient enumeration and by the element scan.

    python3 scripts/imaginary_quadratic_table.py
"""

import argparse
import sys

from mahler_gauge.numfield import IMAGINARY_QUADRATIC, compute_M_OK, imaginary_quadratic_order, min_measure_by_elements


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--discs", type=int, nargs="+", default=sorted(IMAGINARY_QUADRATIC, reverse=True))
    args = p.parse_args(argv)

    print(f"{'disc_K':>7} {'M(O_K)':>7} {'elements':>9} {'|disc|/4':>9} {'equality':>9}  witness")
    ok = True
    for disc in args.discs:
        order = imaginary_quadratic_order(disc)
        T_max = max(2, abs(disc) // 4 + 1)
        a = compute_M_OK(order, T_max)
        b = min_measure_by_elements(order, T_max)
        m, m2 = a.value.exact, b.value.exact
        quarter = abs(disc) / 4
        ok = ok and m == m2 and m >= quarter
        print(f"{disc:>7} {str(m):>7} {str(m2):>9} {quarter:>9} {str(m == quarter):>9}  {a.witness}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
