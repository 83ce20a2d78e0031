"""Small generators from a sequence of translated boxes, one row per T.

    python3 scripts/generator_sequence.py "x^4+x^3+x^2+x+1" --disc 125 --T 10 20 30 40 50
"""

import argparse
import json
import sys
from fractions import Fraction

from mahler_gauge.numfield import build_order, find_generators, find_generators_real_variant


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("poly", help="monic irreducible defining polynomial")
    p.add_argument("--disc", type=int, default=None, help="field discriminant, if known")
    p.add_argument("--T", nargs="+", default=["10", "20", "30", "40", "50"])
    p.add_argument("--c", default="auto")
    p.add_argument("--real", action="store_true", help="put the far coordinate on a real embedding")
    p.add_argument("--json", default=None, help="write the full records here")
    args = p.parse_args(argv)

    order = build_order(args.poly, field_disc=args.disc)
    c = args.c if args.c == "auto" else Fraction(args.c)
    search = find_generators_real_variant if args.real or order.s == 0 else find_generators
    recs = search(order, [Fraction(t) for t in args.T], c)

    print(f"field {order.poly}, signature {order.signature}, lattice: {order.lattice_description}")
    print(f"c = {recs[0].c}, c_K = {recs[0].c_K}")
    print(f"{'T':>6} {'alpha (basis coords)':>24} {'M':>14} {'|disc f|':>14} {'ratio':>12} verified")
    for rec in recs:
        print(
            f"{str(rec.T):>6} {str(list(rec.alpha_coords)):>24} {float(rec.M):14.6g} {abs(rec.disc_f):14d} "
            f"{float(rec.ratio):12.6g} {rec.verified}"
        )
        for note in rec.notices:
            print(f"       note: {note}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in recs], fh, sort_keys=True, indent=1)
    return 0 if all(r.verified is True for r in recs) else 1


if __name__ == "__main__":
    sys.exit(main())
