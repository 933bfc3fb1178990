"""Run the zero-structure evidence reports on the shipped corpus."""

import argparse
import json
from fractions import Fraction

from rittlab.corpus import irreducible_pool, zero_pairs
from rittlab.zeros import Rectangle, evidence_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--half", type=int, default=5, help="box is [-h, h] x [-h, h]")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    h = Fraction(args.half)
    box = Rectangle(-h, h, -h, h)
    reports = [evidence_report("common_zeros_vs_gcd", [f1, f2], box) for f1, f2, _ in zero_pairs()]
    reports += [evidence_report("simple_zeros", [f], box) for f in irreducible_pool()]
    for j, r in enumerate(reports):
        if args.json:
            print(json.dumps(r.as_dict()))
        else:
            print(f"{j:2d} {r.kind:22s} {r.status}  zeros={len(r.items)}")
    print(f"{sum(r.passed for r in reports)}/{len(reports)} PASS")


if __name__ == "__main__":
    main()
