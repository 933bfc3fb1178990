"""Table of A_n, B_n, certificates and first positive zeros of T_n."""

import argparse
from fractions import Fraction

from rittlab.bessel import bessel_certify, bessel_split
from rittlab.errors import CertificationFailed
from rittlab.exppoly import poly_str
from rittlab.zeros import Rectangle, isolate_zeros


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=-4)
    ap.add_argument("--hi", type=int, default=4)
    ap.add_argument("--zeros", action="store_true", help="isolate zeros in [1/2, 12] x [-1, 1]")
    args = ap.parse_args()
    box = Rectangle(Fraction(1, 2), Fraction(12), Fraction(-1), Fraction(1))
    for n in range(args.lo, args.hi + 1):
        s = bessel_split(n)
        try:
            c = bessel_certify(n)
            cert = f"{c.kind} p={c.witness['prime']} ({c.witness['side']})"
        except CertificationFailed as exc:
            cert = f"none: {exc}"
        print(f"n={n:3d}  A={poly_str(s.A)}  B={poly_str(s.B)}")
        print(f"       certificate: {cert}")
        if args.zeros:
            zs = isolate_zeros(s.T, box)
            print("       zeros:", ", ".join(f"{z.approx.real:.10f} (m={z.multiplicity})" for z in zs))


if __name__ == "__main__":
    main()
