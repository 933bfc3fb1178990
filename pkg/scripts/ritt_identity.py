"""Check prod_{k=1..N} (e^{x/N} - zeta_N^k) = e^x - 1 over Q(zeta_12) and factor the result."""

import argparse
import time
from fractions import Fraction

from rittlab.exppoly import ExpPoly
from rittlab.numberfield import field_create
from rittlab.ritt import ritt_factor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, nargs="+", default=[2, 3, 4, 6])
    args = ap.parse_args()
    K = field_create([1, 0, -1, 0, 1], (Fraction(4, 5), Fraction(19, 20), Fraction(2, 5), Fraction(3, 5)))
    t = K.gen()
    one = ExpPoly.const(K, 1)
    target = ExpPoly.exp(K, K(1)) - one
    for N in args.N:
        if 12 % N:
            raise SystemExit(f"N={N} does not divide 12; zeta_N is not a power of t")
        t0 = time.perf_counter()
        prod = one
        for k in range(1, N + 1):
            prod = prod * (ExpPoly.exp(K, K(Fraction(1, N))) - ExpPoly.const(K, t ** (12 * k // N)))
        ok = prod == target
        print(f"N={N}: product == exp(x) - 1: {ok}  ({time.perf_counter() - t0:.3f}s)")
    rf = ritt_factor(target)
    s = rf.simples[0]
    print(f"ritt_factor(exp(x) - 1): unit {rf.unit}, simple with beta={s.beta}, omega={s.omega}")


if __name__ == "__main__":
    main()
