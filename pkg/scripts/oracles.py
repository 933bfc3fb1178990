"""Independent reference values frozen into the test-suite.

Nothing here imports rittlab: roots come from bisection with mpmath,
series from sympy, Bessel values from mpmath.besselj.
"""

import mpmath
import sympy as sp

mpmath.mp.dps = 40


def bisect(f, a, b, tol=mpmath.mpf(10) ** -30):
    fa = f(a)
    while b - a > tol:
        m = (a + b) / 2
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a + b) / 2


def main():
    g = lambda x: mpmath.sin(x) - x * mpmath.cos(x)
    print("tan x = x roots:", [mpmath.nstr(bisect(g, mpmath.mpf(a), mpmath.mpf(b)), 15)
                               for a, b in ((4, 4.6), (7.6, 7.8))])
    print("W(1):", mpmath.nstr(mpmath.lambertw(1).real, 15))
    print("x e^x = 2 real root:", mpmath.nstr(mpmath.lambertw(2).real, 15))
    x = sp.symbols("x")
    s = sp.series(sp.cos(x) ** 2, x, 0, 12).removeO()
    print("cos^2 n!-coefficients:", [s.coeff(x, n) * sp.factorial(n) for n in range(12)])
    b = sp.series(sp.sqrt(sp.cos(x) ** 2 + 0 * x), x, 0, 12).removeO()
    print("sqrt(cos^2) n!-coefficients:", [sp.simplify(b.coeff(x, n) * sp.factorial(n)) for n in range(12)])
    for n in (1, 2, -2, 3):
        nu = n + mpmath.mpf(1) / 2
        v = mpmath.sqrt(mpmath.pi / 2) * mpmath.mpf("1.3") ** abs(nu) * mpmath.besselj(nu, mpmath.mpf("1.3"))
        print(f"T_{n}(1.3) via besselj:", mpmath.nstr(v, 20))
    z = sp.exp(2 * sp.pi * sp.I / 12)
    y = sp.symbols("y")
    for N in (2, 3, 4, 6):
        prod = sp.Poly(sp.prod([y - sp.exp(2 * sp.pi * sp.I * k / N) for k in range(1, N + 1)]), y)
        cs = [sp.nsimplify(sp.N(c, 30), tolerance=1e-25) for c in prod.all_coeffs()]
        print(f"prod_(k<=N) (y - e^(2 pi i k/{N})) coefficients:", cs)
    print("zeta_12 minimal polynomial:", sp.minimal_polynomial(z, y))


if __name__ == "__main__":
    main()
