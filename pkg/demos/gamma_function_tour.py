#!/usr/bin/env python3
"""A tour of the hyperbolic gamma function.

Evaluates both representations (infinite product and contour integral),
shows their agreement, locates poles and zeros, and demonstrates the
homogeneity and asymptotic-cone normalizations.
"""

import mpmath

from ratideal import (
    OmegaPair,
    classify_point,
    cone_asymptotics_check,
    gamma_h,
    gamma_h_integral,
    gamma_h_product,
    working_dps,
)


def main():
    with working_dps(38):
        w = OmegaPair(mpmath.exp(1j * mpmath.pi / 6), mpmath.exp(-1j * mpmath.pi / 6))
        print("period pair:", mpmath.nstr(w.omega1, 8), mpmath.nstr(w.omega2, 8))
        print("|q| =", mpmath.nstr(abs(w.q), 8), " sqrt(w1 w2) =",
              mpmath.nstr(w.sqrt_product, 8))
        print()

        u = mpmath.mpc("0.4", "0.3")
        prod = gamma_h_product(u, w)
        integ = gamma_h_integral(u, w)
        print(f"value at u = {mpmath.nstr(u, 4)}")
        print("  product  :", mpmath.nstr(prod.value, 25))
        print("  integral :", mpmath.nstr(integ.value, 25))
        print("  |diff|   :", mpmath.nstr(abs(prod.value - integ.value), 3))
        print()

        center = w.omega_sum / 2
        print("self-dual center value (should be exactly 1):",
              mpmath.nstr(gamma_h(center, w).value, 20))
        print()

        print("pole/zero landscape:")
        for label, point in [("origin", mpmath.mpc(0)),
                             ("w1 + w2", w.omega_sum),
                             ("-2 w1 - w2", -2 * w.omega1 - w.omega2),
                             ("center", center)]:
            spot = classify_point(point, w)
            where = f"({spot.n},{spot.m})" if spot.kind != "regular" else ""
            print(f"  {label:>12}: {spot.kind} {where}")
        print()

        lam = mpmath.mpc(1, "0.3")
        w_scaled = OmegaPair(lam * w.omega1, lam * w.omega2)
        a = gamma_h(u, w).value
        b = gamma_h(lam * u, w_scaled).value
        print("homogeneity |g(l u; l w) - g(u; w)| =", mpmath.nstr(abs(a - b), 3))
        print()

        # the pi/8 pair keeps the rays clear of the period lattice, where
        # the product form degenerates to 0/0
        w8 = OmegaPair(mpmath.exp(1j * mpmath.pi / 8), mpmath.exp(-1j * mpmath.pi / 8))
        for direction, name in [(1j, "upper"), (-1j, "lower")]:
            rep = cone_asymptotics_check(direction, [5, 10, 20], w8)
            devs = ", ".join(mpmath.nstr(d, 3) for d in rep.deviations)
            print(f"cone {rep.cone} ({name} ray): normalized deviations -> [{devs}]")


if __name__ == "__main__":
    main()
