"""Compare the series (coalescent) and direct branches near eps*x = 1.

    python scripts/branch_overlap.py [--eps 2] [--lam 100]

For each |alpha| in a decade grid the script prints the relative difference
between the two branches for the saddle parameter alpha, the Bleistein
coefficients A_0, A_1, B_0, B_1, and the final value (coalescent sum against
the regrouped form).  The direct Bleistein formula loses about
eps_mach/|alpha|**3 in B_1, which is why the coalescent branch is used for
|alpha| below its switch.
"""
import argparse

import numpy as np

from hyperasym.bleistein import bleistein_AB
from hyperasym.errors import ContractError
from hyperasym.engine import eval_coalescent, eval_theorem2
from hyperasym.olver import pk_coeffs
from hyperasym.saddle import ProblemParams, alpha_param


def x_for_alpha(make, target):
    lo, hi = 1e-6, 1.0 - 1e-6
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if alpha_param(make(mid)).alpha > target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--b", type=float, default=1.5)
    ap.add_argument("--c", type=float, default=1.0)
    ap.add_argument("--eps", type=float, default=2.0)
    ap.add_argument("--lam", type=float, default=100.0)
    args = ap.parse_args(argv)

    def make(x):
        return ProblemParams(args.a, args.b, args.c, args.eps, x)

    print(f"{'alpha':>9} {'saddle':>9} {'A0':>9} {'A1':>9} {'B0':>9} {'B1':>9} {'value':>9}")
    for mag in (1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4):
        for sign in (1.0, -1.0):
            p = make(x_for_alpha(make, sign * mag))
            ser, dirc = alpha_param(p, delta_switch=1.0), alpha_param(p, delta_switch=0.0)
            s = alpha_param(p)
            pk = pk_coeffs(p, s, K=24)
            d = bleistein_AB(p, s, pk, alpha_switch=0.0)
            c = bleistein_AB(p, s, pk, alpha_switch=1.0)
            rel = np.abs(np.array(d.A + d.B) / np.array(c.A + c.B) - 1.0)
            sd = abs(ser.alpha / dirc.alpha - 1.0)
            try:
                v = eval_coalescent(p, args.lam, 7).value / eval_theorem2(p, args.lam, 3, tail_depth=12).value
                vs = f"{abs(v - 1.0):9.1e}"
            except ContractError:  # outside the coalescent window
                vs = f"{'-':>9}"
            print(f"{s.alpha:9.1e} {sd:9.1e} {rel[0]:9.1e} {rel[1]:9.1e} {rel[2]:9.1e} {rel[3]:9.1e} {vs}")


if __name__ == "__main__":
    main()
