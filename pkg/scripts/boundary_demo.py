"""Singularities of the prime zeta function piling up on Re(s) = 0.

    python3 scripts/boundary_demo.py [--curve TEXT] [--kmax N]

Prints the boundary report for a shrinking sigma schedule, the real-axis
blow-up near s = 1/2, and the failure record returned when a determinant
is requested for the spectrum q^deg(P).
"""

import argparse
import json

from zetareg.curves import parse_curve
from zetareg.primezeta import boundary_evidence_report, prime_zeta_for_curve, prime_zeta_mobius
from zetareg.specreg import CurvePrimes, regularized_det

SIGMAS = [0.5, 0.2, 0.1, 0.05, 0.02, 0.01]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="ell p=2 a3=1")
    ap.add_argument("--kmax", type=int, default=200)
    ap.add_argument("--t-range", nargs=2, type=float, default=(-5.0, 5.0))
    args = ap.parse_args()

    pz = prime_zeta_for_curve(parse_curve(args.curve))
    rep = boundary_evidence_report(pz, SIGMAS, tuple(args.t_range), args.kmax)
    print(f"curve: {args.curve}   window Im(s) in {tuple(args.t_range)}   k <= {args.kmax}")
    print(f"{'sigma':>7s} {'count':>6s} {'min Re':>10s} {'k':>4s}")
    for r in rep.rows:
        print(f"{r.sigma:7.3f} {r.count:6d} {r.min_re:10.6f} {r.argmin_k:4d}")
    print("strictly increasing:", rep.strictly_increasing)

    print("\nP(1/2 + d) on the real axis")
    for d in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5):
        print(f"  d = {d:7.0e}   P = {prime_zeta_mobius(pz, 0.5 + d).real: .10f}")

    print("\ndeterminant request:")
    print(json.dumps(regularized_det(CurvePrimes(pz)).to_dict(), indent=2))


if __name__ == "__main__":
    main()
