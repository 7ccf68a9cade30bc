"""Regularized determinants where they exist, with the scaling law.

    python3 scripts/positive_controls.py
"""

import math

from zetareg.specreg import CircleLaplacian, Explicit, PowerFamily, regularized_det, scaling_check

CONTROLS = [
    ("lambda_n = n", PowerFamily(1), math.sqrt(2 * math.pi)),
    ("lambda_n = n^2", PowerFamily(2), 2 * math.pi),
    ("circle, n != 0", CircleLaplacian(), 4 * math.pi**2),
    ("explicit 2, 3, 3", Explicit(((2.0, 1), (3.0, 2))), 18.0),
]


def main():
    print(f"{'spectrum':18s} {'zeta(0)':>10s} {'zeta_prime(0)':>16s} {'det':>18s} {'rel err':>9s} {'FD gap':>9s}")
    for name, spec, want in CONTROLS:
        r = regularized_det(spec)
        print(
            f"{name:18s} {r.zeta_at_zero:10.6f} {r.zeta_prime_at_zero:16.12f} {r.det:18.12f}"
            f" {abs(r.det - want) / want:9.1e} {abs(r.zeta_prime_at_zero - r.fd_zeta_prime_at_zero):9.1e}"
        )
    print("\nscaling: d/ds zeta_{mu^2 D}(0) against -ln(mu^2) zeta_D(0) + zeta_D'(0)")
    for name, spec, _ in CONTROLS[:3]:
        for mu in (0.5, 2.0, math.e):
            rep = scaling_check(spec, mu)
            print(f"  {name:18s} mu = {mu:8.5f}   lhs = {rep.lhs: .12f}   err = {rep.abs_err:.1e}")


if __name__ == "__main__":
    main()
