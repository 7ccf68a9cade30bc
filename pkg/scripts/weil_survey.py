"""Survey of L-polynomials: coefficients, class numbers and root moduli.

    python3 scripts/weil_survey.py [--curves FILE]

FILE holds one curve description per line; a built-in list is used otherwise.
"""

import argparse
import math

from zetareg.curves import parse_curve
from zetareg.lfunc import check_functional_equation, check_weil_rh, class_number, lpoly_for_curve

DEFAULT = [
    "p1 q=2",
    "ell p=2 a3=1",
    "ell p=2 a=2 a1=1 a6=w",
    "ell p=7 a4=1 a6=3",
    "hyp p=5 f=x^5+x+1",
    "hyp p=2 f=x^5 h=1",
    "hyp p=3 f=x^4+x+2",
    "hyp p=3 a=2 f=x^6+w*x+1",
    "hyp p=7 f=x^7+3*x+1",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curves")
    args = ap.parse_args()
    texts = DEFAULT
    if args.curves:
        with open(args.curves) as fh:
            texts = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]

    print(f"{'curve':32s} {'q':>3s} {'g':>2s} {'h':>6s} {'sym':>4s} {'max dev':>9s}  coeffs")
    for text in texts:
        L = lpoly_for_curve(parse_curve(text))
        rep = check_weil_rh(L)
        print(
            f"{text:32s} {L.q:3d} {L.g:2d} {class_number(L):6d} {str(check_functional_equation(L)):>4s}"
            f" {rep.max_deviation:9.2e}  {list(L.coeffs)}"
        )
        if L.g:
            args_ = sorted(round(math.atan2(r.imag, r.real) / math.pi, 6) for r in L.roots)
            print(f"{'':32s} root angles / pi: {args_}")


if __name__ == "__main__":
    main()
