"""Zeta functions of curves over finite fields, prime zeta functions and
zeta-regularized determinants."""

from .curves import count_points, curve_make, parse_curve, prime_count_table
from .dirichlet import dirichlet_l, hurwitz_zeta, riemann_zeta, zeta_derivative
from .errors import DomainError, NumericalError, ParseError, ZetaRegError
from .ffield import ff_make, irreducible_count
from .lfunc import LPolynomial, check_weil_rh, lpoly_for_curve, lpoly_from_counts
from .primezeta import (
    boundary_evidence_report,
    prime_zeta_derivative,
    prime_zeta_direct,
    prime_zeta_for_curve,
    prime_zeta_mobius,
    prime_zeta_progression,
    prime_zeta_rational,
    singularity_enumerate,
)
from .specreg import (
    CircleLaplacian,
    CurvePrimes,
    Explicit,
    PowerFamily,
    ProgressionPrimes,
    RationalPrimes,
    regularized_det,
    scaling_check,
    spectral_zeta,
    w_zero,
)
from .zetacurve import curve_zeta, zeta_eval

__version__ = "0.1.0"
