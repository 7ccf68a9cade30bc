"""Exception hierarchy.

Three families map onto the CLI exit codes: parse errors (2), domain
errors (3) and numerical non-convergence (4).
"""


class ZetaRegError(Exception):
    """Base class for all library errors."""

    code = "error"


class ParseError(ZetaRegError, ValueError):
    code = "parse_error"


class DomainError(ZetaRegError, ValueError):
    code = "domain_error"


class NumericalError(ZetaRegError, ArithmeticError):
    code = "numerical_error"


class NonPrime(DomainError):
    code = "non_prime"


class DegreeOutOfRange(DomainError):
    code = "degree_out_of_range"


class BudgetExceeded(DomainError):
    code = "budget_exceeded"


class MixedFields(DomainError):
    code = "mixed_fields"


class DivisionByZero(DomainError, ZeroDivisionError):
    code = "division_by_zero"


class SingularCurve(DomainError):
    code = "singular_curve"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedModel(DomainError):
    code = "unsupported_model"


class NonIntegralPrimeCount(DomainError):
    code = "non_integral_prime_count"


class NonIntegralCoefficient(DomainError):
    code = "non_integral_coefficient"


class GenusMismatch(DomainError):
    code = "genus_mismatch"


class NearPole(DomainError):
    code = "near_pole"

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class NearSingularity(DomainError):
    code = "near_singularity"

    def __init__(self, message, s=None, k=None, kind=None):
        super().__init__(message)
        self.s = s
        self.k = k
        self.kind = kind


class UnsupportedModulus(DomainError):
    code = "unsupported_modulus"


class TrivialCharacter(DomainError):
    code = "trivial_character"


class PoleAtOne(DomainError):
    code = "pole_at_one"


class RootFindingFailed(NumericalError):
    code = "root_finding_failed"


class NonConvergent(NumericalError):
    code = "non_convergent"
