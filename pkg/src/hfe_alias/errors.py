"""Exception types shared across the package."""


class HfeAliasError(Exception):
    """Base class for domain errors."""


class FieldMismatch(HfeAliasError, ValueError):
    pass


class NotIrreducible(HfeAliasError, ValueError):
    pass


class SingularMatrix(HfeAliasError, ArithmeticError):
    pass


class Inconsistent(HfeAliasError, ArithmeticError):
    """A linear system has no solution."""


class ShapeViolation(HfeAliasError, ValueError):
    """A polynomial has an exponent outside the admissible q-power shape."""


class NotAlternating(HfeAliasError, ValueError):
    pass


class RankDeficient(HfeAliasError, ArithmeticError):
    """Interpolation could not reach full rank even with every field point."""


class VerificationFailed(HfeAliasError, AssertionError):
    """An internal consistency check broke; indicates a bug or malformed key."""


class DegreeGuardExceeded(HfeAliasError, ValueError):
    pass


# Raised by the attacker-side solver; same condition, name used in reports.
DegreeTooHigh = DegreeGuardExceeded


class NotInImage(HfeAliasError):
    """A ciphertext has no preimage under the public map."""
