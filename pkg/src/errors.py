"""Exception hierarchy shared by all modules."""


class RealizerError(Exception):
    """Base class for every error raised by this package."""


class ParseError(RealizerError, ValueError):
    """Malformed text, JSON or CSV input."""


class OrdinalParseError(ParseError):
    """An ordinal string does not follow the `w^{..}*n + ...` syntax."""


class OrdinalDomainError(RealizerError, ArithmeticError):
    """An ordinal operation is undefined for its argument."""


class EndSpaceError(RealizerError, ValueError):
    """Base class for end-space expression errors."""


class NotSelfSimilarError(EndSpaceError):
    """The operation requires a self-similar end space."""


class UnsupportedError(EndSpaceError):
    """The expression lies outside what the grammar can decide."""


class GroupTableError(RealizerError, ValueError):
    """Base class for group-axiom violations in a Cayley table."""


class NotLatinError(GroupTableError):
    """A row or column of the table is not a permutation."""

    def __init__(self, axis: str, index: int) -> None:
        self.axis = axis
        self.index = index
        super().__init__(f"Table is not a Latin square: {axis} {index} repeats an entry")


class NoIdentityError(GroupTableError):
    """No element acts as a two-sided identity."""

    def __init__(self) -> None:
        super().__init__("Table has no two-sided identity element")


class NotAssociativeError(GroupTableError):
    """Associativity fails on a specific triple."""

    def __init__(self, g: str, h: str, k: str) -> None:
        self.triple = (g, h, k)
        super().__init__(f"Table is not associative: ({g}*{h})*{k} != {g}*({h}*{k})")


class DescriptorError(RealizerError, ValueError):
    """A virtually cyclic group descriptor is inconsistent."""


class BuildError(RealizerError, ValueError):
    """Base class for complex-builder precondition failures."""


class TruncationTooSmallError(BuildError):
    """Truncation depth or ball radius below 1."""


class AlphaNotSuccessorError(BuildError):
    """The two-ended construction needs a successor rank exponent."""


class NotTwoEndedCertifiedError(BuildError):
    """The group descriptor carries no two-ended certificate."""


class DegreeNotTwoError(BuildError):
    """The two-ended construction needs Cantor-Bendixson degree 2."""


class UnknownRecipeError(RealizerError, ValueError):
    """A complex carries no builder recipe to evaluate symbolically."""


class ActionNotFreeError(RealizerError, ValueError):
    """Some non-identity deck element fixes a piece."""


class ActionNotDecorationPreservingError(RealizerError, ValueError):
    """The deck action breaks a pairing, a length or a twist."""


class NonPositiveLengthError(RealizerError, ValueError):
    """A geodesic length must be strictly positive."""


class NonPositiveCuffError(NonPositiveLengthError):
    """A pants cuff length must be strictly positive."""


class UnboundedLengthsError(RealizerError, ValueError):
    """Some lengths of a complex reach its sup bound."""

    def __init__(self, offenders: list[str], bound: float) -> None:
        self.offenders = offenders
        self.bound = bound
        listed = ", ".join(offenders[:5])
        more = f" (+{len(offenders) - 5} more)" if len(offenders) > 5 else ""
        super().__init__(f"Lengths not below sup bound {bound:.6g}: {listed}{more}")


class GenusTooSmallError(RealizerError, ValueError):
    """The Hurwitz bound needs genus at least 2."""


class PreconditionError(RealizerError, ValueError):
    """An operation was called outside its documented domain."""


class OutOfScopeError(RealizerError):
    """The input lies outside the decidable region."""


class VerificationError(RealizerError):
    """A complex document failed re-verification."""

    def __init__(self, failures: list[str]) -> None:
        self.failures = failures
        super().__init__("; ".join(failures))
