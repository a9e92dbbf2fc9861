"""Exception hierarchy shared by all modules.

Two families matter to callers: input problems (bad files, dimension
mismatches, violated preconditions) and *theorem violations* -- conditions
that provably cannot occur for a verified algebra, so hitting one means a
bug or corrupted data.  The CLI maps the families to different exit codes.
"""


class HlyaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HlyaError):
    """Malformed or inconsistent user input."""


class DimMismatchError(InputError):
    pass


class ArityError(InputError):
    pass


class NotHomLieError(InputError):
    """The supplied bracket does not satisfy the twisted Jacobi identity."""


class AxiomError(InputError):
    """A constructed structure fails the defining identities."""


class NotMorphismError(InputError):
    """The supplied map is not an algebra endomorphism."""


class BaseMismatchError(InputError):
    """Deformations/gauges over different base algebras were combined."""


class PreconditionError(InputError):
    """An operation's stated precondition does not hold for the input."""


class NotInZ2Z3Error(PreconditionError):
    """The given pair is not a 2-/3-cocycle pair."""


class TheoremViolationError(HlyaError):
    """A mathematically impossible state: signals a bug, never user error."""


class NotACochainError(TheoremViolationError):
    """A tabulated map violates the cochain conditions it must satisfy."""


class NotContainedError(TheoremViolationError):
    """A coboundary space escaped its cocycle space."""


class ClosureViolationError(TheoremViolationError):
    """A commutator of derivations left the expected derivation space."""


class NotCocycleError(TheoremViolationError):
    """A leading deformation term failed the cocycle conditions."""
