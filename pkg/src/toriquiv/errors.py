"""Exception hierarchy shared by all modules.

Validation errors (bad user input) and computation errors (guards tripped
mid-run) are kept apart so the CLI can map them to distinct exit codes.
"""


class ToriquivError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ToriquivError):
    """Input violates a documented precondition or schema."""


class ComputationError(ToriquivError):
    """A desk-scale guard tripped or a search was exhausted."""


# -- input validation ---------------------------------------------------------

class NonSimplicial(ValidationError):
    pass


class RaysDoNotSpan(ValidationError):
    pass


class NotACone(ValidationError):
    pass


class ConventionViolated(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NotGeneric(ValidationError):
    pass


class EndpointOnWall(ValidationError):
    pass


class NotAKernelLattice(ValidationError):
    pass


class Quasireflection(ValidationError):
    pass


class WeightsDoNotGenerate(ValidationError):
    pass


# -- computation guards -------------------------------------------------------

class InfinitelyManySections(ComputationError):
    pass


class TooManyVertices(ComputationError):
    pass


class TooManyArrows(ComputationError):
    pass


class TooManyVariables(ComputationError):
    pass


class TooManyGenerators(ComputationError):
    pass


class DegreeBlowup(ComputationError):
    pass


class StabilizationNotReached(ComputationError):
    pass


class CertificateSearchFailed(ComputationError):
    pass


class NoBasisInBbar(ComputationError):
    pass


class TooLarge(ComputationError):
    pass


class VerificationFailed(ComputationError):
    """An internal cross-check failed; indicates a bug, not a user error."""
