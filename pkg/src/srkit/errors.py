"""Exception taxonomy shared by the library and the CLI.

Every error carries a stable ``code`` string; the CLI copies it verbatim into
error responses so scripts can branch on it.
"""


class SRKitError(Exception):
    code = "SRKitError"


class DomainError(SRKitError):
    """Mathematical precondition failed (exit status 1 in the CLI)."""

    code = "DomainError"


class RealArgument(DomainError):
    code = "RealArgument"


class NotUnitImaginary(DomainError):
    code = "NotUnitImaginary"


class ZeroFunction(DomainError):
    code = "ZeroFunction"


class PoleAtZero(DomainError):
    code = "PoleAtZero"


class NotPolynomial(DomainError):
    code = "NotPolynomial"


class NotInClass(DomainError):
    code = "NotInClass"


class OutsideConvergence(DomainError):
    code = "OutsideConvergence"


class VanishingOnC(DomainError):
    code = "VanishingOnC"


class ConflictingNodes(DomainError):
    code = "ConflictingNodes"


class OverlappingZeroPole(DomainError):
    code = "OverlappingZeroPole"


class InvalidSpec(DomainError):
    code = "InvalidSpec"


class AnchorOffSphere(DomainError):
    code = "AnchorOffSphere"


class IncompatibleChain(DomainError):
    code = "IncompatibleChain"


class InterpolationFailed(DomainError):
    code = "InterpolationFailed"


class MalformedInput(SRKitError):
    """Request could not be parsed (exit status 2 in the CLI)."""

    code = "MalformedInput"


class UnknownCommand(MalformedInput):
    code = "UnknownCommand"
