"""Exception hierarchy shared by all modules."""


class AltanError(Exception):
    pass


class IndexOutOfRange(AltanError, ValueError):
    pass


class SelfLoop(AltanError, ValueError):
    pass


class InvalidAttachment(AltanError, ValueError):
    pass


class OddAttachment(AltanError, ValueError):
    pass


class NotAKernelVector(AltanError, ValueError):
    pass


class NotExtendable(AltanError):
    """Raised for even h when the obstruction C(q) is non-zero."""

    def __init__(self, obstruction):
        super().__init__(f"kernel vector does not extend: C(q) = {obstruction}")
        self.obstruction = obstruction


class NotContractible(AltanError):
    def __init__(self, x_values):
        super().__init__(f"kernel vector is non-zero on x-vertices: {x_values}")
        self.x_values = x_values


class TheoremViolation(AltanError, AssertionError):
    pass


class ConvergenceFailure(AltanError, RuntimeError):
    pass


class InconsistentEmbedding(AltanError, ValueError):
    pass


class AmbiguousOuterFace(AltanError, ValueError):
    pass


class NoDegreeTwoVertices(AltanError, ValueError):
    pass


class NotAPatch(AltanError, ValueError):
    pass


class NotBipartite(AltanError, ValueError):
    pass


class IdentityViolation(AltanError, AssertionError):
    pass


class InvalidCode(AltanError, ValueError):
    pass


class CapExceeded(AltanError, ValueError):
    pass


class IngestionError(AltanError, ValueError):
    pass


class MalformedHeader(IngestionError):
    pass


class TruncatedRecord(IngestionError):
    pass


class CacheCorrupt(AltanError):
    pass


class EmptyFamily(AltanError, ValueError):
    pass
