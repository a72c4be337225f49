"""Exception hierarchy shared by every module."""


class WicatError(Exception):
    """Base class for all library errors."""


class UnsupportedRing(WicatError):
    pass


class RingMismatch(WicatError):
    pass


class ShapeMismatch(WicatError):
    pass


class NotIdempotent(WicatError):
    pass


class NotSplitMono(WicatError):
    pass


class SplitMonoNoComplement(WicatError):
    """The complement of a split mono exists only outside the category.

    ``complement`` is the complement object found in the ambient idempotent
    completion; ``iso``/``inverse`` identify the target with source plus
    complement there.
    """

    def __init__(self, complement, reason, iso=None, inverse=None):
        super().__init__(reason)
        self.complement = complement
        self.reason = reason
        self.iso = iso
        self.inverse = inverse


class WitnessInvalid(WicatError):
    pass


class NotContractible(WicatError):
    pass


class SpecMismatch(WicatError):
    pass


class CertificateInvalid(WicatError):
    pass


class UnstablePresentation(WicatError):
    pass


class CrossCheckFailure(WicatError):
    pass


class UnsupportedHom(WicatError):
    pass


class DocumentError(WicatError):
    """A JSON input document does not match its schema; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
