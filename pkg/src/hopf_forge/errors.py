"""Exception types raised across the engine."""

from __future__ import annotations


class HopfForgeError(Exception):
    """Base class for all engine errors."""


class ShapeError(HopfForgeError, ValueError):
    """Operands have incompatible dimensions, arities or backends."""


class ConfigError(HopfForgeError, ValueError):
    """Invalid configuration value (e.g. a non-prime modulus)."""


class CapExceeded(HopfForgeError):
    """A configured size cap would be exceeded."""


class ArityCapExceeded(CapExceeded):
    pass


class DenseCapExceeded(CapExceeded):
    pass


class SingularMatrixError(HopfForgeError):
    """Raised by :func:`invert`; ``kernel`` is a nonzero vector with ``A @ kernel == 0``."""

    def __init__(self, kernel, rank: int):
        super().__init__(f"matrix is singular (rank {rank})")
        self.kernel = kernel
        self.rank = rank


class NotInvertibleMap(HopfForgeError):
    """A finite map is not a bijection; ``collision`` is a pair of inputs with equal image."""

    def __init__(self, collision, image_size: int):
        super().__init__(f"map is not a bijection (image size {image_size}), collision {collision}")
        self.collision = collision
        self.image_size = image_size


class NotIdempotentError(HopfForgeError, ValueError):
    pass


class PreconditionError(HopfForgeError):
    """An operation's verified-input precondition failed.

    ``report`` (when present) holds the failing checks.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NoAntipodeError(PreconditionError):
    """The canonical map is not invertible; ``certificate`` falsifies antipode existence."""

    def __init__(self, certificate):
        super().__init__(f"no antipode: {certificate.describe()}")
        self.certificate = certificate


class SpecError(HopfForgeError, ValueError):
    """Malformed instance file; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = ""
        if field:
            where += f" [field {field}]"
        if line is not None:
            where += f" [line {line}]"
        super().__init__(message + where)
        self.field = field
        self.line = line
