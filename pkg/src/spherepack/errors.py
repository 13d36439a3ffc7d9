"""Exception hierarchy shared by every module."""


class SpherePackError(Exception):
    """Base class for domain errors."""


class PreconditionError(SpherePackError, ValueError):
    pass


class RepresentationError(SpherePackError, ValueError):
    """A quantity is not representable in the scalar field Q(sqrt 2)."""


class ConstructionError(SpherePackError):
    """An internal consistency check failed while building an object."""


class PrecisionError(SpherePackError):
    pass


class ThetaSystemError(SpherePackError, ValueError):
    """A theta prefix is not consistent with any unimodular theta series."""


class ResourceError(SpherePackError):
    """An enumeration, search or memory budget was exhausted.

    No partial result is ever returned alongside this error.
    """

    def __init__(self, message, *, budget=None, used=None):
        super().__init__(message)
        self.budget = budget
        self.used = used
        self.partial = False
