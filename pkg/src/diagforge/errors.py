"""Exception types shared across the package."""

from __future__ import annotations


class FeasibilityError(Exception):
    """A construction has no solution for the given data.

    Carries optional structured context: ``level`` is the recursion depth
    at which a staged construction failed (0 is the outermost level),
    ``condition`` names the violated requirement, ``report`` holds any
    per-condition detail object.
    """

    def __init__(self, message, *, level=None, condition=None, report=None):
        super().__init__(message)
        self.level = level
        self.condition = condition
        self.report = report


class ConvergenceError(RuntimeError):
    """An iterative numerical routine hit its iteration cap.

    ``partial`` holds whatever values were already locked in.
    """

    def __init__(self, message, *, partial=()):
        super().__init__(message)
        self.partial = tuple(partial)


class CertificationError(RuntimeError):
    """A construction failed certification of its own output.

    This is always a bug in the library, never a property of the input.
    """

    def __init__(self, message, *, certificate=None):
        super().__init__(message)
        self.certificate = certificate
