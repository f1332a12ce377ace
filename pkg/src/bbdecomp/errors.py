"""Exception hierarchy.

``ValidationError`` subclasses map to CLI exit code 2, ``GuardExceeded``
subclasses to exit code 3.
"""
from __future__ import annotations


class BBError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BBError, ValueError):
    pass


class InvalidRank(ValidationError):
    pass


class InvalidDiagram(ValidationError):
    pass


class NotARoot(ValidationError):
    pass


class MixedSystems(ValidationError):
    pass


class BadAutomorphism(ValidationError):
    pass


class MissingSigma0(ValidationError):
    pass


class NotInvariant(ValidationError):
    def __init__(self, which: str, generator):
        self.which = which
        self.generator = generator
        super().__init__(f"{which} is not stable under automorphism {generator}")


class GuardExceeded(BBError):
    def __init__(self, size: int, guard: int, what: str = "set"):
        self.size = size
        self.guard = guard
        super().__init__(f"{what} has {size} elements, exceeding the guard of {guard}")


class GroupTooLarge(GuardExceeded):
    def __init__(self, size: int, guard: int):
        super().__init__(size, guard, "parabolic subgroup")


class CosetSpaceTooLarge(GuardExceeded):
    def __init__(self, size: int, guard: int):
        super().__init__(size, guard, "coset space")


class OrbitEscape(BBError):
    """A diagram automorphism carried a minimal representative outside E."""


class IdentityFailed(BBError):
    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"conservation identity failed: {lhs} != {rhs}")
