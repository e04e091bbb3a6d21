"""Exception and warning types shared across the package."""
from __future__ import annotations


class DegenerateInputError(ValueError):
    """Input is formally valid but the requested invariant is undefined on it.

    Examples: a twisted slope of zero (the Chow weight formula divides by
    it), or a blowup whose exceptional volume exhausts the base volume.
    """


class ResourceLimitError(RuntimeError):
    """A brute-force enumeration would exceed its documented feasibility guard."""


class CrossCheckError(AssertionError):
    """Two independent computation paths for the same invariant disagree.

    This is never a user error; it indicates a defect in one of the
    pipelines and is mapped to a dedicated exit status by the CLI.
    """


class AmplenessWarning(UserWarning):
    """The input violates a necessary ampleness inequality.

    The closed forms remain valid polynomial identities, but the geometric
    interpretation as invariants of a polarized manifold is lost.
    """
