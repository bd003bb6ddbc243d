"""Exception hierarchy shared by all modules.

Three categories, matching the CLI exit-code contract:

* ``ValidationError`` -- the input violates a precondition (bad shape,
  singular where nonsingular is required, malformed file).
* ``DomainError`` -- the input is well formed but lies outside the domain
  of a partial operation (e.g. a GL_2g(Q) Moebius image that leaves the
  Siegel upper half space).  This is a legitimate outcome, not a bug.
* ``NumericError`` -- the computation could not be completed at the
  requested precision/tolerance (iteration caps, precision exhaustion,
  truncation radius overflow).
"""


class SiegelError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SiegelError):
    """A precondition on the input data failed."""


class DomainError(SiegelError):
    """The input lies outside the domain of a partial operation."""


class NumericError(SiegelError):
    """The computation failed numerically at the working precision."""
