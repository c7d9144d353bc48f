"""Exception hierarchy shared across the package.

All numeric-failure exceptions derive from MomentZetaError so callers (and the
CLI) can distinguish "the computation is mathematically impossible or failed"
from plain programming errors, which raise ValueError/TypeError as usual.
"""


class MomentZetaError(Exception):
    """Base class for numeric/domain failures raised by this package."""


class Divergence(MomentZetaError):
    """A requested series or sum does not converge."""


class TailUnavailable(MomentZetaError):
    """An operation needs a tail model and the moment sequence has none."""


class QuadratureFailure(MomentZetaError):
    """Numerical integration could not reach the requested tolerance."""


class MissingEdgeData(MomentZetaError):
    """A tabulated density has no user-supplied edge behaviour (c, beta)."""


class InvalidTail(MomentZetaError):
    """Spot checks show the moment sequence contradicts its tail model."""


class PrecisionExhausted(MomentZetaError):
    """The extended-precision contract of the naive oracle cannot be met."""


class DomainError(MomentZetaError):
    """A parameter lies outside the admissible range of a formula."""


class TooManySets(MomentZetaError):
    """Subset enumeration was requested for more than 20 sets."""
