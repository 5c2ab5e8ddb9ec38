"""Exception hierarchy for the ratideal package.

Errors fall into three groups, mirroring the CLI exit codes:

* domain/usage errors (exit 2): bad parameters, arguments outside the
  region where an operation is defined, degenerate configurations;
* numerical failures (exit 3): a computation that is defined but could
  not be carried out to the requested accuracy;
* verification failures are *not* exceptions -- they are reported as
  ``status="fail"`` in a report (exit 1 at the CLI level).
"""


class RatidealError(Exception):
    """Base class for all package errors."""


# -- domain / usage errors ---------------------------------------------------

class InvalidParameters(RatidealError):
    """A constructor invariant was violated (balancing, parity, ranges)."""


class DomainError(RatidealError):
    """Arguments outside the region where the operation is defined."""


class PoleOfGamma(DomainError):
    """log-gamma evaluated at a nonpositive integer."""


class PoleAtEvaluation(DomainError):
    """A Pochhammer factor vanished at the evaluation point."""


class PoleOfGammaH(DomainError):
    """The hyperbolic gamma function was evaluated at one of its poles."""


class ConeError(DomainError):
    """Direction outside both asymptotic cones."""


class DegenerateParameters(DomainError):
    """Colliding poles: the parameter point is non-generic.

    Carries the colliding pair when known, so callers (and the CLI) can
    name it.
    """

    def __init__(self, message, colliding=None):
        super().__init__(message)
        self.colliding = colliding


class InvalidTerm(DomainError):
    """A factored term without any denominator: nothing to integrate."""


class TransformOutOfDomain(DomainError):
    """The transformed parameters left the admissible region (resample)."""


class InvalidScan(DomainError):
    """Malformed scan request (empty or non-decreasing delta list)."""


class WindowNotClosed(RatidealError):
    """Non-vanishing terms persisted at the maximal summation window."""


# -- numerical failures ------------------------------------------------------

class NumericalFailure(RatidealError):
    """Base class for accuracy/convergence failures."""


class SlowConvergence(NumericalFailure):
    """Infinite-product truncation budget exceeded (|q| too close to 1)."""


class QuadratureFailure(NumericalFailure):
    """Adaptive quadrature could not reach the requested tolerance."""


class ResidueMismatch(NumericalFailure):
    """The two one-sided residue sums of a term disagree.

    This is an internal consistency failure: for every integrable term the
    residues over the two pole families must sum to opposite values.
    """

    def __init__(self, message, plus_sum=None, minus_sum=None):
        super().__init__(message)
        self.plus_sum = plus_sum
        self.minus_sum = minus_sum
