"""Shared exception types.

The CLI maps these onto its exit codes: usage problems exit 2, budget
exhaustion exits 3.  A property violation discovered by a scan is not an
exception; it is a certificate in the report, and the CLI exits 1.
"""


class OrderconeError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatchError(OrderconeError):
    """Operands belong to different groups."""


class UsageError(OrderconeError):
    """Malformed input: bad word text, bad descriptor, bad dimensions."""


class BudgetExceededError(OrderconeError):
    """A configured budget (steps, radius, frontier, precision) ran out."""


class PerturbationError(BudgetExceededError):
    """No admissible perturbation passed the exact checks at the configured
    precision floor.  A subclass of the budget error: the delta schedule is a
    precision budget, and returning an unverified spec is forbidden."""


class CertificateError(OrderconeError):
    """A construction that requires a convexity certificate was attempted
    without one, or with a certificate for a different cone or subgroup."""


class CrossCheckError(OrderconeError):
    """An exact verdict and its ball-search cross-check disagreed.  Neither
    answer is trusted; the operation fails loudly instead."""
