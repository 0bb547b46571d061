"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: validation problems exit 1,
numerical failures exit 2 and resource-limit violations exit 3.
"""


class RSWalkError(Exception):
    """Base class for all errors raised by the package."""

    exit_status = 1
    reason = "error"


class InvalidArgumentError(RSWalkError, ValueError):
    reason = "invalid_argument"


class VariantMismatchError(InvalidArgumentError):
    reason = "variant_mismatch"


class ResourceLimitError(RSWalkError):
    exit_status = 3
    reason = "resource_limit"


class NumericalFailureError(RSWalkError):
    exit_status = 2
    reason = "numerical_failure"
