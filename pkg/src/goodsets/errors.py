class GoodSetsError(Exception):
    exit_code = 2


class InvalidInput(GoodSetsError, ValueError):
    """Malformed or inconsistent input document."""

    exit_code = 1


class PreconditionError(GoodSetsError, ValueError):
    """An operation was called outside its domain (not a loop, not good, ...)."""

    exit_code = 2


class CapExceeded(GoodSetsError):
    """An exhaustive search would exceed its configured bound."""

    exit_code = 3


class TheoremViolation(AssertionError):
    """An internal consistency check that the theory guarantees has failed.

    Raised with the offending instance in the message so it can be replayed.
    """
