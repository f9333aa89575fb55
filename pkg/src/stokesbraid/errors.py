"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes, so every failure that should
surface to a user derives from :class:`StokesBraidError`.
"""


class StokesBraidError(Exception):
    exit_code = 1


class ConfigurationError(StokesBraidError, ValueError):
    """Invalid type/rank pair, malformed class string, bad flag combination."""

    exit_code = 2


class UnsupportedInputError(ConfigurationError):
    """Input outside the exactly-computable family (e.g. an irrational angle)."""


class ResourceError(StokesBraidError):
    """An enumeration would exceed its budget. Never silently truncated."""

    exit_code = 3


class VerificationFailure(StokesBraidError):
    """A mathematical claim failed to check. ``claim`` names it."""

    exit_code = 1

    def __init__(self, claim: str, message: str):
        super().__init__(f"{claim}: {message}")
        self.claim = claim
