"""Exception hierarchy shared by every module of the package."""


class CollectiveError(Exception):
    """Base class for all domain errors."""

    kind = "collective-error"


class _LookupError(CollectiveError, KeyError):
    # KeyError quotes its message in str(); these are plain messages
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidContribution(CollectiveError, ValueError):
    kind = "invalid-contribution"


class InvalidReturn(CollectiveError, ValueError):
    kind = "invalid-return"


class CapabilityMissing(CollectiveError):
    """A law check or combinator needs an enumeration or generator the handle lacks."""

    kind = "capability-missing"


class NonEnumerableStrategy(CapabilityMissing):
    kind = "non-enumerable-strategy"


class UnknownMonoid(_LookupError):
    kind = "unknown-monoid"


class InvalidTable(CollectiveError, ValueError):
    """Raised by table validation; ``law`` names the first violated equation."""

    kind = "invalid-table"

    def __init__(self, message, law=None, indices=None, violations=None):
        super().__init__(message)
        self.law = law
        self.indices = indices
        self.violations = violations or []


class InvalidPresheaf(CollectiveError, ValueError):
    kind = "invalid-presheaf"


class ParseError(CollectiveError, ValueError):
    kind = "parse-error"

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownCollective(_LookupError):
    kind = "unknown-collective"


class InvalidParameter(CollectiveError, ValueError):
    """A constructor in an expression got a missing, unknown or ill-typed parameter."""

    kind = "invalid-parameter"


class UnknownDemo(_LookupError):
    kind = "unknown-demo"


class WrongStatus(CollectiveError):
    kind = "wrong-status"


class DuplicateMember(CollectiveError):
    kind = "duplicate-member"


class MalformedDocument(CollectiveError, ValueError):
    kind = "malformed-document"

    def __init__(self, message, position=None):
        where = f" (at {position})" if position is not None else ""
        super().__init__(message + where)
        self.position = position
