"""Exception hierarchy shared by all modules."""


class OkounkovError(Exception):
    """Base class for all library errors."""


class InputError(OkounkovError):
    """Malformed input: wrong dimensions, bad JSON, unparsable divisor."""


class DomainError(OkounkovError):
    """Structurally valid input outside an operation's domain
    (not pseudo-effective, not nef, not big, ...)."""


class ResourceLimitError(DomainError):
    """An exact combinatorial computation exceeded its configured size cap."""


class InternalError(OkounkovError):
    """A mathematically impossible state was reached; indicates a bug or an
    invalid surface model that slipped past validation."""
