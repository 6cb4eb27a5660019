"""Exception hierarchy shared by all coxlab modules."""


class CoxlabError(Exception):
    """Base class for every error raised by coxlab."""


class ValidationError(CoxlabError, ValueError):
    """Malformed input: bad Coxeter matrix, bad descriptor, bad word."""


class ParseError(ValidationError):
    pass


class UnsupportedFieldError(CoxlabError):
    """The Coxeter matrix needs more than one quadratic irrationality."""


class DomainError(CoxlabError, ValueError):
    """Operation not defined for these operands (e.g. cross-system product)."""


class EmptyIntervalError(DomainError):
    pass


class QuotientMembershipError(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class SizeError(CoxlabError):
    """A configured size cap was exceeded."""


class ConsistencyError(CoxlabError):
    """An internal identity failed; indicates an engine bug."""


class NotExpressibleError(CoxlabError, ValueError):
    """An ab-polynomial has no cd-expression."""
