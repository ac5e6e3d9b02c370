class PreconditionError(ValueError):
    """An operation was called on inputs outside its contract."""


class ContrastError(PreconditionError):
    """The pair (fact, foil) is not a valid contrastive question."""


class NoExplanation(LookupError):
    """No contrastive explanation exists within the given bounds."""
