class PreconditionError(ValueError):
    """Input is well-formed but violates a mathematical precondition."""


class HypothesisError(PreconditionError):
    """A bound was requested without declaring every conditional hypothesis."""
