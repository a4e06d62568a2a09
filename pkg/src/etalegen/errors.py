"""Exception hierarchy shared by the library and the CLI."""


class EtaleError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(EtaleError):
    """Operands live over different coefficient fields."""


class ParseError(EtaleError):
    """Malformed textual input; carries the offending text and position."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)


class NotEtaleError(EtaleError):
    pass


class NotGeneratingError(EtaleError):
    pass


class DoesNotSplitError(EtaleError):
    """The algebra is not a product of copies of the base field."""

    def __init__(self, message, factor_degrees=None):
        self.factor_degrees = factor_degrees
        super().__init__(message)


class BudgetExceededError(EtaleError):
    """A search or enumeration would exceed its configured budget."""


class CertificateError(EtaleError):
    """A certificate uses a building block outside the admissible set."""
