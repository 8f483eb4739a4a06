class HwtuneException(Exception):
    def __init__(self, msg: str = ""):
        super().__init__(msg)
        self.msg = msg


class InvalidFormat(HwtuneException):
    pass


class SchemaError(InvalidFormat):
    """A structured-text document does not conform to its schema."""


class DocumentNotFound(HwtuneException):
    def __init__(self, kind: str, name: str):
        super().__init__(f"No {kind} named or located at '{name}'")
        self.kind = kind
        self.name = name


class BudgetError(HwtuneException):
    def __init__(self, budget: int):
        super().__init__(f"The budget has to be >= 1, got {budget}")
        self.budget = budget


class BadCodingError(RuntimeError):
    """
    Should be thrown for errors that theoretically should never happen, except when the
    programmer made a mistake.
    """

    pass
