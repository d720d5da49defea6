# app/core/errors.py
from typing import Optional


class WorkbenchError(Exception):
    """
    Base error for every domain failure. `exit_code` plays the role an HTTP
    status plays for a web service: the CLI maps it straight to the process exit.
    """
    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return self.detail


class UsageError(WorkbenchError):
    exit_code = 2


class ParseError(WorkbenchError):
    def __init__(self, detail: str, position: Optional[int] = None):
        if position is not None:
            detail = f"{detail} (at position {position})"
        super().__init__(detail)
        self.position = position


class UnknownSymbolError(ParseError):
    pass


class ArityError(WorkbenchError):
    pass


class MalformedDocumentError(WorkbenchError):
    pass


class ConfigError(WorkbenchError):
    pass


class BudgetExceededError(WorkbenchError):
    pass


class PreconditionError(WorkbenchError):
    pass


class AutomorphismValidationError(WorkbenchError):
    pass


class DegenerateImagesError(AutomorphismValidationError):
    pass


class NotFiniteError(WorkbenchError):
    pass
