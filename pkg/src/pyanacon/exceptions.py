"""Exception hierarchy for pyanacon."""

from __future__ import annotations


class AnaconError(Exception):
    """Base exception for pyanacon."""


class InvalidClauseError(AnaconError, ValueError):
    """A clause or action violates a construction invariant."""


class ParseError(AnaconError):
    """Concrete text could not be turned into a clause.

    ``line`` and ``column`` are 1-based; ``text`` is the offending token or
    character, when there is one.
    """

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        column: int | None = None,
        text: str | None = None,
    ) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"


class CLSyntaxError(ParseError):
    """Symbolic CL text is lexically or syntactically malformed."""


class RestrictedEnglishError(ParseError):
    """Restricted English text does not follow a clause template."""


class ContractFileError(ParseError):
    """Contract file structure is malformed."""


class XmlSchemaError(AnaconError):
    """XML document does not follow the contract schema."""

    def __init__(self, message: str, path: str | None = None) -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnsupportedConstructError(AnaconError):
    """The conflict engine cannot analyze a construct (negation, general star)."""


class StateSpaceExceededError(AnaconError):
    """Exploration stopped at a state-count or depth bound without a verdict."""

    def __init__(self, bound: str, limit: int, explored: int) -> None:
        self.bound = bound
        self.limit = limit
        self.explored = explored
        super().__init__(
            f"{bound} bound of {limit} hit after exploring {explored} states"
        )
