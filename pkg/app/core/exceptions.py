"""
Toolkit exceptions

Every error the toolkit raises on purpose derives from RuleToolkitError, so
the CLI and the HTTP API can turn them into diagnostics without catching
unrelated failures.

Classes:
    RuleToolkitError: Base class carrying a message and structured details
    EmptyInputError: The source held no data rows
    StructuralError: A row has the wrong number of cells, or a cell is empty
    SchemaError: Column designators or schemas do not line up
    ParseError: A cell could not be read as a number
    ArgumentError: An argument is outside its allowed range
    ExperimentError: An experiment could not be prepared or run
    UnknownFixtureError: A dataset source is neither a file nor a fixture
"""

from typing import Any, Dict, Optional


class RuleToolkitError(Exception):
    """
    Base exception for toolkit errors

    Attributes:
        message: Human-readable error message
        details: Structured context, logged alongside the message
    """

    def __init__(self, message: str, **details: Any):
        self.message = message
        self.details: Dict[str, Any] = details
        super().__init__(self.message)


class EmptyInputError(RuleToolkitError):
    """The input contained no data rows."""


class StructuralError(RuleToolkitError):
    """
    Malformed delimiter-separated input

    Attributes:
        line: 1-based line number of the offending row in the source
    """

    def __init__(self, message: str, line: Optional[int] = None, **details: Any):
        self.line = line
        super().__init__(message, line=line, **details)


class SchemaError(RuleToolkitError):
    """Missing class column or a row/dataset that does not fit a schema."""


class ParseError(RuleToolkitError):
    """A cell expected to be numeric could not be parsed."""


class ArgumentError(RuleToolkitError, ValueError):
    """An argument value is outside its documented range."""


class ExperimentError(RuleToolkitError):
    """An experiment failed to resolve its dataset or to run."""


class UnknownFixtureError(ExperimentError):
    """A dataset source named neither a readable file nor a built-in fixture."""
