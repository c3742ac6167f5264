"""Exceptions raised by the analysis services.

Everything derives from ``AnalysisError`` so the CLI can turn any data problem
into a single clean error message.
"""

from typing import Optional, Sequence


class AnalysisError(ValueError):
    """Base class for every data or validation failure."""


class ConfigError(AnalysisError):
    pass


class LexiconParseError(AnalysisError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class LexiconValidationError(LexiconParseError):
    pass


class UndefinedCoverageError(AnalysisError):
    """Coverage was requested for a corpus with no tokens."""


class UndefinedReadabilityError(AnalysisError):
    """A readability index was requested for a document with no words or sentences."""


class InsufficientDataError(AnalysisError):
    pass


class DegenerateVarianceError(AnalysisError):
    pass


class RecordParseError(AnalysisError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class DuplicateRecordError(RecordParseError):
    def __init__(self, record_id: str, lines: Sequence[int]):
        self.lines = tuple(lines)
        where = ", ".join(str(n) for n in self.lines)
        super().__init__(f"duplicate record id '{record_id}' on lines {where}", line=self.lines[-1], field="id")


class EmptyControlError(AnalysisError):
    """No record scored zero on every indicator, or the control set is empty."""


class ProfileError(AnalysisError):
    pass


class TextError(AnalysisError):
    pass
