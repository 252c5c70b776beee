"""Typed error taxonomy shared across the toolkit.

Every failure surfaced to callers is a :class:`SkyvaneError` subclass, so
pipelines can turn any domain problem into a diagnostic message and a
nonzero exit code without catching bare exceptions.
"""

from __future__ import annotations


class SkyvaneError(Exception):
    """Base class for all toolkit errors."""


class IngestError(SkyvaneError):
    """Problem while reading observation files or scenario manifests.

    ``scenario_key`` is filled in when the failure happened while loading a
    dataset referenced from a manifest, so the message names which of the
    six scenario slots was affected.
    """

    def __init__(self, message: str, *, scenario_key: str | None = None):
        super().__init__(message)
        self.scenario_key = scenario_key

    def __str__(self) -> str:
        base = super().__str__()
        if self.scenario_key:
            return f"[{self.scenario_key}] {base}"
        return base


class MissingHeader(IngestError):
    """First line of an observation CSV is not the required header."""


class MalformedRow(IngestError):
    """A data row has the wrong field count or an unparsable value."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class RangeViolation(IngestError):
    """A parsed field value falls outside its documented bounds."""

    def __init__(self, line_number: int, field: str, message: str):
        super().__init__(f"line {line_number}: {field} {message}")
        self.line_number = line_number
        self.field = field


class DuplicateObservation(IngestError):
    """Two rows share the same (timestamp, svId) pair in strict mode."""


class NonChronologicalRows(IngestError):
    """Rows are not in non-decreasing timestamp order in strict mode."""


class ManifestError(IngestError):
    """Scenario manifest is unreadable or syntactically invalid."""


class UnknownScenarioKey(ManifestError):
    """Manifest names a key outside the six scenario slots."""


class DuplicateScenarioKey(ManifestError):
    """Manifest assigns the same scenario slot twice."""


class EmptyDataset(SkyvaneError):
    """An operation that needs observations received none."""


class NonFiniteInput(SkyvaneError):
    """A direction angle was NaN or infinite."""


class BankOutOfRange(SkyvaneError):
    """Bank magnitude outside the open interval (0, 90) degrees."""


class MissingOrientation(SkyvaneError):
    """A bundle lacks one or more orientations needed for a condition."""

    def __init__(self, condition: str, missing: tuple[str, ...]):
        names = ", ".join(missing)
        super().__init__(f"condition {condition!r} is missing orientation(s): {names}")
        self.condition = condition
        self.missing = missing


class MissingBaselineFlat(SkyvaneError):
    """Pattern detection needs the clear-sky flat dataset for prediction."""


class CountTooLarge(SkyvaneError):
    """Requested more satellites than there are unique PRN ids."""


class ConfigError(SkyvaneError):
    """A configuration file or parameter set is invalid."""
