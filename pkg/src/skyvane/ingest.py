"""Reading and writing satellite observation logs and scenario manifests.

Observation files are plain CSV with the exact header
``timestamp,svId,elev,azim,cno,qualityInd,svUsed``, one record per line,
no quoting. A scenario manifest is a UTF-8 key-value text file tying the
six scenario keys (``ns_left``, ``ns_flat``, ``ns_right``, ``s_left``,
``s_flat``, ``s_right``) to observation files; ``#`` starts a comment and
paths are resolved relative to the manifest's directory.

Strict parsing rejects a whole file on the first malformed or out-of-range
row, reporting the 1-based line number; lenient parsing skips bad rows,
keeps the first of any duplicate (timestamp, svId) pair, and sorts rows
into timestamp order. Silent data loss would bias the per-PRN trend
statistics downstream, so strict is the default everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import (
    DuplicateObservation,
    DuplicateScenarioKey,
    EmptyDataset,
    IngestError,
    MalformedRow,
    ManifestError,
    MissingHeader,
    MissingOrientation,
    NonChronologicalRows,
    RangeViolation,
    UnknownScenarioKey,
)

HEADER = "timestamp,svId,elev,azim,cno,qualityInd,svUsed"

# Seconds-resolution wall-clock time, optional fractional suffix.
_TIMESTAMP_FORMATS = ("%Y-%m-%dT%H:%M:%S", "%Y-%m-%dT%H:%M:%S.%f")


class Orientation(str, Enum):
    """Antenna bank orientation during a collection window."""

    LEFT = "left"
    FLAT = "flat"
    RIGHT = "right"


class Condition(str, Enum):
    """Signal environment a dataset was collected under."""

    REAL = "real"
    SPOOFED = "spoofed"


#: Manifest keys mapped to their (condition, orientation) slot.
SCENARIO_KEYS: Mapping[str, tuple[Condition, Orientation]] = {
    "ns_left": (Condition.REAL, Orientation.LEFT),
    "ns_flat": (Condition.REAL, Orientation.FLAT),
    "ns_right": (Condition.REAL, Orientation.RIGHT),
    "s_left": (Condition.SPOOFED, Orientation.LEFT),
    "s_flat": (Condition.SPOOFED, Orientation.FLAT),
    "s_right": (Condition.SPOOFED, Orientation.RIGHT),
}


def scenario_key(condition: Condition, orientation: Orientation) -> str:
    prefix = "ns" if condition is Condition.REAL else "s"
    return f"{prefix}_{orientation.value}"


@dataclass(frozen=True)
class SatObservation:
    """One epoch's record for one satellite.

    Invariants enforced on ingest: ``sv_id >= 1``, ``-90 <= elev <= 90``,
    ``0 <= azim < 360``, ``0 <= cno <= 99`` dB-Hz, ``quality_ind >= 0``.
    ``quality_ind`` is a receiver-specific index carried through verbatim
    and never interpreted.
    """

    timestamp: datetime
    sv_id: int
    elev: float
    azim: float
    cno: float
    quality_ind: int
    sv_used: bool


@dataclass(frozen=True)
class ParsedLog:
    """Raw parse result, before an orientation is assigned.

    ``skipped_rows`` counts rows dropped in lenient mode and
    ``below_horizon_rows`` counts accepted rows with negative elevation
    (legal in almanac-driven logs but worth flagging).
    """

    observations: tuple[SatObservation, ...]
    source_path: str = "<memory>"
    skipped_rows: int = 0
    below_horizon_rows: int = 0


@dataclass(frozen=True)
class OrientationDataset:
    """Validated, time-ordered observations for one antenna orientation."""

    orientation: Orientation
    observations: tuple[SatObservation, ...]
    source_path: str = "<memory>"

    def sv_ids(self) -> set[int]:
        return {obs.sv_id for obs in self.observations}


@dataclass(frozen=True)
class ScenarioBundle:
    """Up to six datasets keyed by (condition, orientation), plus a label.

    Detection needs at least the three orientations of one condition;
    pattern-based detection additionally needs the (real, flat) slot.
    """

    datasets: Mapping[tuple[Condition, Orientation], OrientationDataset]
    label: str = ""

    def get(self, condition: Condition, orientation: Orientation) -> OrientationDataset | None:
        return self.datasets.get((condition, orientation))

    def missing_orientations(self, condition: Condition) -> tuple[str, ...]:
        return tuple(o.value for o in Orientation if (condition, o) not in self.datasets)

    def require_condition(self, condition: Condition) -> dict[Orientation, OrientationDataset]:
        """All three orientation datasets for a condition, or MissingOrientation."""
        missing = self.missing_orientations(condition)
        if missing:
            raise MissingOrientation(condition.value, missing)
        return {o: self.datasets[(condition, o)] for o in Orientation}


def _parse_timestamp(text: str, line_number: int) -> datetime:
    for fmt in _TIMESTAMP_FORMATS:
        try:
            return datetime.strptime(text, fmt)
        except ValueError:
            continue
    raise MalformedRow(line_number, f"cannot parse timestamp {text!r} (expected YYYY-MM-DDTHH:MM:SS[.ffffff])")


def _parse_int(text: str, field: str, line_number: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise MalformedRow(line_number, f"cannot parse {field} value {text!r} as an integer") from None


def _parse_float(text: str, field: str, line_number: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedRow(line_number, f"cannot parse {field} value {text!r} as a number") from None


def _parse_row(line: str, line_number: int) -> SatObservation:
    parts = line.split(",")
    if len(parts) != 7:
        raise MalformedRow(line_number, f"expected 7 comma-separated fields, got {len(parts)}")
    timestamp = _parse_timestamp(parts[0], line_number)
    sv_id = _parse_int(parts[1], "svId", line_number)
    elev = _parse_float(parts[2], "elev", line_number)
    azim = _parse_float(parts[3], "azim", line_number)
    cno = _parse_float(parts[4], "cno", line_number)
    quality_ind = _parse_int(parts[5], "qualityInd", line_number)
    if parts[6] not in ("0", "1"):
        raise MalformedRow(line_number, f"svUsed must be 0 or 1, got {parts[6]!r}")
    if sv_id < 1:
        raise RangeViolation(line_number, "svId", f"must be >= 1, got {sv_id}")
    if not -90.0 <= elev <= 90.0:
        raise RangeViolation(line_number, "elev", f"must be within [-90, 90] degrees, got {elev}")
    if not 0.0 <= azim < 360.0:
        raise RangeViolation(line_number, "azim", f"must be within [0, 360) degrees, got {azim}")
    if not 0.0 <= cno <= 99.0:
        raise RangeViolation(line_number, "cno", f"must be within [0, 99] dB-Hz, got {cno}")
    if quality_ind < 0:
        raise RangeViolation(line_number, "qualityInd", f"must be >= 0, got {quality_ind}")
    return SatObservation(timestamp, sv_id, elev, azim, cno, quality_ind, parts[6] == "1")


def parse_navsat_text(text: str, *, source: str = "<memory>", lenient: bool = False) -> ParsedLog:
    """Parse observation CSV content into validated records, in row order."""
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise MissingHeader(f"{source}: first line must be exactly {HEADER!r}")
    observations: list[SatObservation] = []
    skipped = 0
    below_horizon = 0
    for line_number, line in enumerate(lines[1:], start=2):
        try:
            obs = _parse_row(line, line_number)
        except (MalformedRow, RangeViolation):
            if lenient:
                skipped += 1
                continue
            raise
        if obs.elev < 0.0:
            below_horizon += 1
        observations.append(obs)
    return ParsedLog(tuple(observations), source, skipped, below_horizon)


def parse_navsat_csv(path: str | Path, *, lenient: bool = False) -> ParsedLog:
    """Parse an observation CSV file.

    The file is decoded as UTF-8 with undecodable bytes replaced, so
    arbitrary byte content always produces either a parse result or a
    typed :class:`IngestError`, never a decoding crash.
    """
    text = Path(path).read_bytes().decode("utf-8", errors="replace")
    return parse_navsat_text(text, source=str(path), lenient=lenient)


def build_dataset(
    orientation: Orientation,
    observations: Iterable[SatObservation],
    *,
    source_path: str = "<memory>",
    lenient: bool = False,
) -> OrientationDataset:
    """Wrap parsed observations into a dataset, enforcing its invariants.

    Strict mode rejects duplicate (timestamp, svId) pairs and rows out of
    chronological order; lenient mode keeps the first duplicate and
    stable-sorts by timestamp, preserving row order within an epoch.
    """
    obs = list(observations)
    if not obs:
        raise EmptyDataset(f"{source_path}: no observations")
    if lenient:
        seen: set[tuple[datetime, int]] = set()
        unique: list[SatObservation] = []
        for o in obs:
            key = (o.timestamp, o.sv_id)
            if key in seen:
                continue
            seen.add(key)
            unique.append(o)
        unique.sort(key=lambda o: o.timestamp)
        obs = unique
    else:
        seen = set()
        previous: datetime | None = None
        for o in obs:
            key = (o.timestamp, o.sv_id)
            if key in seen:
                raise DuplicateObservation(
                    f"{source_path}: duplicate (timestamp, svId) pair "
                    f"({o.timestamp.isoformat()}, {o.sv_id})"
                )
            seen.add(key)
            if previous is not None and o.timestamp < previous:
                raise NonChronologicalRows(
                    f"{source_path}: timestamp {o.timestamp.isoformat()} breaks non-decreasing order"
                )
            previous = o.timestamp
    return OrientationDataset(orientation, tuple(obs), source_path)


def load_dataset(
    path: str | Path,
    orientation: Orientation,
    *,
    lenient: bool = False,
) -> OrientationDataset:
    parsed = parse_navsat_csv(path, lenient=lenient)
    return build_dataset(orientation, parsed.observations, source_path=str(path), lenient=lenient)


def iter_keyvalue_lines(text: str) -> Iterator[tuple[int, str, str]]:
    """Yield (line_number, key, value) from a key-value text file.

    ``#`` starts a comment, blank lines are skipped. Lines without ``=``
    raise ValueError carrying the offending line number in its message.
    """
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {line_number}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        yield line_number, key.strip(), value.strip()


def load_manifest(path: str | Path, *, lenient: bool = False) -> ScenarioBundle:
    """Load a scenario manifest and every observation file it references.

    Parse failures inside a referenced file are re-raised with the
    scenario key attached so the message names the affected slot.
    """
    manifest_path = Path(path)
    try:
        text = manifest_path.read_bytes().decode("utf-8", errors="replace")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {manifest_path}: {exc}") from exc

    entries: dict[str, Path] = {}
    try:
        for line_number, key, value in iter_keyvalue_lines(text):
            if key not in SCENARIO_KEYS:
                raise UnknownScenarioKey(f"{manifest_path}:{line_number}: unknown scenario key {key!r}")
            if key in entries:
                raise DuplicateScenarioKey(f"{manifest_path}:{line_number}: scenario key {key!r} given twice")
            if not value:
                raise ManifestError(f"{manifest_path}:{line_number}: empty path for {key!r}")
            entries[key] = manifest_path.parent / value
    except ValueError as exc:
        raise ManifestError(f"{manifest_path}: {exc}") from exc
    if not entries:
        raise ManifestError(f"{manifest_path}: no scenario entries")

    datasets: dict[tuple[Condition, Orientation], OrientationDataset] = {}
    for key, csv_path in entries.items():
        condition, orientation = SCENARIO_KEYS[key]
        try:
            parsed = parse_navsat_csv(csv_path, lenient=lenient)
            datasets[(condition, orientation)] = build_dataset(
                orientation, parsed.observations, source_path=str(csv_path), lenient=lenient
            )
        except OSError as exc:
            raise ManifestError(f"cannot read {csv_path}: {exc}", scenario_key=key) from exc
        except IngestError as exc:
            exc.scenario_key = key
            raise
        except EmptyDataset as exc:
            raise EmptyDataset(f"[{key}] {exc}") from exc
    return ScenarioBundle(datasets=datasets, label=manifest_path.stem)


def format_observation(obs: SatObservation) -> str:
    """One CSV line for an observation, reals at fixed 3-decimal precision.

    Azimuth is reduced modulo 360 before formatting and a value that rounds
    up to the excluded 360.000 boundary is emitted as 0.000 so written
    files always re-ingest cleanly.
    """
    azim_text = f"{obs.azim % 360.0:.3f}"
    if azim_text == "360.000":
        azim_text = "0.000"
    return (
        f"{obs.timestamp.isoformat()},{obs.sv_id},{obs.elev:.3f},{azim_text},"
        f"{obs.cno:.3f},{obs.quality_ind},{1 if obs.sv_used else 0}"
    )


def observations_to_csv_text(observations: Iterable[SatObservation]) -> str:
    lines = [HEADER]
    lines.extend(format_observation(obs) for obs in observations)
    return "\n".join(lines) + "\n"


def write_observations_csv(observations: Iterable[SatObservation], path: str | Path) -> None:
    Path(path).write_text(observations_to_csv_text(observations), encoding="utf-8")
