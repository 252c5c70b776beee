"""Spoofing detectors built on cross-orientation C/N0 trends.

Both detectors share one pipeline: average C/N0 per PRN in each
orientation, check every expected PRN against its strict ordering, and
classify the bundle as spoofed the moment any expectation is violated.
They differ only in where the expectations come from: the rule-based
detector takes hard-coded increasing/decreasing PRN lists from a config
file, while the pattern-based detector predicts the lists from the
clear-sky flat dataset's satellite geometry and the antenna heading.

A PRN missing from any orientation is skipped, never counted as evidence
either way; when no expected PRN is checkable at all, the report stays
non-spoofed but carries a LowEvidence warning, because "no evidence" must
not silently read as "authentic".
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .aggregate import TrendLabel, avg_cno, classify_trend
from .errors import ConfigError, EmptyDataset, MissingBaselineFlat
from .geometry import BoresightModel, angular_separation, boresights, dot, sph2cart
from .ingest import Condition, Orientation, OrientationDataset, ScenarioBundle, iter_keyvalue_lines


class ExpectationSource(str, Enum):
    HARD_CODED = "hard-coded"
    GEOMETRY_PREDICTED = "geometry-predicted"


class Classification(str, Enum):
    SPOOFED = "spoofed"
    NON_SPOOFED = "non-spoofed"


@dataclass(frozen=True)
class TrendExpectation:
    """Expected-trend PRN partition plus where it came from.

    The increasing and decreasing sets are disjoint by construction; PRNs
    in neither set are never checked.
    """

    increasing: frozenset[int]
    decreasing: frozenset[int]
    provenance: ExpectationSource
    heading_deg: float | None = None
    bank_deg: float | None = None
    model: BoresightModel | None = None
    margin_deg: float = 0.0

    def __post_init__(self):
        overlap = self.increasing & self.decreasing
        if overlap:
            raise ValueError(f"PRNs listed as both increasing and decreasing: {sorted(overlap)}")


@dataclass(frozen=True)
class Violation:
    """An expected PRN whose observed triple fails its strict ordering."""

    sv_id: int
    expected: TrendLabel
    triple: tuple[float, float, float]  # (left, flat, right) mean dB-Hz


@dataclass(frozen=True)
class EvidenceRow:
    sv_id: int
    left: float
    flat: float
    right: float
    spread_db: float
    observed: TrendLabel
    expected: TrendLabel | None


@dataclass(frozen=True)
class DetectionReport:
    classification: Classification
    detector: str
    expectation: TrendExpectation
    violations: tuple[Violation, ...]
    checked_prns: int
    skipped_prns: int
    median_spread_db: float | None
    evidence: tuple[EvidenceRow, ...]
    warnings: tuple[str, ...]

    @property
    def low_evidence(self) -> bool:
        return self.checked_prns == 0

    def to_json_dict(self) -> dict:
        """Wire-format dict; see data/report_schema.json for the contract."""
        expectation = {
            "increasing": sorted(self.expectation.increasing),
            "decreasing": sorted(self.expectation.decreasing),
            "provenance": self.expectation.provenance.value,
            "headingDeg": self.expectation.heading_deg,
            "bankDeg": self.expectation.bank_deg,
            "model": self.expectation.model.value if self.expectation.model else None,
            "marginDeg": self.expectation.margin_deg if self.expectation.provenance is ExpectationSource.GEOMETRY_PREDICTED else None,
        }
        return {
            "classification": self.classification.value,
            "detector": self.detector,
            "expectation": expectation,
            "violations": [
                {
                    "svId": v.sv_id,
                    "expected": v.expected.value,
                    "left": v.triple[0],
                    "flat": v.triple[1],
                    "right": v.triple[2],
                }
                for v in self.violations
            ],
            "checkedPrns": self.checked_prns,
            "skippedPrns": self.skipped_prns,
            "medianSpreadDb": self.median_spread_db,
            "warnings": list(self.warnings),
            "evidence": [
                {
                    "svId": e.sv_id,
                    "left": e.left,
                    "flat": e.flat,
                    "right": e.right,
                    "spreadDb": e.spread_db,
                    "observed": e.observed.value,
                    "expected": e.expected.value if e.expected else None,
                }
                for e in self.evidence
            ],
        }


def is_strictly_increasing(a: float, b: float, c: float) -> bool:
    return a < b < c


def is_strictly_decreasing(a: float, b: float, c: float) -> bool:
    return a > b > c


def detect_violations(
    means_left: dict[int, float],
    means_flat: dict[int, float],
    means_right: dict[int, float],
    expectation: TrendExpectation,
) -> list[Violation]:
    """Expected PRNs whose observed triples break their strict ordering.

    PRNs absent from any of the three maps are skipped; skips are not
    errors and are tallied separately by the report assembly.
    """
    violations: list[Violation] = []
    for sv in sorted(expectation.increasing):
        if sv in means_left and sv in means_flat and sv in means_right:
            triple = (means_left[sv], means_flat[sv], means_right[sv])
            if not is_strictly_increasing(*triple):
                violations.append(Violation(sv, TrendLabel.INCREASING, triple))
    for sv in sorted(expectation.decreasing):
        if sv in means_left and sv in means_flat and sv in means_right:
            triple = (means_left[sv], means_flat[sv], means_right[sv])
            if not is_strictly_decreasing(*triple):
                violations.append(Violation(sv, TrendLabel.DECREASING, triple))
    return violations


def classify(violations: list[Violation] | tuple[Violation, ...]) -> Classification:
    return Classification.SPOOFED if violations else Classification.NON_SPOOFED


def predict_trends(
    flat_dataset: OrientationDataset,
    heading_deg: float,
    bank_deg: float = 45.0,
    model: BoresightModel = BoresightModel.AZIMUTH_SWEEP,
    *,
    min_margin_deg: float = 0.0,
) -> TrendExpectation:
    """Predict the expected-trend PRN partition from satellite geometry.

    Each PRN's mean sky position is projected onto the three antenna
    boresights; a strictly increasing projection sequence puts it on the
    increasing list, strictly decreasing on the decreasing list, anything
    else leaves it unclassified.

    ``min_margin_deg`` additionally requires the boresight-to-PRN angular
    separations of adjacent orientations to differ by more than this many
    degrees. PRNs with a geometrically shallower predicted trend are left
    unclassified, since their expected C/N0 steps can sit below the
    measurement noise floor. The default of 0 keeps every strictly
    ordered PRN.
    """
    if not flat_dataset.observations:
        raise EmptyDataset("cannot predict trends from an empty dataset")
    antenna = boresights(heading_deg, bank_deg, model)

    sums: dict[int, list[float]] = {}
    for obs in flat_dataset.observations:
        entry = sums.setdefault(obs.sv_id, [0.0, 0.0, 0.0])
        entry[0] += obs.azim
        entry[1] += obs.elev
        entry[2] += 1.0

    increasing: set[int] = set()
    decreasing: set[int] = set()
    for sv in sorted(sums):
        azim_sum, elev_sum, n = sums[sv]
        prn_vec = sph2cart(azim_sum / n, elev_sum / n)
        d_left = dot(antenna.left, prn_vec)
        d_flat = dot(antenna.flat, prn_vec)
        d_right = dot(antenna.right, prn_vec)
        if min_margin_deg > 0.0:
            s_left = angular_separation(antenna.left, prn_vec)
            s_flat = angular_separation(antenna.flat, prn_vec)
            s_right = angular_separation(antenna.right, prn_vec)
            wide_inc = s_left - s_flat > min_margin_deg and s_flat - s_right > min_margin_deg
            wide_dec = s_right - s_flat > min_margin_deg and s_flat - s_left > min_margin_deg
        else:
            wide_inc = wide_dec = True
        if d_left < d_flat < d_right and wide_inc:
            increasing.add(sv)
        elif d_left > d_flat > d_right and wide_dec:
            decreasing.add(sv)
    return TrendExpectation(
        increasing=frozenset(increasing),
        decreasing=frozenset(decreasing),
        provenance=ExpectationSource.GEOMETRY_PREDICTED,
        heading_deg=heading_deg,
        bank_deg=bank_deg,
        model=model,
        margin_deg=min_margin_deg,
    )


def _run_detection(
    bundle: ScenarioBundle,
    condition: Condition,
    expectation: TrendExpectation,
    detector: str,
    used_only: bool,
) -> DetectionReport:
    datasets = bundle.require_condition(condition)
    means = {o: avg_cno(ds, used_only=used_only) for o, ds in datasets.items()}
    violations = detect_violations(
        means[Orientation.LEFT], means[Orientation.FLAT], means[Orientation.RIGHT], expectation
    )

    expected_prns = expectation.increasing | expectation.decreasing
    checked = sum(1 for sv in expected_prns if all(sv in means[o] for o in Orientation))
    skipped = len(expected_prns) - checked

    complete_prns = sorted(
        set(means[Orientation.LEFT]) & set(means[Orientation.FLAT]) & set(means[Orientation.RIGHT])
    )
    evidence: list[EvidenceRow] = []
    spreads: list[float] = []
    for sv in complete_prns:
        triple = (means[Orientation.LEFT][sv], means[Orientation.FLAT][sv], means[Orientation.RIGHT][sv])
        spread = max(triple) - min(triple)
        spreads.append(spread)
        if sv in expectation.increasing:
            expected = TrendLabel.INCREASING
        elif sv in expectation.decreasing:
            expected = TrendLabel.DECREASING
        else:
            expected = None
        evidence.append(EvidenceRow(sv, *triple, spread, classify_trend(*triple), expected))

    warnings: list[str] = []
    if checked == 0:
        warnings.append(
            "LowEvidence: none of the expected PRNs appear in all three orientations; "
            "a non-spoofed result here means no evidence, not authenticity"
        )
    return DetectionReport(
        classification=classify(violations),
        detector=detector,
        expectation=expectation,
        violations=tuple(violations),
        checked_prns=checked,
        skipped_prns=skipped,
        median_spread_db=statistics.median(spreads) if spreads else None,
        evidence=tuple(evidence),
        warnings=tuple(warnings),
    )


def run_rule_based(
    bundle: ScenarioBundle,
    condition: Condition,
    expectation: TrendExpectation,
    *,
    used_only: bool = False,
) -> DetectionReport:
    """Check a condition's three datasets against supplied expectations."""
    return _run_detection(bundle, condition, expectation, "rule", used_only)


def run_pattern_based(
    bundle: ScenarioBundle,
    condition: Condition,
    heading_deg: float,
    bank_deg: float = 45.0,
    model: BoresightModel = BoresightModel.AZIMUTH_SWEEP,
    *,
    min_margin_deg: float = 0.0,
    used_only: bool = False,
) -> DetectionReport:
    """Predict expectations from the clear-sky flat dataset, then detect."""
    baseline = bundle.get(Condition.REAL, Orientation.FLAT)
    if baseline is None:
        raise MissingBaselineFlat("pattern detection needs the clear-sky flat dataset (ns_flat)")
    expectation = predict_trends(baseline, heading_deg, bank_deg, model, min_margin_deg=min_margin_deg)
    return _run_detection(bundle, condition, expectation, "pattern", used_only)


def parse_expectation_text(text: str, *, source: str = "<expectations>") -> TrendExpectation:
    """Parse 'increasing = 5,20,...' / 'decreasing = 4,15,...' config text."""
    lists: dict[str, frozenset[int]] = {}
    try:
        for line_number, key, value in iter_keyvalue_lines(text):
            if key not in ("increasing", "decreasing"):
                raise ConfigError(f"{source}:{line_number}: unknown key {key!r} (expected increasing/decreasing)")
            if key in lists:
                raise ConfigError(f"{source}:{line_number}: key {key!r} given twice")
            prns = set()
            if value:
                for token in value.split(","):
                    token = token.strip()
                    try:
                        prn = int(token)
                    except ValueError:
                        raise ConfigError(f"{source}:{line_number}: {token!r} is not a PRN integer") from None
                    if prn < 1:
                        raise ConfigError(f"{source}:{line_number}: PRN ids must be >= 1, got {prn}")
                    prns.add(prn)
            lists[key] = frozenset(prns)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    missing = {"increasing", "decreasing"} - set(lists)
    if missing:
        raise ConfigError(f"{source}: missing key(s): {', '.join(sorted(missing))}")
    try:
        return TrendExpectation(lists["increasing"], lists["decreasing"], ExpectationSource.HARD_CODED)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_expectation_file(path: str | Path) -> TrendExpectation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read expectation file {path}: {exc}") from exc
    return parse_expectation_text(text, source=str(path))


def default_expectations_text() -> str:
    """Contents of the documentation default expectation config shipped with the package."""
    return resources.files("skyvane").joinpath("data/default_expectations.txt").read_text(encoding="utf-8")


def load_default_expectations() -> TrendExpectation:
    return parse_expectation_text(default_expectations_text(), source="<default_expectations.txt>")
