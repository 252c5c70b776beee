"""Per-PRN statistics and observed trend labels across orientations.

Observed trends use strict comparisons: a PRN counts as increasing only
when left < flat < right holds exactly, so any tie is irregular. Rows with
``svUsed = 0`` are included in the averages by default; pass
``used_only=True`` to restrict the means to satellites that contributed to
the navigation solution.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyDataset
from .ingest import Condition, Orientation, OrientationDataset, ScenarioBundle


class TrendLabel(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    IRREGULAR = "irregular"


@dataclass(frozen=True)
class ObservedTrend:
    """Observed left/flat/right mean triple and its strict-order label."""

    sv_id: int
    label: TrendLabel
    triple: tuple[float, float, float]


@dataclass(frozen=True)
class PrnSummary:
    """Cross-orientation aggregates for one PRN.

    ``spread_db`` (max - min of the orientation means), ``variance_db2``
    (population variance of the means), and ``trend`` are only defined for
    PRNs observed in all three orientations; incomplete PRNs carry None
    there and ``complete=False``.
    """

    sv_id: int
    mean_cno: dict[Orientation, float]
    sample_count: dict[Orientation, int]
    mean_azim: float | None
    mean_elev: float | None
    spread_db: float | None
    variance_db2: float | None
    complete: bool
    trend: TrendLabel | None


def avg_cno(dataset: OrientationDataset, *, used_only: bool = False) -> dict[int, float]:
    """Arithmetic mean C/N0 per satellite id, keyed in ascending PRN order."""
    if not dataset.observations:
        raise EmptyDataset(f"{dataset.source_path}: cannot average an empty dataset")
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for obs in dataset.observations:
        if used_only and not obs.sv_used:
            continue
        sums[obs.sv_id] = sums.get(obs.sv_id, 0.0) + obs.cno
        counts[obs.sv_id] = counts.get(obs.sv_id, 0) + 1
    return {sv: sums[sv] / counts[sv] for sv in sorted(sums)}


def sample_counts(dataset: OrientationDataset, *, used_only: bool = False) -> dict[int, int]:
    counts: dict[int, int] = {}
    for obs in dataset.observations:
        if used_only and not obs.sv_used:
            continue
        counts[obs.sv_id] = counts.get(obs.sv_id, 0) + 1
    return counts


def classify_trend(left: float, flat: float, right: float, *, tie_epsilon: float = 0.0) -> TrendLabel:
    """Strict three-way trend label for a left/flat/right mean triple.

    ``tie_epsilon`` widens what counts as a tie: adjacent means must differ
    by more than epsilon to count as ordered. The default of 0 keeps exact
    floating-point strictness.
    """
    if left + tie_epsilon < flat and flat + tie_epsilon < right:
        return TrendLabel.INCREASING
    if right + tie_epsilon < flat and flat + tie_epsilon < left:
        return TrendLabel.DECREASING
    return TrendLabel.IRREGULAR


def _mean_position(bundle: ScenarioBundle, condition: Condition, sv_id: int) -> tuple[float, float] | None:
    # Prefer the clear-sky flat dataset for sky positions, then fall back
    # to whichever dataset of the condition under test saw the PRN.
    candidates = dict.fromkeys(
        [
            (Condition.REAL, Orientation.FLAT),
            (condition, Orientation.FLAT),
            (condition, Orientation.LEFT),
            (condition, Orientation.RIGHT),
        ]
    )
    for slot in candidates:
        dataset = bundle.datasets.get(slot)
        if dataset is None:
            continue
        azims = [o.azim for o in dataset.observations if o.sv_id == sv_id]
        elevs = [o.elev for o in dataset.observations if o.sv_id == sv_id]
        if azims:
            return sum(azims) / len(azims), sum(elevs) / len(elevs)
    return None


def summarize(
    bundle: ScenarioBundle,
    condition: Condition,
    *,
    used_only: bool = False,
    tie_epsilon: float = 0.0,
) -> list[PrnSummary]:
    """One PrnSummary per PRN seen in any orientation of the condition.

    Raises MissingOrientation unless all three orientations are present.
    """
    datasets = bundle.require_condition(condition)
    means = {o: avg_cno(ds, used_only=used_only) for o, ds in datasets.items()}
    counts = {o: sample_counts(ds, used_only=used_only) for o, ds in datasets.items()}
    all_prns = sorted(set().union(*(m.keys() for m in means.values())))

    summaries: list[PrnSummary] = []
    for sv in all_prns:
        mean_cno = {o: means[o][sv] for o in Orientation if sv in means[o]}
        sample_count = {o: counts[o][sv] for o in Orientation if sv in counts[o]}
        complete = len(mean_cno) == 3
        spread = variance = None
        trend = None
        if complete:
            triple = (mean_cno[Orientation.LEFT], mean_cno[Orientation.FLAT], mean_cno[Orientation.RIGHT])
            spread = max(triple) - min(triple)
            variance = statistics.pvariance(triple)
            trend = classify_trend(*triple, tie_epsilon=tie_epsilon)
        position = _mean_position(bundle, condition, sv)
        summaries.append(
            PrnSummary(
                sv_id=sv,
                mean_cno=mean_cno,
                sample_count=sample_count,
                mean_azim=position[0] if position else None,
                mean_elev=position[1] if position else None,
                spread_db=spread,
                variance_db2=variance,
                complete=complete,
                trend=trend,
            )
        )
    return summaries


SUMMARY_CSV_HEADER = "svId,meanLeft,meanFlat,meanRight,spreadDb,varianceDb2,trend"


def summaries_to_csv(summaries: list[PrnSummary]) -> str:
    """Summaries as CSV text; incomplete slots are left empty."""

    def fmt(value: float | None, spec: str = ".3f") -> str:
        return "" if value is None else format(value, spec)

    lines = [SUMMARY_CSV_HEADER]
    for s in summaries:
        lines.append(
            ",".join(
                [
                    str(s.sv_id),
                    fmt(s.mean_cno.get(Orientation.LEFT)),
                    fmt(s.mean_cno.get(Orientation.FLAT)),
                    fmt(s.mean_cno.get(Orientation.RIGHT)),
                    fmt(s.spread_db),
                    fmt(s.variance_db2, ".4f"),
                    s.trend.value if s.trend else "",
                ]
            )
        )
    return "\n".join(lines) + "\n"
