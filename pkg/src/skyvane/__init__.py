"""GNSS spoofing detection from C/N0 trends across banked antenna orientations."""

from .aggregate import PrnSummary, TrendLabel, avg_cno, classify_trend, summaries_to_csv, summarize
from .detect import (
    Classification,
    DetectionReport,
    ExpectationSource,
    TrendExpectation,
    Violation,
    classify,
    detect_violations,
    load_default_expectations,
    load_expectation_file,
    predict_trends,
    run_pattern_based,
    run_rule_based,
)
from .errors import SkyvaneError
from .geometry import BoresightModel, BoresightSet, UnitVector3, angular_separation, boresights, dot, sph2cart
from .ingest import (
    Condition,
    Orientation,
    OrientationDataset,
    SatObservation,
    ScenarioBundle,
    load_dataset,
    load_manifest,
    parse_navsat_csv,
    write_observations_csv,
)
from .render import render_sky_svg, render_trends_svg
from .simulate import (
    GainModel,
    ScenarioConfig,
    SkyModel,
    SpooferModel,
    build_bundle,
    generate_sky,
    load_scenario_config,
    simulate_bundle,
    write_bundle,
)

__version__ = "0.1.0"

__all__ = [
    "BoresightModel",
    "BoresightSet",
    "Classification",
    "Condition",
    "DetectionReport",
    "ExpectationSource",
    "GainModel",
    "Orientation",
    "OrientationDataset",
    "PrnSummary",
    "SatObservation",
    "ScenarioBundle",
    "ScenarioConfig",
    "SkyModel",
    "SkyvaneError",
    "SpooferModel",
    "TrendExpectation",
    "TrendLabel",
    "UnitVector3",
    "Violation",
    "angular_separation",
    "avg_cno",
    "boresights",
    "build_bundle",
    "classify",
    "classify_trend",
    "detect_violations",
    "dot",
    "generate_sky",
    "load_dataset",
    "load_default_expectations",
    "load_expectation_file",
    "load_manifest",
    "load_scenario_config",
    "parse_navsat_csv",
    "predict_trends",
    "render_sky_svg",
    "render_trends_svg",
    "run_pattern_based",
    "run_rule_based",
    "simulate_bundle",
    "sph2cart",
    "summaries_to_csv",
    "summarize",
    "write_bundle",
    "write_observations_csv",
]
