"""Pydantic request/response models for the HTTP service.

Response field names are the wire names (camelCase where the report JSON
uses them), so a model dump is exactly the documented report format.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..simulate import ScenarioConfig
from ..geometry import BoresightModel


class SimulationSettings(BaseModel):
    """Inline scenario parameters; every field falls back to the toolkit default."""

    seed: int = 42
    satellite_count: int = 13
    epoch_count: int = 13
    epoch_interval_s: float = 5.0
    base_cno_dbhz: float = 40.0
    max_rolloff_db: float = 12.0
    rolloff_exponent: float = 1.0
    beamwidth_deg: float = 90.0
    noise_sigma_db: float = 0.5
    spoof_rolloff_db: float = 2.0
    spoof_noise_sigma_db: float = 0.3
    spoofer_azim_deg: Optional[float] = None
    spoofer_elev_deg: Optional[float] = None
    heading_deg: float = 0.0
    bank_deg: float = 45.0
    model: Literal["sweep", "tilt"] = "tilt"
    label: str = "synthetic"

    def to_config(self) -> ScenarioConfig:
        data = self.model_dump()
        data["model"] = BoresightModel(data["model"])
        return ScenarioConfig(**data)


class SimulateRequest(BaseModel):
    """Generate a synthetic bundle from a config file or inline settings.

    With ``out_dir`` the CSVs and manifest are written server-side and the
    response carries their paths; without it the CSV payloads come back
    inline, keyed by scenario key.
    """

    config_path: Optional[str] = None
    settings: Optional[SimulationSettings] = None
    out_dir: Optional[str] = None


class SimulateResponse(BaseModel):
    label: str
    manifest_path: Optional[str] = None
    csv_paths: Optional[dict[str, str]] = None
    manifest_text: Optional[str] = None
    files: Optional[dict[str, str]] = None


class BundleSource(BaseModel):
    """Where a scenario bundle comes from: a manifest path the server can
    read, or inline CSV text keyed by scenario key (exactly one of them)."""

    manifest_path: Optional[str] = None
    datasets: Optional[dict[str, str]] = None
    lenient: bool = False


class ExpectationLists(BaseModel):
    increasing: list[int]
    decreasing: list[int]


class DetectRequest(BundleSource):
    detector: Literal["rule", "pattern"]
    condition: Literal["real", "spoofed"]
    expect_path: Optional[str] = None
    expectations: Optional[ExpectationLists] = None
    heading_deg: Optional[float] = None
    bank_deg: float = 45.0
    model: Literal["sweep", "tilt"] = "sweep"
    margin_deg: float = Field(default=0.0, ge=0.0)
    used_only: bool = False


class ExpectationInfo(BaseModel):
    increasing: list[int]
    decreasing: list[int]
    provenance: Literal["hard-coded", "geometry-predicted"]
    headingDeg: Optional[float] = None
    bankDeg: Optional[float] = None
    model: Optional[Literal["sweep", "tilt"]] = None
    marginDeg: Optional[float] = None


class ViolationInfo(BaseModel):
    svId: int
    expected: Literal["increasing", "decreasing"]
    left: float
    flat: float
    right: float


class EvidenceInfo(BaseModel):
    svId: int
    left: float
    flat: float
    right: float
    spreadDb: float
    observed: Literal["increasing", "decreasing", "irregular"]
    expected: Optional[Literal["increasing", "decreasing"]] = None


class DetectResponse(BaseModel):
    classification: Literal["spoofed", "non-spoofed"]
    detector: Literal["rule", "pattern"]
    expectation: ExpectationInfo
    violations: list[ViolationInfo]
    checkedPrns: int
    skippedPrns: int
    medianSpreadDb: Optional[float] = None
    warnings: list[str]
    evidence: list[EvidenceInfo]


class SummarizeRequest(BundleSource):
    condition: Literal["real", "spoofed"]
    used_only: bool = False


class SummaryRow(BaseModel):
    svId: int
    meanLeft: Optional[float] = None
    meanFlat: Optional[float] = None
    meanRight: Optional[float] = None
    meanAzim: Optional[float] = None
    meanElev: Optional[float] = None
    spreadDb: Optional[float] = None
    varianceDb2: Optional[float] = None
    complete: bool
    trend: Optional[Literal["increasing", "decreasing", "irregular"]] = None


class SummarizeResponse(BaseModel):
    condition: Literal["real", "spoofed"]
    summaries: list[SummaryRow]
    csv: str


class RenderRequest(BundleSource):
    plot: Literal["sky", "trends"]
    condition: Literal["real", "spoofed"] = "real"
    cno_scale_min: float = 20.0
    cno_scale_max: float = 50.0


class ErrorResponse(BaseModel):
    error: str
    message: str
