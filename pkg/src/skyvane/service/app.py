"""FastAPI service wrapping the detection pipeline.

The ``handle_*`` functions hold the whole request/response logic over the
pydantic models; the route functions only bind them to paths. The CLI
calls the same handlers in-process, so both surfaces share one code path
and one error taxonomy (:class:`SkyvaneError` maps to HTTP 422, file
system errors to HTTP 400).
"""

from __future__ import annotations

import os
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..aggregate import summarize, summaries_to_csv
from ..detect import (
    ExpectationSource,
    TrendExpectation,
    load_expectation_file,
    run_pattern_based,
    run_rule_based,
)
from ..errors import ConfigError, IngestError, SkyvaneError, UnknownScenarioKey
from ..geometry import BoresightModel
from ..ingest import (
    SCENARIO_KEYS,
    Condition,
    Orientation,
    ScenarioBundle,
    build_dataset,
    load_manifest,
    observations_to_csv_text,
    parse_navsat_text,
)
from ..render import render_sky_svg, render_trends_svg
from ..simulate import ScenarioConfig, build_bundle, load_scenario_config, write_bundle
from .schemas import (
    BundleSource,
    DetectRequest,
    DetectResponse,
    ErrorResponse,
    RenderRequest,
    SimulateRequest,
    SimulateResponse,
    SummarizeRequest,
    SummarizeResponse,
    SummaryRow,
)

#: Environment variable that overrides the scenario config seed.
SEED_ENV_VAR = "SKYVANE_SEED"


def resolve_bundle(source: BundleSource) -> ScenarioBundle:
    """Materialize the scenario bundle a request refers to."""
    if (source.manifest_path is None) == (source.datasets is None):
        raise ConfigError("provide exactly one of manifest_path or inline datasets")
    if source.manifest_path is not None:
        return load_manifest(source.manifest_path, lenient=source.lenient)
    datasets = {}
    for key, text in source.datasets.items():
        if key not in SCENARIO_KEYS:
            raise UnknownScenarioKey(f"unknown scenario key {key!r}")
        condition, orientation = SCENARIO_KEYS[key]
        try:
            parsed = parse_navsat_text(text, source=f"<inline:{key}>", lenient=source.lenient)
            datasets[(condition, orientation)] = build_dataset(
                orientation, parsed.observations, source_path=f"<inline:{key}>", lenient=source.lenient
            )
        except IngestError as exc:
            exc.scenario_key = key
            raise
    return ScenarioBundle(datasets=datasets, label="inline")


def _scenario_config(request: SimulateRequest) -> ScenarioConfig:
    if request.config_path is not None and request.settings is not None:
        raise ConfigError("give either config_path or inline settings, not both")
    if request.config_path is not None:
        config = load_scenario_config(request.config_path)
    elif request.settings is not None:
        config = request.settings.to_config()
    else:
        config = ScenarioConfig()
    seed_override = os.environ.get(SEED_ENV_VAR)
    if seed_override is not None:
        try:
            config = replace(config, seed=int(seed_override))
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {seed_override!r}") from None
    return config


def handle_simulate(request: SimulateRequest) -> SimulateResponse:
    config = _scenario_config(request)
    bundle = build_bundle(config)
    if request.out_dir is not None:
        manifest = write_bundle(bundle, request.out_dir)
        csv_paths = {
            key: str(Path(request.out_dir) / f"{key}.csv")
            for key, slot in SCENARIO_KEYS.items()
            if slot in bundle.datasets
        }
        return SimulateResponse(label=bundle.label, manifest_path=str(manifest), csv_paths=csv_paths)
    files = {
        key: observations_to_csv_text(bundle.datasets[slot].observations)
        for key, slot in SCENARIO_KEYS.items()
        if slot in bundle.datasets
    }
    manifest_text = f"# scenario bundle: {bundle.label}\n" + "".join(
        f"{key} = {key}.csv\n" for key in files
    )
    return SimulateResponse(label=bundle.label, files=files, manifest_text=manifest_text)


def _rule_expectation(request: DetectRequest) -> TrendExpectation:
    if (request.expect_path is None) == (request.expectations is None):
        raise ConfigError("rule detector needs exactly one of expect_path or inline expectations")
    if request.expect_path is not None:
        return load_expectation_file(request.expect_path)
    try:
        return TrendExpectation(
            frozenset(request.expectations.increasing),
            frozenset(request.expectations.decreasing),
            ExpectationSource.HARD_CODED,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def handle_detect(request: DetectRequest) -> DetectResponse:
    bundle = resolve_bundle(request)
    condition = Condition(request.condition)
    if request.detector == "rule":
        report = run_rule_based(bundle, condition, _rule_expectation(request), used_only=request.used_only)
    else:
        if request.heading_deg is None:
            raise ConfigError("pattern detector needs an antenna heading")
        report = run_pattern_based(
            bundle,
            condition,
            request.heading_deg,
            request.bank_deg,
            BoresightModel(request.model),
            min_margin_deg=request.margin_deg,
            used_only=request.used_only,
        )
    return DetectResponse(**report.to_json_dict())


def handle_summarize(request: SummarizeRequest) -> SummarizeResponse:
    bundle = resolve_bundle(request)
    summaries = summarize(bundle, Condition(request.condition), used_only=request.used_only)
    rows = [
        SummaryRow(
            svId=s.sv_id,
            meanLeft=s.mean_cno.get(Orientation.LEFT),
            meanFlat=s.mean_cno.get(Orientation.FLAT),
            meanRight=s.mean_cno.get(Orientation.RIGHT),
            meanAzim=s.mean_azim,
            meanElev=s.mean_elev,
            spreadDb=s.spread_db,
            varianceDb2=s.variance_db2,
            complete=s.complete,
            trend=s.trend.value if s.trend else None,
        )
        for s in summaries
    ]
    return SummarizeResponse(condition=request.condition, summaries=rows, csv=summaries_to_csv(summaries))


def handle_render(request: RenderRequest) -> str:
    bundle = resolve_bundle(request)
    condition = Condition(request.condition)
    summaries = summarize(bundle, condition)
    if request.plot == "sky":
        return render_sky_svg(
            summaries,
            title=f"sky plot ({condition.value})",
            cno_scale=(request.cno_scale_min, request.cno_scale_max),
        )
    return render_trends_svg(summaries, title=f"C/N0 trends ({condition.value})")


app = FastAPI(
    title="skyvane",
    description="GNSS spoofing detection from C/N0 trends across banked antenna orientations",
)

_ERROR_RESPONSES = {
    400: {"model": ErrorResponse},
    422: {"model": ErrorResponse},
}


@app.exception_handler(SkyvaneError)
async def _skyvane_error(request: Request, exc: SkyvaneError):
    return JSONResponse(status_code=422, content={"error": type(exc).__name__, "message": str(exc)})


@app.exception_handler(OSError)
async def _os_error(request: Request, exc: OSError):
    return JSONResponse(status_code=400, content={"error": type(exc).__name__, "message": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/simulate", response_model=SimulateResponse, responses=_ERROR_RESPONSES)
def simulate_endpoint(request: SimulateRequest) -> SimulateResponse:
    return handle_simulate(request)


@app.post("/detect", response_model=DetectResponse, responses=_ERROR_RESPONSES)
def detect_endpoint(request: DetectRequest) -> DetectResponse:
    return handle_detect(request)


@app.post("/summarize", response_model=SummarizeResponse, responses=_ERROR_RESPONSES)
def summarize_endpoint(request: SummarizeRequest) -> SummarizeResponse:
    return handle_summarize(request)


@app.post("/render", responses={**_ERROR_RESPONSES, 200: {"content": {"image/svg+xml": {}}}})
def render_endpoint(request: RenderRequest) -> Response:
    svg = handle_render(request)
    return Response(content=svg, media_type="image/svg+xml")
