"""HTTP surface tests: routes, wire formats, and error mapping."""

import json

import pytest
from fastapi.testclient import TestClient

from skyvane.ingest import observations_to_csv_text
from skyvane.service.app import app
from skyvane.simulate import ScenarioConfig, build_bundle, write_bundle
from skyvane.ingest import SCENARIO_KEYS

client = TestClient(app, raise_server_exceptions=False)


@pytest.fixture(scope="module")
def bundle_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("service-bundle")
    bundle = build_bundle(ScenarioConfig(seed=42))
    manifest = write_bundle(bundle, out)
    return manifest


@pytest.fixture(scope="module")
def inline_datasets():
    bundle = build_bundle(ScenarioConfig(seed=42))
    return {
        key: observations_to_csv_text(bundle.datasets[slot].observations)
        for key, slot in SCENARIO_KEYS.items()
    }


def detect_payload(manifest, **overrides):
    payload = {
        "manifest_path": str(manifest),
        "detector": "pattern",
        "condition": "spoofed",
        "heading_deg": 0.0,
        "model": "tilt",
        "margin_deg": 5.0,
    }
    payload.update(overrides)
    return payload


class TestHealth:
    def test_health(self):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestDetectEndpoint:
    def test_spoofed_bundle_detected(self, bundle_dir):
        response = client.post("/detect", json=detect_payload(bundle_dir))
        assert response.status_code == 200
        report = response.json()
        assert report["classification"] == "spoofed"
        assert report["detector"] == "pattern"
        assert report["violations"]
        assert report["checkedPrns"] > 0

    def test_real_bundle_clean(self, bundle_dir):
        response = client.post("/detect", json=detect_payload(bundle_dir, condition="real"))
        assert response.status_code == 200
        assert response.json()["classification"] == "non-spoofed"

    def test_inline_datasets_equivalent_to_manifest(self, bundle_dir, inline_datasets):
        via_path = client.post("/detect", json=detect_payload(bundle_dir)).json()
        via_inline = client.post(
            "/detect", json={**detect_payload(bundle_dir), "manifest_path": None, "datasets": inline_datasets}
        ).json()
        assert via_inline == via_path

    def test_rule_detector_with_inline_expectations(self, bundle_dir):
        payload = detect_payload(
            bundle_dir,
            detector="rule",
            expectations={"increasing": [300], "decreasing": [301]},
            heading_deg=None,
        )
        response = client.post("/detect", json=payload)
        assert response.status_code == 200
        report = response.json()
        assert report["classification"] == "non-spoofed"
        assert report["checkedPrns"] == 0
        assert any(w.startswith("LowEvidence") for w in report["warnings"])

    def test_rule_detector_without_expectations_rejected(self, bundle_dir):
        payload = detect_payload(bundle_dir, detector="rule", heading_deg=None)
        response = client.post("/detect", json=payload)
        assert response.status_code == 422
        assert response.json()["error"] == "ConfigError"

    def test_pattern_without_heading_rejected(self, bundle_dir):
        response = client.post("/detect", json=detect_payload(bundle_dir, heading_deg=None))
        assert response.status_code == 422

    def test_missing_orientation_maps_to_422(self, bundle_dir, inline_datasets):
        partial = {k: v for k, v in inline_datasets.items() if k != "s_flat"}
        response = client.post(
            "/detect", json={**detect_payload(bundle_dir), "manifest_path": None, "datasets": partial}
        )
        assert response.status_code == 422
        body = response.json()
        assert body["error"] == "MissingOrientation"
        assert "flat" in body["message"]

    def test_unknown_scenario_key_rejected(self, bundle_dir, inline_datasets):
        bad = dict(inline_datasets)
        bad["ns_upsidedown"] = bad["ns_flat"]
        response = client.post(
            "/detect", json={**detect_payload(bundle_dir), "manifest_path": None, "datasets": bad}
        )
        assert response.status_code == 422
        assert response.json()["error"] == "UnknownScenarioKey"

    def test_bad_manifest_path_maps_to_422(self):
        response = client.post("/detect", json=detect_payload("/nonexistent/manifest.txt"))
        assert response.status_code == 422
        assert response.json()["error"] == "ManifestError"

    def test_both_sources_rejected(self, bundle_dir, inline_datasets):
        response = client.post(
            "/detect", json={**detect_payload(bundle_dir), "datasets": inline_datasets}
        )
        assert response.status_code == 422
        assert response.json()["error"] == "ConfigError"


class TestSimulateEndpoint:
    def test_inline_response_carries_all_six_files(self):
        response = client.post("/simulate", json={"settings": {"seed": 42}})
        assert response.status_code == 200
        body = response.json()
        assert set(body["files"]) == set(SCENARIO_KEYS)
        assert body["files"]["ns_flat"].startswith("timestamp,svId,elev,azim,cno,qualityInd,svUsed")
        assert body["manifest_text"].count("=") == 6

    def test_out_dir_writes_manifest(self, tmp_path):
        response = client.post(
            "/simulate", json={"settings": {"seed": 1}, "out_dir": str(tmp_path / "sim")}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["manifest_path"].endswith("manifest.txt")
        assert len(body["csv_paths"]) == 6

    def test_config_error_names_key(self, tmp_path):
        config = tmp_path / "bad.cfg"
        config.write_text("bad_knob = 1\n", encoding="utf-8")
        response = client.post("/simulate", json={"config_path": str(config)})
        assert response.status_code == 422
        assert "bad_knob" in response.json()["message"]


class TestSummarizeEndpoint:
    def test_summaries_and_csv(self, bundle_dir):
        response = client.post(
            "/summarize", json={"manifest_path": str(bundle_dir), "condition": "real"}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["condition"] == "real"
        assert len(body["summaries"]) == 13
        assert body["csv"].startswith("svId,meanLeft,meanFlat,meanRight,spreadDb,varianceDb2,trend")
        for row in body["summaries"]:
            assert row["complete"] is True
            assert row["spreadDb"] >= 0


class TestRenderEndpoint:
    def test_sky_svg_content_type(self, bundle_dir):
        response = client.post(
            "/render", json={"manifest_path": str(bundle_dir), "plot": "sky", "condition": "real"}
        )
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("image/svg+xml")
        assert response.text.startswith("<svg ")

    def test_trends_svg(self, bundle_dir):
        response = client.post(
            "/render", json={"manifest_path": str(bundle_dir), "plot": "trends", "condition": "spoofed"}
        )
        assert response.status_code == 200
        assert "<polyline " in response.text


class TestReportSchemaValidation:
    def test_detect_response_validates_against_published_schema(self, bundle_dir):
        import jsonschema
        from importlib import resources

        schema = json.loads(
            resources.files("skyvane").joinpath("data/report_schema.json").read_text(encoding="utf-8")
        )
        for condition in ("real", "spoofed"):
            report = client.post("/detect", json=detect_payload(bundle_dir, condition=condition)).json()
            jsonschema.validate(report, schema)
