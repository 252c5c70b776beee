"""Unit and property tests for the synthetic scenario generator."""

import os
import random
import stat

import pytest

from skyvane.aggregate import avg_cno
from skyvane.errors import ConfigError, CountTooLarge, EmptyDataset
from skyvane.geometry import BoresightModel, angular_separation, boresights, sph2cart
from skyvane.ingest import Condition, Orientation, ScenarioBundle, load_manifest
from skyvane.simulate import (
    PRN_POOL,
    GainModel,
    ScenarioConfig,
    SkyModel,
    SatPosition,
    SpooferModel,
    build_bundle,
    generate_sky,
    load_scenario_config,
    parse_scenario_config,
    simulate_bundle,
    write_bundle,
)


class TestGenerateSky:
    def test_deterministic_for_same_seed(self):
        assert generate_sky(1, 13) == generate_sky(1, 13)

    def test_different_seeds_differ(self):
        assert generate_sky(1, 13) != generate_sky(2, 13)

    def test_count_zero_rejected(self):
        with pytest.raises(ValueError):
            generate_sky(1, 0)

    def test_count_beyond_pool_rejected(self):
        with pytest.raises(CountTooLarge):
            generate_sky(1, len(PRN_POOL) + 1)

    def test_ids_unique_and_from_pool(self):
        sky = generate_sky(5, 20)
        ids = [s.sv_id for s in sky.satellites]
        assert len(set(ids)) == 20
        assert set(ids) <= set(PRN_POOL)

    def test_positions_in_documented_ranges(self):
        for seed in range(10):
            for sat in generate_sky(seed, 13).satellites:
                assert 0.0 <= sat.azim_deg < 360.0
                assert 10.0 <= sat.elev_deg <= 85.0

    def test_default_count_matches_typical_visibility(self):
        assert 12 <= len(generate_sky(0).satellites) <= 14


class TestSkyModelInvariants:
    def test_duplicate_ids_rejected(self):
        sats = (SatPosition(3, 10.0, 40.0), SatPosition(3, 20.0, 50.0))
        with pytest.raises(ValueError):
            SkyModel(sats)

    def test_empty_rejected(self):
        with pytest.raises(EmptyDataset):
            SkyModel(())

    def test_out_of_range_position_rejected(self):
        with pytest.raises(ValueError):
            SkyModel((SatPosition(3, 360.0, 40.0),))
        with pytest.raises(ValueError):
            SkyModel((SatPosition(3, 10.0, 95.0),))


def quiet_bundle(sky, heading=0.0, bank=45.0, model=BoresightModel.ROLL_TILT, spoofer=None):
    gain = GainModel(noise_sigma_db=0.0, rng_seed=0)
    spoofer = spoofer or SpooferModel(noise_sigma_db=0.0)
    return simulate_bundle(sky, gain, spoofer, heading, bank, model)


class TestSimulateBundle:
    def test_all_six_datasets_with_schema_constants(self):
        bundle = quiet_bundle(generate_sky(42, 13))
        assert len(bundle.datasets) == 6
        dataset = bundle.get(Condition.REAL, Orientation.FLAT)
        assert len(dataset.observations) == 13 * 13
        for obs in dataset.observations[:20]:
            assert obs.quality_ind == 4
            assert obs.sv_used is True

    def test_satellite_on_flat_boresight_gets_base_cno(self):
        # Zero separation means zero rolloff: the flat dataset reads the
        # base level exactly when noise is off.
        sky = SkyModel((SatPosition(5, 0.0, 90.0),))  # zenith = flat boresight under tilt
        bundle = quiet_bundle(sky)
        flat = bundle.get(Condition.REAL, Orientation.FLAT)
        assert all(obs.cno == 40.0 for obs in flat.observations)

    def test_spoofed_banked_rolloff_default_depth(self):
        # Spoofer on the flat boresight, tilt bank 45: banked separations are
        # the bank angle, so cno = base - depth * (45 / beamwidth).
        bundle = quiet_bundle(generate_sky(42, 13))
        left = avg_cno(bundle.get(Condition.SPOOFED, Orientation.LEFT))
        flat = avg_cno(bundle.get(Condition.SPOOFED, Orientation.FLAT))
        right = avg_cno(bundle.get(Condition.SPOOFED, Orientation.RIGHT))
        for sv in left:
            assert flat[sv] == pytest.approx(40.0, abs=1e-9)
            assert left[sv] == pytest.approx(40.0 - 2.0 * (45.0 / 90.0), abs=1e-9)
            assert right[sv] == left[sv]

    def test_spoofed_banked_rolloff_full_depth_parameterization(self):
        # With the spoofer rolloff raised to the clear-sky depth the banked
        # level lands at 40 - 12 * (45/90) = 34.
        spoofer = SpooferModel(noise_sigma_db=0.0, max_rolloff_db=12.0)
        bundle = quiet_bundle(generate_sky(42, 13), spoofer=spoofer)
        left = avg_cno(bundle.get(Condition.SPOOFED, Orientation.LEFT))
        flat = avg_cno(bundle.get(Condition.SPOOFED, Orientation.FLAT))
        for sv in left:
            assert left[sv] == pytest.approx(34.0, abs=1e-9)
            assert flat[sv] == pytest.approx(40.0, abs=1e-9)

    def test_spoofed_symmetry_exact_and_below_flat(self):
        # Noise off, spoofer on the flat boresight: banked values are exactly
        # equal to each other and strictly below flat, for every observation.
        bundle = quiet_bundle(generate_sky(7, 13), heading=123.0)
        left = bundle.get(Condition.SPOOFED, Orientation.LEFT).observations
        flat = bundle.get(Condition.SPOOFED, Orientation.FLAT).observations
        right = bundle.get(Condition.SPOOFED, Orientation.RIGHT).observations
        for lo, fo, ro in zip(left, flat, right):
            assert lo.cno == ro.cno
            assert lo.cno < fo.cno

    def test_real_sky_monotone_in_separation_when_noise_off(self):
        # Strictly ordered separations must give strictly ordered cno unless
        # the rolloff cap flattens both of a pair beyond the beamwidth.
        rng = random.Random(99)
        for seed in rng.sample(range(1000), 20):
            sky = generate_sky(seed, 13)
            bundle = quiet_bundle(sky)
            antenna = boresights(0.0, 45.0, BoresightModel.ROLL_TILT)
            means = {
                o: avg_cno(bundle.get(Condition.REAL, o)) for o in Orientation
            }
            for sat in sky.satellites:
                vec = sph2cart(sat.azim_deg, sat.elev_deg)
                seps = {
                    Orientation.LEFT: angular_separation(antenna.left, vec),
                    Orientation.FLAT: angular_separation(antenna.flat, vec),
                    Orientation.RIGHT: angular_separation(antenna.right, vec),
                }
                capped = {o: min(seps[o], 90.0) for o in Orientation}
                if capped[Orientation.LEFT] > capped[Orientation.FLAT] > capped[Orientation.RIGHT]:
                    assert (
                        means[Orientation.LEFT][sat.sv_id]
                        < means[Orientation.FLAT][sat.sv_id]
                        < means[Orientation.RIGHT][sat.sv_id]
                    )
                if capped[Orientation.LEFT] < capped[Orientation.FLAT] < capped[Orientation.RIGHT]:
                    assert (
                        means[Orientation.LEFT][sat.sv_id]
                        > means[Orientation.FLAT][sat.sv_id]
                        > means[Orientation.RIGHT][sat.sv_id]
                    )

    def test_spoofed_spreads_degenerate_real_spreads_vary(self):
        sky = generate_sky(42, 13)
        gain = GainModel(noise_sigma_db=0.5, rng_seed=42)
        bundle = simulate_bundle(sky, gain, SpooferModel(), 0.0)
        spoofed_means = {
            o: avg_cno(bundle.get(Condition.SPOOFED, o)) for o in Orientation
        }
        real_means = {o: avg_cno(bundle.get(Condition.REAL, o)) for o in Orientation}

        def spreads(means):
            out = []
            for sv in means[Orientation.FLAT]:
                triple = [means[o][sv] for o in Orientation]
                out.append(max(triple) - min(triple))
            return out

        spoofed_spreads = spreads(spoofed_means)
        real_spreads = spreads(real_means)
        # Every spoofed PRN shares the deterministic 1.0 dB spread; noise on
        # the 13-sample means stays well inside +-0.5 dB at 3 sigma.
        assert all(abs(s - 1.0) < 0.5 for s in spoofed_spreads)
        assert max(real_spreads) - min(real_spreads) > 2.0

    def test_custom_spoofer_direction_used(self):
        sky = SkyModel((SatPosition(5, 0.0, 45.0),))
        spoofer = SpooferModel(source_azim_deg=90.0, source_elev_deg=45.0, noise_sigma_db=0.0)
        bundle = quiet_bundle(sky, spoofer=spoofer)
        # Under tilt at heading 0, the right boresight is exactly at (90, 45),
        # so the spoofed right dataset reads the base level.
        right = bundle.get(Condition.SPOOFED, Orientation.RIGHT)
        assert all(obs.cno == pytest.approx(40.0, abs=1e-9) for obs in right.observations)

    def test_partial_spoofer_direction_rejected(self):
        with pytest.raises(ValueError):
            SpooferModel(source_azim_deg=90.0)


class TestWriteBundle:
    def test_round_trip_through_manifest(self, tmp_path):
        bundle = quiet_bundle(generate_sky(42, 13))
        manifest = write_bundle(bundle, tmp_path / "out")
        loaded = load_manifest(manifest)
        assert set(loaded.datasets) == set(bundle.datasets)
        for slot, dataset in bundle.datasets.items():
            reloaded = loaded.datasets[slot]
            assert len(reloaded.observations) == len(dataset.observations)
            for a, b in zip(dataset.observations, reloaded.observations):
                assert a.timestamp == b.timestamp
                assert a.sv_id == b.sv_id
                assert b.cno == pytest.approx(a.cno, abs=5e-4)

    def test_empty_bundle_refused(self, tmp_path):
        with pytest.raises(EmptyDataset):
            write_bundle(ScenarioBundle(datasets={}, label="empty"), tmp_path)

    def test_unwritable_directory_leaves_no_manifest(self, tmp_path):
        if os.geteuid() == 0:
            pytest.skip("permission bits do not bind as root")
        locked = tmp_path / "locked"
        locked.mkdir()
        locked.chmod(stat.S_IRUSR | stat.S_IXUSR)
        try:
            with pytest.raises(OSError):
                write_bundle(quiet_bundle(generate_sky(1, 3)), locked / "inner")
            assert not (locked / "inner" / "manifest.txt").exists()
        finally:
            locked.chmod(stat.S_IRWXU)

    def test_manifest_written_last(self, tmp_path, monkeypatch):
        # Force the final CSV write to fail and check no manifest appears.
        import skyvane.simulate as simulate_module

        calls = {"n": 0}
        original = simulate_module.write_observations_csv

        def flaky(observations, path):
            calls["n"] += 1
            if calls["n"] == 6:
                raise OSError("disk full")
            original(observations, path)

        monkeypatch.setattr(simulate_module, "write_observations_csv", flaky)
        with pytest.raises(OSError):
            write_bundle(quiet_bundle(generate_sky(1, 3)), tmp_path / "out")
        assert not (tmp_path / "out" / "manifest.txt").exists()


class TestDeterminism:
    def test_byte_identical_csv_output(self, tmp_path):
        config = ScenarioConfig(seed=42)
        for run in ("a", "b"):
            write_bundle(build_bundle(config), tmp_path / run)
        for name in [p.name for p in (tmp_path / "a").iterdir()]:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestScenarioConfig:
    def test_defaults_from_empty_text(self):
        config = parse_scenario_config("# all defaults\n")
        assert config == ScenarioConfig()

    def test_values_parsed(self):
        text = "seed = 7\nsatellite_count = 12\nmodel = sweep\nheading_deg = 270.5\nlabel = trial\n"
        config = parse_scenario_config(text)
        assert config.seed == 7
        assert config.satellite_count == 12
        assert config.model is BoresightModel.AZIMUTH_SWEEP
        assert config.heading_deg == 270.5
        assert config.label == "trial"

    def test_unknown_key_named_in_error(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_scenario_config("bad_knob = 3\n")
        assert "bad_knob" in str(exc_info.value)

    def test_bad_value_named_in_error(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_scenario_config("seed = banana\n")
        assert "seed" in str(exc_info.value)

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError):
            parse_scenario_config("seed = 1\nseed = 2\n")

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "scenario.cfg"
        path.write_text("seed = 5\n", encoding="utf-8")
        assert load_scenario_config(path).seed == 5

    def test_missing_file_is_config_error(self, tmp_path):
        with pytest.raises(ConfigError):
            load_scenario_config(tmp_path / "nope.cfg")

    def test_invalid_model_value(self):
        with pytest.raises(ConfigError):
            parse_scenario_config("model = upside_down\n")
