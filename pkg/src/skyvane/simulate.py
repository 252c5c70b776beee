"""Synthetic six-scenario bundle generation with ground-truth labels.

The clear-sky model gives every satellite a C/N0 that falls off with the
angular separation between its direction and the antenna boresight of the
current orientation, so physically banked boresights produce monotone
cross-orientation trends. The spoofed model reuses the same rolloff shape
but points every PRN at one emitter direction (by default the flat
boresight), with a much shallower depth: a cabled injection is nearly
orientation-independent, leaving only a small center-peaked residual and
per-PRN spreads in the sub-1.5 dB regime instead of the several-dB spreads
of a real sky.

Generation is deterministic: one integer seed fixes both the satellite
placement and the Gaussian noise stream, and identical configurations
write byte-identical CSV files.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

from .errors import ConfigError, CountTooLarge, EmptyDataset
from .geometry import BoresightModel, UnitVector3, angular_separation, boresights, sph2cart
from .ingest import (
    SCENARIO_KEYS,
    Condition,
    Orientation,
    OrientationDataset,
    SatObservation,
    ScenarioBundle,
    iter_keyvalue_lines,
    write_observations_csv,
)

#: GPS PRNs 1-32 plus the SBAS range 133-138 seen in typical logs.
PRN_POOL: tuple[int, ...] = tuple(range(1, 33)) + tuple(range(133, 139))

#: Fixed synthetic collection start; epochs advance from here.
EPOCH_START = datetime(2025, 1, 1, 0, 0, 0)


@dataclass(frozen=True)
class SatPosition:
    sv_id: int
    azim_deg: float
    elev_deg: float


@dataclass(frozen=True)
class SkyModel:
    """Static satellite placements sampled over a short collection window."""

    satellites: tuple[SatPosition, ...]
    epoch_count: int = 13  # one sample at t=0 plus every 5 s through 60 s
    epoch_interval_s: float = 5.0

    def __post_init__(self):
        if not self.satellites:
            raise EmptyDataset("sky model needs at least one satellite")
        if self.epoch_count < 1:
            raise ValueError(f"epoch_count must be >= 1, got {self.epoch_count}")
        if self.epoch_interval_s <= 0:
            raise ValueError(f"epoch_interval_s must be > 0, got {self.epoch_interval_s}")
        ids = [s.sv_id for s in self.satellites]
        if len(set(ids)) != len(ids):
            raise ValueError("satellite ids must be unique")
        for sat in self.satellites:
            if not 0.0 <= sat.azim_deg < 360.0:
                raise ValueError(f"PRN {sat.sv_id}: azimuth must be within [0, 360), got {sat.azim_deg}")
            if not 0.0 <= sat.elev_deg <= 90.0:
                raise ValueError(f"PRN {sat.sv_id}: elevation must be within [0, 90], got {sat.elev_deg}")


@dataclass(frozen=True)
class GainModel:
    """Antenna reception model: base level minus an angular rolloff.

    Received C/N0 is ``base - max_rolloff * min(1, (theta/beamwidth)^exponent)
    + noise`` with theta the boresight-to-source separation, clamped into
    [0, 99] dB-Hz. Defaults give 12 dB of rolloff spread linearly over 90
    degrees with 0.5 dB per-sample Gaussian noise.
    """

    base_cno_dbhz: float = 40.0
    max_rolloff_db: float = 12.0
    rolloff_exponent: float = 1.0
    beamwidth_deg: float = 90.0
    noise_sigma_db: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.base_cno_dbhz <= 99.0:
            raise ValueError(f"base_cno_dbhz must be within [0, 99], got {self.base_cno_dbhz}")
        if self.max_rolloff_db < 0:
            raise ValueError(f"max_rolloff_db must be >= 0, got {self.max_rolloff_db}")
        if self.rolloff_exponent <= 0:
            raise ValueError(f"rolloff_exponent must be > 0, got {self.rolloff_exponent}")
        if self.beamwidth_deg <= 0:
            raise ValueError(f"beamwidth_deg must be > 0, got {self.beamwidth_deg}")
        if self.noise_sigma_db < 0:
            raise ValueError(f"noise_sigma_db must be >= 0, got {self.noise_sigma_db}")


@dataclass(frozen=True)
class SpooferModel:
    """Single-emitter model shared by every PRN in the spoofed datasets.

    A direction of None places the emitter on the flat boresight, i.e.
    zero separation when the antenna is level. ``max_rolloff_db`` is the
    residual orientation dependence of the injected signal; it is kept
    shallow (2 dB default) because a cabled, shielded injection largely
    bypasses the antenna's over-the-air pattern.
    """

    source_azim_deg: float | None = None
    source_elev_deg: float | None = None
    max_rolloff_db: float = 2.0
    noise_sigma_db: float = 0.3

    def __post_init__(self):
        if (self.source_azim_deg is None) != (self.source_elev_deg is None):
            raise ValueError("give both spoofer azimuth and elevation, or neither")
        if self.max_rolloff_db < 0:
            raise ValueError(f"max_rolloff_db must be >= 0, got {self.max_rolloff_db}")
        if self.noise_sigma_db < 0:
            raise ValueError(f"noise_sigma_db must be >= 0, got {self.noise_sigma_db}")


def generate_sky(seed: int, count: int = 13) -> SkyModel:
    """Deterministic random sky: uniform azimuths, elevations in [10, 85].

    PRN ids are drawn without replacement from GPS 1-32 plus SBAS 133-138.
    """
    if count < 1:
        raise ValueError(f"satellite count must be >= 1, got {count}")
    if count > len(PRN_POOL):
        raise CountTooLarge(f"at most {len(PRN_POOL)} unique PRN ids are available, asked for {count}")
    rng = random.Random(seed)
    ids = rng.sample(PRN_POOL, count)
    satellites = [SatPosition(sv, rng.uniform(0.0, 360.0), rng.uniform(10.0, 85.0)) for sv in ids]
    satellites.sort(key=lambda s: s.sv_id)
    return SkyModel(tuple(satellites))


def _rolloff_db(theta_deg: float, max_rolloff_db: float, beamwidth_deg: float, exponent: float) -> float:
    return max_rolloff_db * min(1.0, (theta_deg / beamwidth_deg) ** exponent)


def simulate_bundle(
    sky: SkyModel,
    gain: GainModel,
    spoofer: SpooferModel,
    heading_deg: float,
    bank_deg: float = 45.0,
    model: BoresightModel = BoresightModel.ROLL_TILT,
    label: str = "synthetic",
) -> ScenarioBundle:
    """Generate all six ground-truth-labeled datasets for one sky.

    ROLL_TILT is the default here because the simulator models physical
    antenna tilt; the source direction for the clear-sky datasets is each
    satellite, for the spoofed datasets the single emitter. Timestamps are
    synthetic, ``qualityInd`` is fixed at 4 and ``svUsed`` at 1.
    """
    antenna = boresights(heading_deg, bank_deg, model)
    orientation_vec = {
        Orientation.LEFT: antenna.left,
        Orientation.FLAT: antenna.flat,
        Orientation.RIGHT: antenna.right,
    }
    if spoofer.source_azim_deg is None:
        spoofer_vec: UnitVector3 = antenna.flat
    else:
        spoofer_vec = sph2cart(spoofer.source_azim_deg, spoofer.source_elev_deg)

    timestamps = [EPOCH_START + timedelta(seconds=i * sky.epoch_interval_s) for i in range(sky.epoch_count)]
    rng = random.Random(gain.rng_seed)

    datasets: dict[tuple[Condition, Orientation], OrientationDataset] = {}
    for key, (condition, orientation) in SCENARIO_KEYS.items():
        boresight = orientation_vec[orientation]
        spoofed = condition is Condition.SPOOFED
        sigma = spoofer.noise_sigma_db if spoofed else gain.noise_sigma_db
        rolloff_depth = spoofer.max_rolloff_db if spoofed else gain.max_rolloff_db

        # Positions are static, so the deterministic part is fixed per PRN.
        level: dict[int, float] = {}
        for sat in sky.satellites:
            source = spoofer_vec if spoofed else sph2cart(sat.azim_deg, sat.elev_deg)
            theta = angular_separation(boresight, source)
            level[sat.sv_id] = gain.base_cno_dbhz - _rolloff_db(
                theta, rolloff_depth, gain.beamwidth_deg, gain.rolloff_exponent
            )

        rows: list[SatObservation] = []
        for ts in timestamps:
            for sat in sky.satellites:
                cno = level[sat.sv_id] + rng.gauss(0.0, sigma)
                cno = min(99.0, max(0.0, cno))
                rows.append(SatObservation(ts, sat.sv_id, sat.elev_deg, sat.azim_deg, cno, 4, True))
        datasets[(condition, orientation)] = OrientationDataset(
            orientation, tuple(rows), source_path=f"<sim:{key}>"
        )
    return ScenarioBundle(datasets=datasets, label=label)


def write_bundle(bundle: ScenarioBundle, directory: str | Path) -> Path:
    """Write a bundle's CSVs plus a manifest referencing them.

    The manifest is written last, after every CSV, so a failed write never
    leaves a manifest pointing at missing files. Returns the manifest path.
    """
    if not bundle.datasets:
        raise EmptyDataset("refusing to write a manifest with zero scenario entries")
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    lines = [f"# scenario bundle: {bundle.label}"]
    for key, slot in SCENARIO_KEYS.items():
        dataset = bundle.datasets.get(slot)
        if dataset is None:
            continue
        write_observations_csv(dataset.observations, out / f"{key}.csv")
        lines.append(f"{key} = {key}.csv")
    manifest = out / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to generate one synthetic bundle.

    ``seed`` drives both the satellite placement and the noise stream.
    """

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
    spoofer_azim_deg: float | None = None
    spoofer_elev_deg: float | None = None
    heading_deg: float = 0.0
    bank_deg: float = 45.0
    model: BoresightModel = BoresightModel.ROLL_TILT
    label: str = "synthetic"


def _parse_model(value: str) -> BoresightModel:
    try:
        return BoresightModel(value)
    except ValueError:
        raise ValueError(f"expected 'sweep' or 'tilt', got {value!r}") from None


_CONFIG_PARSERS = {
    "seed": int,
    "satellite_count": int,
    "epoch_count": int,
    "epoch_interval_s": float,
    "base_cno_dbhz": float,
    "max_rolloff_db": float,
    "rolloff_exponent": float,
    "beamwidth_deg": float,
    "noise_sigma_db": float,
    "spoof_rolloff_db": float,
    "spoof_noise_sigma_db": float,
    "spoofer_azim_deg": float,
    "spoofer_elev_deg": float,
    "heading_deg": float,
    "bank_deg": float,
    "model": _parse_model,
    "label": str,
}


def parse_scenario_config(text: str, *, source: str = "<config>") -> ScenarioConfig:
    values: dict = {}
    try:
        for line_number, key, value in iter_keyvalue_lines(text):
            if key not in _CONFIG_PARSERS:
                raise ConfigError(f"{source}:{line_number}: unknown config key {key!r}")
            if key in values:
                raise ConfigError(f"{source}:{line_number}: config key {key!r} given twice")
            try:
                values[key] = _CONFIG_PARSERS[key](value)
            except ValueError as exc:
                raise ConfigError(f"{source}:{line_number}: bad value for {key!r}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    return ScenarioConfig(**values)


def load_scenario_config(path: str | Path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_scenario_config(text, source=str(path))


def build_bundle(config: ScenarioConfig) -> ScenarioBundle:
    """Turn one scenario config into a simulated bundle."""
    sky = generate_sky(config.seed, config.satellite_count)
    sky = SkyModel(sky.satellites, config.epoch_count, config.epoch_interval_s)
    try:
        gain = GainModel(
            base_cno_dbhz=config.base_cno_dbhz,
            max_rolloff_db=config.max_rolloff_db,
            rolloff_exponent=config.rolloff_exponent,
            beamwidth_deg=config.beamwidth_deg,
            noise_sigma_db=config.noise_sigma_db,
            rng_seed=config.seed,
        )
        spoofer = SpooferModel(
            source_azim_deg=config.spoofer_azim_deg,
            source_elev_deg=config.spoofer_elev_deg,
            max_rolloff_db=config.spoof_rolloff_db,
            noise_sigma_db=config.spoof_noise_sigma_db,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return simulate_bundle(
        sky, gain, spoofer, config.heading_deg, config.bank_deg, config.model, label=config.label
    )
