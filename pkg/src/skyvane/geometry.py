"""Direction vectors for satellites and antenna boresights.

All directions live in a local east-north-up frame: +x east, +y north,
+z up. Azimuth is measured in degrees clockwise from true north, elevation
in degrees above the horizon, so due north on the horizon is (0, 1, 0) and
zenith is (0, 0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import BankOutOfRange, NonFiniteInput


class UnitVector3(NamedTuple):
    x: float
    y: float
    z: float


class BoresightModel(str, Enum):
    """How the banked boresights are derived from the antenna heading.

    AZIMUTH_SWEEP keeps all three boresights on the horizon and swings the
    banked ones by +-bank degrees of azimuth. ROLL_TILT models a patch
    antenna that points at zenith when level and rolls about the heading
    axis when the platform banks.
    """

    AZIMUTH_SWEEP = "sweep"
    ROLL_TILT = "tilt"


@dataclass(frozen=True)
class BoresightSet:
    """Boresight directions for the left-bank, flat, and right-bank poses."""

    left: UnitVector3
    flat: UnitVector3
    right: UnitVector3
    heading_deg: float
    bank_deg: float
    model: BoresightModel


def sph2cart(azim_deg: float, elev_deg: float) -> UnitVector3:
    """Unit direction vector for an azimuth/elevation pair in degrees."""
    if not (math.isfinite(azim_deg) and math.isfinite(elev_deg)):
        raise NonFiniteInput(f"direction angles must be finite, got ({azim_deg}, {elev_deg})")
    az = math.radians(azim_deg % 360.0)
    el = math.radians(elev_deg)
    cos_el = math.cos(el)
    return UnitVector3(math.sin(az) * cos_el, math.cos(az) * cos_el, math.sin(el))


def dot(a: UnitVector3, b: UnitVector3) -> float:
    return a.x * b.x + a.y * b.y + a.z * b.z


def angular_separation(a: UnitVector3, b: UnitVector3) -> float:
    """Great-circle angle between two unit vectors, in degrees within [0, 180].

    The inner product is clamped to [-1, 1] before the arccosine so that
    floating-point drift on nearly parallel vectors cannot raise a domain
    error.
    """
    return math.degrees(math.acos(max(-1.0, min(1.0, dot(a, b)))))


def boresights(
    heading_deg: float,
    bank_deg: float = 45.0,
    model: BoresightModel = BoresightModel.AZIMUTH_SWEEP,
) -> BoresightSet:
    """Antenna boresight set for a heading, bank magnitude, and bank model.

    Under AZIMUTH_SWEEP the flat boresight sits on the horizon at the
    heading azimuth and the banked ones at heading -/+ bank. Under
    ROLL_TILT the flat boresight is zenith and banking rolls it down by
    the bank angle toward heading -/+ 90 degrees, which keeps the
    flat-to-banked separation equal to the bank angle.
    """
    if not 0.0 < bank_deg < 90.0:
        raise BankOutOfRange(f"bank must be inside (0, 90) degrees, got {bank_deg}")
    if model is BoresightModel.AZIMUTH_SWEEP:
        left = sph2cart((heading_deg - bank_deg) % 360.0, 0.0)
        flat = sph2cart(heading_deg, 0.0)
        right = sph2cart((heading_deg + bank_deg) % 360.0, 0.0)
    else:
        left = sph2cart((heading_deg - 90.0) % 360.0, 90.0 - bank_deg)
        flat = sph2cart(heading_deg, 90.0)
        right = sph2cart((heading_deg + 90.0) % 360.0, 90.0 - bank_deg)
    return BoresightSet(left=left, flat=flat, right=right,
                        heading_deg=heading_deg, bank_deg=bank_deg, model=model)
