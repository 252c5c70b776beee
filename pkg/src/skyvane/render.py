"""Dependency-free SVG plots of per-PRN summaries.

Two plot kinds mirror the usual diagnostics for this data: a polar sky
plot (one panel per orientation, azimuth clockwise from north at the top,
zenith at the center, markers colored and sized by mean C/N0) and a trend
chart with one left/flat/right polyline per PRN. Output is plain SVG text
built with fixed-precision coordinates, so identical inputs render
byte-identical files.
"""

from __future__ import annotations

import math

from .aggregate import PrnSummary
from .errors import EmptyDataset
from .ingest import Orientation

#: Default C/N0 color-scale bounds in dB-Hz.
DEFAULT_CNO_SCALE = (20.0, 50.0)

# Low -> mid -> high color stops (blue, pale yellow, red).
_COLOR_STOPS = ((49, 54, 149), (255, 255, 191), (165, 0, 38))

_ORIENTATION_TITLES = {
    Orientation.LEFT: "left bank",
    Orientation.FLAT: "flat",
    Orientation.RIGHT: "right bank",
}

_PALETTE = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
    "#e6ab02", "#a6761d", "#666666", "#386cb0", "#f0027f",
)


def _cno_fraction(cno: float, lo: float, hi: float) -> float:
    if hi <= lo:
        return 0.5
    return min(1.0, max(0.0, (cno - lo) / (hi - lo)))


def _cno_color(cno: float, lo: float, hi: float) -> str:
    t = _cno_fraction(cno, lo, hi)
    if t <= 0.5:
        a, b, u = _COLOR_STOPS[0], _COLOR_STOPS[1], t * 2.0
    else:
        a, b, u = _COLOR_STOPS[1], _COLOR_STOPS[2], (t - 0.5) * 2.0
    rgb = tuple(round(a[i] + (b[i] - a[i]) * u) for i in range(3))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _sky_xy(center_x: float, center_y: float, radius: float, azim: float, elev: float) -> tuple[float, float]:
    # North up, azimuth clockwise; zenith maps to the center, horizon to the rim.
    r = radius * (90.0 - elev) / 90.0
    az = math.radians(azim)
    return center_x + r * math.sin(az), center_y - r * math.cos(az)


def render_sky_svg(
    summaries: list[PrnSummary],
    *,
    title: str = "sky plot",
    cno_scale: tuple[float, float] = DEFAULT_CNO_SCALE,
) -> str:
    """Three polar panels (left/flat/right), markers from mean C/N0.

    PRNs without a sky position are skipped; a PRN missing from an
    orientation simply has no marker in that panel.
    """
    plotted = [s for s in summaries if s.mean_azim is not None and s.mean_elev is not None]
    if not plotted:
        raise EmptyDataset("no PRNs with sky positions to plot")
    lo, hi = cno_scale

    panel_w, radius = 300.0, 118.0
    top, height = 58.0, 410.0
    width = panel_w * 3 + 40.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{title}</text>',
    ]
    for index, orientation in enumerate(Orientation):
        cx = 20.0 + panel_w * index + panel_w / 2
        cy = top + radius + 24.0
        parts.append(
            f'<text x="{cx:.1f}" y="{top:.1f}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="13">{_ORIENTATION_TITLES[orientation]}</text>'
        )
        for ring_elev in (0.0, 30.0, 60.0):
            ring_r = radius * (90.0 - ring_elev) / 90.0
            parts.append(
                f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{ring_r:.1f}" fill="none" '
                f'stroke="#cccccc" stroke-width="1"/>'
            )
        parts.append(
            f'<line x1="{cx - radius:.1f}" y1="{cy:.1f}" x2="{cx + radius:.1f}" y2="{cy:.1f}" '
            f'stroke="#eeeeee" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{cx:.1f}" y1="{cy - radius:.1f}" x2="{cx:.1f}" y2="{cy + radius:.1f}" '
            f'stroke="#eeeeee" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{cx:.1f}" y="{cy - radius - 4:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10" fill="#888888">N</text>'
        )
        for s in plotted:
            cno = s.mean_cno.get(orientation)
            if cno is None:
                continue
            x, y = _sky_xy(cx, cy, radius, s.mean_azim, s.mean_elev)
            marker_r = 2.5 + 5.5 * _cno_fraction(cno, lo, hi)
            parts.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{marker_r:.2f}" '
                f'fill="{_cno_color(cno, lo, hi)}" stroke="#333333" stroke-width="0.6"/>'
            )
            parts.append(
                f'<text x="{x + marker_r + 2:.2f}" y="{y + 3:.2f}" font-family="sans-serif" '
                f'font-size="9" fill="#333333">{s.sv_id}</text>'
            )
    legend_y = height - 28.0
    parts.append(
        f'<text x="20" y="{legend_y:.1f}" font-family="sans-serif" font-size="11" '
        f'fill="#333333">mean C/N0 scale: {lo:.0f} dB-Hz</text>'
    )
    for i in range(24):
        t = i / 23.0
        parts.append(
            f'<rect x="{170 + i * 6:.1f}" y="{legend_y - 10:.1f}" width="6" height="12" '
            f'fill="{_cno_color(lo + t * (hi - lo), lo, hi)}"/>'
        )
    parts.append(
        f'<text x="{170 + 24 * 6 + 8:.1f}" y="{legend_y:.1f}" font-family="sans-serif" '
        f'font-size="11" fill="#333333">{hi:.0f} dB-Hz</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_trends_svg(
    summaries: list[PrnSummary],
    *,
    title: str = "C/N0 trends across orientations",
) -> str:
    """One polyline per complete PRN across the left/flat/right means."""
    complete = [s for s in summaries if s.complete]
    if not complete:
        raise EmptyDataset("no PRNs observed in all three orientations to plot")

    width, height = 640.0, 420.0
    left_m, right_m, top_m, bottom_m = 64.0, 110.0, 48.0, 44.0
    plot_w = width - left_m - right_m
    plot_h = height - top_m - bottom_m

    values = [v for s in complete for v in s.mean_cno.values()]
    y_lo = math.floor(min(values)) - 1.0
    y_hi = math.ceil(max(values)) + 1.0
    if y_hi - y_lo < 4.0:  # keep a readable axis for near-flat data
        pad = (4.0 - (y_hi - y_lo)) / 2.0
        y_lo -= pad
        y_hi += pad

    def y_of(value: float) -> float:
        return top_m + plot_h * (y_hi - value) / (y_hi - y_lo)

    x_of = {
        Orientation.LEFT: left_m,
        Orientation.FLAT: left_m + plot_w / 2,
        Orientation.RIGHT: left_m + plot_w,
    }

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="26" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{title}</text>',
    ]
    tick_step = max(1.0, round((y_hi - y_lo) / 6.0))
    tick = math.ceil(y_lo / tick_step) * tick_step
    while tick <= y_hi:
        y = y_of(tick)
        parts.append(
            f'<line x1="{left_m:.1f}" y1="{y:.2f}" x2="{left_m + plot_w:.1f}" y2="{y:.2f}" '
            f'stroke="#e6e6e6" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left_m - 8:.1f}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10" fill="#555555">{tick:.0f}</text>'
        )
        tick += tick_step
    for orientation, x in x_of.items():
        parts.append(
            f'<line x1="{x:.1f}" y1="{top_m:.1f}" x2="{x:.1f}" y2="{top_m + plot_h:.1f}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{height - 16:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{_ORIENTATION_TITLES[orientation]}</text>'
        )
    parts.append(
        f'<text x="18" y="{top_m + plot_h / 2:.1f}" font-family="sans-serif" font-size="11" '
        f'fill="#555555" transform="rotate(-90 18 {top_m + plot_h / 2:.1f})" '
        f'text-anchor="middle">mean C/N0 (dB-Hz)</text>'
    )
    for index, s in enumerate(complete):
        color = _PALETTE[index % len(_PALETTE)]
        points = " ".join(
            f"{x_of[o]:.1f},{y_of(s.mean_cno[o]):.2f}" for o in Orientation
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.8"/>'
        )
        for o in Orientation:
            parts.append(
                f'<circle cx="{x_of[o]:.1f}" cy="{y_of(s.mean_cno[o]):.2f}" r="3" fill="{color}"/>'
            )
        end_y = y_of(s.mean_cno[Orientation.RIGHT])
        parts.append(
            f'<text x="{left_m + plot_w + 8:.1f}" y="{end_y + 4:.2f}" font-family="sans-serif" '
            f'font-size="10" fill="{color}">PRN {s.sv_id}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
