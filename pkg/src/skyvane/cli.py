"""Command-line client for the detection service.

Each subcommand builds the same pydantic request the HTTP endpoints take
and runs the service handler in-process, so shell pipelines and the HTTP
service behave identically. Exit codes are part of the contract:

* 0: detection ran and classified the bundle non-spoofed
* 1: detection classified the bundle spoofed
* 2: any error (bad config, unreadable files, missing datasets)
* 3: non-spoofed but with zero checkable expected PRNs (low evidence)

Non-detect subcommands use 0 for success and 2 for errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import SkyvaneError
from .service.app import handle_detect, handle_render, handle_simulate, handle_summarize
from .service.schemas import DetectRequest, RenderRequest, SimulateRequest, SummarizeRequest

EXIT_NON_SPOOFED = 0
EXIT_SPOOFED = 1
EXIT_ERROR = 2
EXIT_LOW_EVIDENCE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skyvane",
        description="GNSS spoofing detection from C/N0 trends across banked antenna orientations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="generate a synthetic six-scenario bundle")
    p_sim.add_argument("--config", help="scenario config file (key = value lines); defaults used if omitted")
    p_sim.add_argument("--out", required=True, help="output directory for the CSVs and manifest")

    p_det = sub.add_parser("detect", help="run a spoofing detector on a bundle")
    p_det.add_argument("--manifest", required=True, help="scenario manifest path")
    p_det.add_argument("--detector", required=True, choices=["rule", "pattern"])
    p_det.add_argument("--condition", required=True, choices=["real", "spoofed"])
    p_det.add_argument("--expect", help="expectation config file (rule detector)")
    p_det.add_argument("--heading", type=float, help="antenna azimuth heading in degrees (pattern detector)")
    p_det.add_argument("--bank", type=float, default=45.0, help="bank magnitude in degrees (default 45)")
    p_det.add_argument("--model", choices=["sweep", "tilt"], default="sweep",
                       help="boresight model for trend prediction (default sweep)")
    p_det.add_argument("--margin", type=float, default=0.0,
                       help="min predicted separation gap in degrees before a PRN is expected "
                            "(default 0 = every strictly ordered PRN)")
    p_det.add_argument("--used-only", action="store_true",
                       help="average only rows with svUsed=1")
    p_det.add_argument("--lenient", action="store_true",
                       help="skip malformed rows instead of rejecting the file")
    p_det.add_argument("--json", dest="json_path", help="also write the report JSON to this path")

    p_sum = sub.add_parser("summarize", help="export per-PRN summaries as CSV")
    p_sum.add_argument("--manifest", required=True)
    p_sum.add_argument("--condition", required=True, choices=["real", "spoofed"])
    p_sum.add_argument("--csv", required=True, help="output CSV path")
    p_sum.add_argument("--used-only", action="store_true")
    p_sum.add_argument("--lenient", action="store_true")

    p_ren = sub.add_parser("render", help="render an SVG plot of a bundle")
    p_ren.add_argument("--manifest", required=True)
    p_ren.add_argument("--plot", required=True, choices=["sky", "trends"])
    p_ren.add_argument("--out", required=True, help="output SVG path")
    p_ren.add_argument("--condition", choices=["real", "spoofed"], default="real")
    p_ren.add_argument("--lenient", action="store_true")

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)

    return parser


def _cmd_simulate(args: argparse.Namespace) -> int:
    response = handle_simulate(SimulateRequest(config_path=args.config, out_dir=args.out))
    print(response.manifest_path)
    return 0


def _cmd_detect(args: argparse.Namespace) -> int:
    request = DetectRequest(
        manifest_path=args.manifest,
        detector=args.detector,
        condition=args.condition,
        expect_path=args.expect,
        heading_deg=args.heading,
        bank_deg=args.bank,
        model=args.model,
        margin_deg=args.margin,
        used_only=args.used_only,
        lenient=args.lenient,
    )
    response = handle_detect(request)
    report_text = json.dumps(response.model_dump(), indent=2)
    print(report_text)
    if args.json_path:
        Path(args.json_path).write_text(report_text + "\n", encoding="utf-8")
    if response.classification == "spoofed":
        return EXIT_SPOOFED
    if response.checkedPrns == 0:
        return EXIT_LOW_EVIDENCE
    return EXIT_NON_SPOOFED


def _cmd_summarize(args: argparse.Namespace) -> int:
    request = SummarizeRequest(
        manifest_path=args.manifest,
        condition=args.condition,
        used_only=args.used_only,
        lenient=args.lenient,
    )
    response = handle_summarize(request)
    Path(args.csv).write_text(response.csv, encoding="utf-8")
    print(f"wrote {len(response.summaries)} PRN summaries to {args.csv}", file=sys.stderr)
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    request = RenderRequest(
        manifest_path=args.manifest,
        plot=args.plot,
        condition=args.condition,
        lenient=args.lenient,
    )
    svg = handle_render(request)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(args.out)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "detect": _cmd_detect,
    "summarize": _cmd_summarize,
    "render": _cmd_render,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SkyvaneError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
