"""One entry point per figure kind: --in, --out, --title."""

from __future__ import annotations

import argparse
import sys

from .figspec import FigureSpec, SchemaError
from .render import compare, render


def _parser(kind: str) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(description=f"Render a {kind} figure "
                                             "from talbot CSV output")
    ap.add_argument("--in", dest="inputs", action="append", required=True,
                    metavar="CSV", help="input CSV (repeatable for overlays)")
    ap.add_argument("--out", required=True, help="output image path (PNG)")
    ap.add_argument("--title", default="")
    return ap


def _run(kind: str, argv) -> int:
    args = _parser(kind).parse_args(argv)
    try:
        render(FigureSpec(args.inputs, kind, title=args.title), args.out)
    except (SchemaError, OSError) as exc:
        print(exc, file=sys.stderr)
        return 2
    return 0


def main_sobolev_curve(argv=None) -> int:
    return _run("sobolev-curve", argv)


def main_param_region(argv=None) -> int:
    return _run("param-region", argv)


def main_slope_fit(argv=None) -> int:
    return _run("slope-fit", argv)


def main_amplitude_heatmap(argv=None) -> int:
    return _run("amplitude-heatmap", argv)


def main_compare(argv=None) -> int:
    ap = argparse.ArgumentParser(description="Overlay same-kind figures")
    ap.add_argument("--kind", required=True)
    ap.add_argument("--in", dest="inputs", action="append", required=True,
                    metavar="CSV")
    ap.add_argument("--label", dest="labels", action="append", default=None)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default="")
    args = ap.parse_args(argv)
    labels = args.labels or [None] * len(args.inputs)
    if len(labels) != len(args.inputs):
        print("need one --label per --in (or none)", file=sys.stderr)
        return 2
    try:
        specs = [FigureSpec([p], args.kind, title=args.title,
                            style={"labels": [lab]})
                 for p, lab in zip(args.inputs, labels)]
        compare(specs, args.out)
    except (SchemaError, OSError) as exc:
        print(exc, file=sys.stderr)
        return 2
    return 0
