"""render-figures: sweep CSVs in, one multi-panel image out."""

from __future__ import annotations

import argparse
import sys

from .renderer import FigureSpec, SweepCsvError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render-figures",
        description="Render mixture-entropy sweep CSVs into a multi-panel figure.",
    )
    parser.add_argument("--inputs", nargs="+", required=True, help="sweep CSV paths, one per panel")
    parser.add_argument("--titles", nargs="*", default=[], help="panel titles (default: file stems)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", default=None, help="image format (default: from --out suffix)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            inputs=tuple(args.inputs),
            titles=tuple(args.titles),
            out_path=args.out,
            image_format=args.format,
        )
        render(spec)
    except (SweepCsvError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
