"""CLI: modlab-plots render --fig {1,2,3} --csv <paths> --out <png>."""

import argparse
import sys

from .render import FigureSpec, RenderError, render


def build_parser():
    ap = argparse.ArgumentParser(prog="modlab-plots",
                                 description="render experiment CSVs to figures")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure")
    p.add_argument("--fig", required=True, choices=["1", "2", "3"])
    p.add_argument("--csv", required=True, nargs="+", help="input CSV paths")
    p.add_argument("--out", required=True, help="output PNG path")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(csv_paths=tuple(args.csv), figure_id=f"fig{args.fig}",
                          out_path=args.out)
        path = render(spec)
    except (RenderError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
