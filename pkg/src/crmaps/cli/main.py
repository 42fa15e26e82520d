"""``crmaps`` command line: run verification stages on a map-definition file."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import CRMapsError
from .mapfile import bundled_files, load_mapfile, load_points
from .pipeline import EXIT_FAIL, EXIT_INPUT, EXIT_OK, STAGES, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crmaps", description="Exact checks for CR maps into hyperquadrics and "
                                                           "Winkelmann hypersurfaces.")
    p.add_argument("mapfile", nargs="*", help="map-definition TOML files")
    p.add_argument("--bundled", action="store_true", help="run every bundled example definition")
    p.add_argument("--list", action="store_true", help="list the bundled definitions and exit")
    for s in STAGES:
        p.add_argument(f"--{s}", action="store_true", help=f"run the {s} stage (default: all stages)")
    p.add_argument("--points", type=Path, help="TOML file of [[points]] with coords and t")
    p.add_argument("--order", type=int, help="weighted truncation order for series maps")
    p.add_argument("--report", type=Path, help="write the JSON report here (one file, a list if several maps)")
    p.add_argument("--no-timing", action="store_true", help="omit timing from the JSON report")
    p.add_argument("-q", "--quiet", action="store_true", help="no human summary on stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for f in bundled_files():
            print(f.name)
        return EXIT_OK
    files = [Path(f) for f in args.mapfile]
    if args.bundled:
        files += bundled_files()
    if not files:
        print("crmaps: no map file given (use --bundled for the shipped examples)", file=sys.stderr)
        return EXIT_INPUT
    stages = [s for s in STAGES if getattr(args, s)] or list(STAGES)
    try:
        points = load_points(args.points) if args.points else []
    except (CRMapsError, OSError, ValueError) as e:
        print(f"crmaps: points: {e}", file=sys.stderr)
        return EXIT_INPUT
    reports, code = [], EXIT_OK
    for f in files:
        try:
            defn = load_mapfile(f)
            rep = run_pipeline(defn, stages, points=points, order=args.order)
        except (CRMapsError, OSError, ValueError) as e:
            print(f"crmaps: {f}: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_INPUT
        reports.append(rep)
        if not args.quiet:
            print(rep.summary())
        code = max(code, rep.exit_code)
    if args.report:
        body = [r.to_json(timing=not args.no_timing) for r in reports]
        text = body[0] if len(body) == 1 else "[\n" + ",\n".join(body) + "\n]"
        args.report.write_text(text + "\n")
    return code if code in (EXIT_OK, EXIT_FAIL) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
