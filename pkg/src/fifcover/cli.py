"""Command-line interface.

Subcommands:

* ``cover``  - build a covering and write JSON/CSV/SVG outputs.
* ``range``  - print per-depth range bounds, optionally with deviations
  from a reference table.
* ``sample`` - chaos-game point cloud as CSV.
* ``check``  - build a covering, sample the attractor, and verify
  containment; CI-friendly exit status.
* ``render`` - SVG figure of a covering with optional attractor overlay.

Exit codes: 0 success, 2 malformed input file, 3 invalid interpolation
data, 4 depth cap exceeded, 5 containment violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats, svg
from .analysis import DEFAULT_DEPTH_CAP
from .covering import (
    MODE_APPENDIX,
    MODE_THEOREM,
    RangeBounds,
    build_covering,
    compare_with_reference,
)
from .errors import DepthCapExceeded, InputError, MalformedDocument
from .model import FifSystem, build_system
from .oracle import chaos_game, verify_containment

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_INVALID_DATA = 3
EXIT_DEPTH_CAP = 4
EXIT_VIOLATIONS = 5

_EPILOG = """\
exit codes:
  0  success
  2  malformed input document
  3  invalid interpolation data
  4  depth cap exceeded
  5  containment violations found (check)
"""


def _load_system(path: str) -> FifSystem:
    doc = formats.parse_input(Path(path).read_text())
    return build_system(doc.to_data())


def _add_common(p: argparse.ArgumentParser, depth_flag: bool = True) -> None:
    p.add_argument("--input", required=True,
                   help="input JSON file with fields x, y, d")
    if depth_flag:
        p.add_argument("--depth", type=int, required=True,
                       help="composition depth m (n^m rhombi)")
    p.add_argument("--mode", choices=[MODE_THEOREM, MODE_APPENDIX],
                   default=MODE_THEOREM,
                   help="radius convention (default: theorem)")
    p.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP,
                   help="maximum number of composed maps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fifcover",
        description="Rhombus coverings and range bounds for affine "
                    "fractal interpolation functions.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="build a covering and write outputs",
                       epilog=_EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_common(p)
    p.add_argument("--json", help="write the covering document here")
    p.add_argument("--csv", help="write a per-rhombus CSV table here")
    p.add_argument("--svg", help="write an SVG figure here")

    p = sub.add_parser("range", help="print per-depth range bounds",
                       epilog=_EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_common(p, depth_flag=False)
    p.add_argument("--max-depth", type=int, required=True)
    p.add_argument("--reference",
                   help="reference table JSON; appends deviation columns "
                        "for both modes")

    p = sub.add_parser("sample", help="chaos-game sample as CSV",
                       epilog=_EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--input", required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--burn-in", type=int, default=100)
    p.add_argument("--out", required=True)

    p = sub.add_parser("check",
                       help="verify a sampled attractor against a covering",
                       epilog=_EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_common(p)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--burn-in", type=int, default=100)
    p.add_argument("--tol", type=float, default=None,
                   help="containment tolerance "
                        "(default: 1e-9 * data width)")

    p = sub.add_parser("render", help="SVG figure of a covering",
                       epilog=_EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_common(p)
    p.add_argument("--svg", required=True)
    p.add_argument("--points", type=int, default=0,
                   help="overlay a chaos-game sample of this size")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_cover(args) -> int:
    system = _load_system(args.input)
    covering = build_covering(system, args.depth, mode=args.mode,
                              cap=args.depth_cap)
    if args.json:
        Path(args.json).write_text(formats.covering_to_json(covering))
    if args.csv:
        Path(args.csv).write_text(formats.covering_to_csv(covering))
    if args.svg:
        Path(args.svg).write_text(svg.emit_svg(covering, data=system.data))
    print(f"{len(covering.rhombi)} rhombi at depth {args.depth} "
          f"({covering.mode}); range [{covering.bounds.lower:.6g}, "
          f"{covering.bounds.upper:.6g}]")
    return EXIT_OK


def _cmd_range(args) -> int:
    system = _load_system(args.input)
    per_mode: dict[str, dict[int, RangeBounds]] = {}
    modes = ([MODE_THEOREM, MODE_APPENDIX] if args.reference
             else [args.mode])
    for mode in modes:
        per_mode[mode] = {
            m: build_covering(system, m, mode=mode, cap=args.depth_cap).bounds
            for m in range(1, args.max_depth + 1)
        }
    print(f"{'m':>3} {'lower':>14} {'upper':>14}")
    for m in range(1, args.max_depth + 1):
        b = per_mode[modes[0]][m]
        print(f"{m:>3} {b.lower:>14.6f} {b.upper:>14.6f}")
    if args.reference:
        reference = formats.parse_reference(Path(args.reference).read_text())
        rows = compare_with_reference(per_mode, reference)
        print()
        print(f"{'mode':>15} {'m':>3} {'d_lower':>10} {'d_upper':>10} "
              f"{'halfwidth%':>11} {'midpoint':>10}")
        for row in rows:
            print(f"{row.mode:>15} {row.depth:>3} "
                  f"{row.lower_abs_dev:>10.4f} {row.upper_abs_dev:>10.4f} "
                  f"{100 * row.half_width_rel_dev:>10.2f}% "
                  f"{row.midpoint_dev:>10.4f}")
    return EXIT_OK


def _cmd_sample(args) -> int:
    system = _load_system(args.input)
    sample = chaos_game(system, args.points, seed=args.seed,
                        burn_in=args.burn_in)
    Path(args.out).write_text(formats.sample_to_csv(sample.points))
    print(f"wrote {args.points} points to {args.out}")
    return EXIT_OK


def _cmd_check(args) -> int:
    system = _load_system(args.input)
    covering = build_covering(system, args.depth, mode=args.mode,
                              cap=args.depth_cap)
    sample = chaos_game(system, args.points, seed=args.seed,
                        burn_in=args.burn_in)
    tol = args.tol
    if tol is None:
        tol = 1e-9 * (system.data.xs[-1] - system.data.xs[0])
    report = verify_containment(sample, covering, tol)
    print(f"{report.violations} violations out of {report.checked} points "
          f"(tol={tol:.3g}, max excess {report.max_excess:.3g})")
    return EXIT_VIOLATIONS if report.violations else EXIT_OK


def _cmd_render(args) -> int:
    system = _load_system(args.input)
    covering = build_covering(system, args.depth, mode=args.mode,
                              cap=args.depth_cap)
    sample_pts = None
    if args.points:
        sample_pts = chaos_game(system, args.points, seed=args.seed).points
    Path(args.svg).write_text(
        svg.emit_svg(covering, sample=sample_pts, data=system.data))
    print(f"wrote {args.svg}")
    return EXIT_OK


_COMMANDS = {
    "cover": _cmd_cover,
    "range": _cmd_range,
    "sample": _cmd_sample,
    "check": _cmd_check,
    "render": _cmd_render,
}


def run(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except MalformedDocument as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InputError as exc:
        print(f"error: invalid data: {exc}", file=sys.stderr)
        return EXIT_INVALID_DATA
    except DepthCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPTH_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
