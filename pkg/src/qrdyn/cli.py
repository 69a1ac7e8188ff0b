"""Command-line surface.

Subcommands: render-julia, render-param, classify, verdict, special-params,
fixed-points, doubling.  Structured reports go to stdout (key: value lines,
or tab-delimited tables for lists); --json switches to a single-line
machine-readable record; images are written as binary portable pixmaps with
an optional PNG companion; report commands accept --figure to save a
matplotlib chart.

Exit status: 0 success, 2 invalid arguments (including the excluded
parameters a = 0 and a = 2), 3 numerical failure (diagnostics on stderr).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import classify, doubling, params, periodic
from .cformat import format_complex, parse_complex
from .maps import MapConstructionError, PRESET_NAMES, per3_map, preset
from .orbits import FateConfig
from .poly import RootFindingError
from .render import (
    DEFAULT_PARAM_WINDOW,
    RenderConfig,
    Window,
    render_dynamical,
    render_parameter,
)

JSON_KW = dict(sort_keys=True, separators=(",", ":"))


def emit_json(record) -> None:
    print(json.dumps(record, **JSON_KW))


def cpair(z: complex) -> list[float]:
    return [z.real, z.imag]


def parse_window(text: str) -> Window:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("window must be 'RE,IM,WIDTH,HEIGHT'")
    re_, im_, wdt, hgt = (float(p) for p in parts)
    return Window(complex(re_, im_), wdt, hgt)


def parse_size(text: str) -> tuple[int, int]:
    try:
        xs, ys = text.lower().split("x")
        return int(xs), int(ys)
    except Exception:
        raise ValueError("size must be 'WIDTHxHEIGHT', e.g. 800x800") from None


def parse_angle(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        return doubling.angle(int(num), int(den))
    return doubling.angle(int(text), 1)


def _fate_config(args) -> FateConfig:
    kw = {}
    if getattr(args, "budget", None) is not None:
        kw["budget"] = args.budget
    if getattr(args, "capture_radius", None) is not None:
        kw["capture_radius"] = args.capture_radius
    return FateConfig(**kw)


def _contact_config(args) -> classify.ContactConfig:
    kw = {}
    if getattr(args, "contact_radii", None):
        kw["radii"] = tuple(float(r) for r in args.contact_radii.split(","))
    if getattr(args, "contact_samples", None) is not None:
        kw["samples"] = args.contact_samples
    if getattr(args, "contact_budget", None) is not None:
        kw["budget"] = args.contact_budget
    return classify.ContactConfig(**kw)


def _basin_config(args) -> classify.BasinConfig:
    kw = {}
    if getattr(args, "basin_budget", None) is not None:
        kw["budget"] = args.basin_budget
    if getattr(args, "basin_resolution", None) is not None:
        kw["base_resolution"] = args.basin_resolution
    return classify.BasinConfig(**kw)


def _add_analysis_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("numerical overrides")
    g.add_argument("--budget", type=int, default=None,
                   help="orbit iteration budget (default 10000)")
    g.add_argument("--capture-radius", type=float, default=None,
                   help="chordal self-return radius for cycle detection (default 1e-6)")
    g.add_argument("--contact-radii", default=None,
                   help="comma list of chordal radii for contact tests "
                        "(default 1e-2,1e-3,1e-4,1e-5)")
    g.add_argument("--contact-samples", type=int, default=None,
                   help="samples per contact radius (default 64)")
    g.add_argument("--contact-budget", type=int, default=None,
                   help="orbit budget inside contact tests (default 20000)")
    g.add_argument("--basin-budget", type=int, default=None,
                   help="orbit budget for basin rasters (default 3000)")
    g.add_argument("--basin-resolution", type=int, default=None,
                   help="initial basin raster resolution (default 100)")


def cmd_render_julia(args) -> int:
    if args.preset == "per3":
        if args.a is None:
            print("preset 'per3' requires --a", file=sys.stderr)
            return 2
        ps = preset("per3", parse_complex(args.a))
    else:
        ps = preset(args.preset)
    window = parse_window(args.window) if args.window else Window(*ps.default_window)
    nx, ny = parse_size(args.size)
    cfg = RenderConfig(
        window=window,
        pixels_x=nx,
        pixels_y=ny,
        budget=args.budget if args.budget else 2000,
        chart=args.chart,
        workers=args.workers,
    )
    img = render_dynamical(ps.map, cfg)
    img.write_ppm(args.out)
    if args.png:
        from .report import save_image_png

        save_image_png(img, args.png)
    digest = hashlib.sha256(img.to_ppm_bytes()).hexdigest()
    if args.json:
        emit_json(
            {"out": args.out, "width": nx, "height": ny, "sha256": digest,
             "preset": ps.name}
        )
    else:
        print(f"wrote: {args.out}")
        print(f"size: {nx}x{ny}")
        print(f"sha256: {digest}")
    return 0


def cmd_render_param(args) -> int:
    window = parse_window(args.window) if args.window else DEFAULT_PARAM_WINDOW
    nx, ny = parse_size(args.size)
    img = render_parameter(
        window, nx, ny,
        budget=args.budget if args.budget else 2000,
        workers=args.workers,
    )
    img.write_ppm(args.out)
    if args.png:
        from .report import save_image_png

        save_image_png(img, args.png)
    digest = hashlib.sha256(img.to_ppm_bytes()).hexdigest()
    if args.json:
        emit_json({"out": args.out, "width": nx, "height": ny, "sha256": digest})
    else:
        print(f"wrote: {args.out}")
        print(f"size: {nx}x{ny}")
        print(f"sha256: {digest}")
    return 0


def cmd_classify(args) -> int:
    a = parse_complex(args.a)
    report = classify.sierpinski_verdict(
        a, _contact_config(args), _fate_config(args), _basin_config(args)
    )
    if args.figure:
        from .report import save_classification_figure

        save_classification_figure(report, args.figure)
    if args.json:
        emit_json(report.to_record())
    else:
        print(report.to_text())
    return 0


def cmd_verdict(args) -> int:
    a = parse_complex(args.a)
    report = classify.sierpinski_verdict(
        a, _contact_config(args), _fate_config(args), _basin_config(args)
    )
    if args.json:
        emit_json(
            {
                "a": cpair(a),
                "verdict": report.verdict.value,
                "reason": report.reason,
                "region": report.region.value,
                "type": report.hyperbolic_type.value,
            }
        )
    else:
        print(f"verdict: {report.verdict.value}")
        print(f"reason: {report.reason}")
    return 0


def cmd_special_params(args) -> int:
    sp = params.special_parameters()
    if args.figure:
        from .report import save_special_params_figure

        save_special_params_figure(sp, args.figure, raster=args.figure_raster)
    if args.json:
        emit_json({k: cpair(v) for k, v in sp.as_dict().items()})
    else:
        print("name\tvalue")
        for k, v in sp.as_dict().items():
            print(f"{k}\t{format_complex(v)}")
    return 0


def cmd_fixed_points(args) -> int:
    a = parse_complex(args.a)
    f = per3_map(a)
    if args.period and args.period > 1:
        pts = periodic.periodic_points(f, args.period)
    else:
        pts = periodic.fixed_points(f)
    if args.figure:
        from .report import save_periodic_points_figure

        save_periodic_points_figure(
            f, pts, args.figure,
            label=f"period-{args.period or 1} points of a = {format_complex(a)}",
        )
    if args.json:
        emit_json(
            {
                "a": cpair(a),
                "period": args.period or 1,
                "points": [
                    {
                        "z": None if p.location.is_infinity else cpair(p.location.value),
                        "exact_period": p.exact_period,
                        "multiplier": cpair(p.multiplier),
                        "stability": p.stability,
                        "multiplicity": p.multiplicity,
                        "coalesced": p.coalesced,
                    }
                    for p in pts
                ],
            }
        )
    else:
        print("z\texact_period\tmultiplier\t|multiplier|\tstability\tmultiplicity")
        for p in pts:
            z = "infinity" if p.location.is_infinity else format_complex(p.location.value)
            print(
                f"{z}\t{p.exact_period}\t{format_complex(p.multiplier)}"
                f"\t{abs(p.multiplier):.6g}\t{p.stability}\t{p.multiplicity}"
            )
    return 0


def cmd_doubling(args) -> int:
    if args.mixed_check:
        ok, tested = doubling.mixed_check(args.max_period)
        if args.json:
            emit_json(
                {"all_mixed": ok, "pairs_tested": tested, "max_period": args.max_period}
            )
        else:
            print(f"all pairs mixed: {str(ok).lower()}")
            print(f"pairs tested: {tested}")
        return 0
    if not args.angle:
        print("doubling requires --angle P/Q or --mixed-check", file=sys.stderr)
        return 2
    theta = parse_angle(args.angle)
    orb = doubling.orbit(theta)
    if args.figure:
        from .report import save_doubling_figure

        save_doubling_figure([orb], args.figure)
    if args.json:
        emit_json(
            {
                "angle": str(theta),
                "orbit": [str(t) for t in orb.angles],
                "periodic": orb.periodic,
                "period": orb.period,
            }
        )
    else:
        print("orbit: " + " ".join(str(t) for t in orb.angles))
        print(f"periodic: {str(orb.periodic).lower()}")
        print(f"period: {orb.period}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qrdyn",
        description="dynamics of quadratic rational maps with a critical "
        "3-cycle: renders, classification, special parameters, and "
        "angle-doubling combinatorics",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render-julia", help="render a dynamical plane to a PPM")
    p.add_argument("--preset", default="per3",
                   help=f"map preset: {', '.join(PRESET_NAMES)} (default per3)")
    p.add_argument("--a", default=None,
                   help="family parameter for --preset per3 ('RE,IM' or 'RE+IMi')")
    p.add_argument("--window", default=None, help="'RE,IM,WIDTH,HEIGHT'")
    p.add_argument("--size", default="800x800")
    p.add_argument("--out", required=True, help="output .ppm path")
    p.add_argument("--png", default=None, help="also save a PNG here")
    p.add_argument("--chart", choices=("plane", "inverse"), default="plane")
    p.add_argument("--budget", type=int, default=None,
                   help="iteration budget per pixel (default 2000)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_render_julia)

    p = sub.add_parser("render-param", help="render the parameter plane to a PPM")
    p.add_argument("--window", default=None,
                   help="'RE,IM,WIDTH,HEIGHT' (default 1.25,0,4.5,4)")
    p.add_argument("--size", default="800x800")
    p.add_argument("--out", required=True)
    p.add_argument("--png", default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_render_param)

    p = sub.add_parser("classify", help="full classification report for one a")
    p.add_argument("--a", required=True)
    p.add_argument("--figure", default=None, help="save a dynamical-plane chart")
    p.add_argument("--json", action="store_true")
    _add_analysis_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verdict", help="Sierpinski verdict for one a")
    p.add_argument("--a", required=True)
    p.add_argument("--json", action="store_true")
    _add_analysis_flags(p)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("special-params",
                       help="centers, cut points and parabolic parameters")
    p.add_argument("--figure", default=None, help="save a parameter-plane chart")
    p.add_argument("--figure-raster", type=int, default=0,
                   help="raster resolution behind the figure (0 = none)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_special_params)

    p = sub.add_parser("fixed-points", help="fixed or periodic points of f_a")
    p.add_argument("--a", required=True)
    p.add_argument("--period", type=int, default=None,
                   help=f"exact period (1..{periodic.MAX_PERIOD}; default 1)")
    p.add_argument("--figure", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("doubling", help="angle-doubling combinatorics")
    p.add_argument("--angle", default=None, help="rational angle 'P/Q'")
    p.add_argument("--mixed-check", action="store_true",
                   help="exhaustively test mixing of all cycle pairs")
    p.add_argument("--max-period", type=int, default=8)
    p.add_argument("--figure", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_doubling)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (MapConstructionError, ValueError) as e:
        print(f"invalid arguments: {e}", file=sys.stderr)
        return 2
    except (RootFindingError, periodic.PeriodicPointError, RuntimeError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        if getattr(e, "residuals", None) is not None:
            print(f"residuals: {e.residuals}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
