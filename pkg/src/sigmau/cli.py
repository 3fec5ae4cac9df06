"""Command-line front end: JSON on stdin/stdout, diagnostics on stderr.

Exit codes: 0 success, 2 input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Optional

from .certificate import uniqueness_margin
from .geometry import GeometryError, critical_type
from .measure import AngularMeasure
from .products import default_radii, indicator_profile
from .sequences import augment_ray, from_measure, lunc_balance, symmetrize

EXIT_INPUT = 2
EXIT_COMPUTE = 3

_OPTIONS = {
    "analyze": {"grid"},
    "certify": {"grid", "sigma"},
    "generate": {"rmax", "seed"},
    "verify": {"grid", "rmax", "seed", "radii", "angles"},
}


class InputError(ValueError):
    pass


class _OrderedOp(argparse.Action):
    """Collects --augment-ray / --symmetrize / --lunc in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        ops = list(getattr(namespace, "ops", None) or [])
        ops.append((self.dest, values))
        namespace.ops = ops


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _dump(obj: Any, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
    _emit(text, path)


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(msg: str) -> None:
    print(f"sigmau: warning: {msg}", file=sys.stderr)


def _request(args: argparse.Namespace) -> tuple[AngularMeasure, dict]:
    data = _read_json(args.input)
    if not isinstance(data, dict):
        raise InputError("request must be a JSON object")
    if "measure" in data:
        measure_data = data["measure"]
        opts = dict(data.get("options", {}))
        opts.update({k: v for k, v in data.items() if k not in ("measure", "options")})
    elif set(data) <= {"atoms", "density"}:
        measure_data, opts = data, {}
    else:
        raise InputError("request needs a 'measure' object")
    try:
        measure = AngularMeasure.from_dict(measure_data, degrees=args.degrees)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    for key in ("grid", "sigma", "rmax", "seed", "angles"):
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    allowed = _OPTIONS[args.command]
    report_keys = {
        "sigma_u", "radius", "center_offset", "case", "contact_args", "polar_vertices",
        "vertices", "balancing_atom", "star_measure", "diagnostics",
    }
    for key in sorted(set(opts) - allowed):
        if key not in report_keys:
            _warn(f"option '{key}' is ignored by {args.command}")
        opts.pop(key)
    return measure, opts


def _int_opt(opts: dict, key: str, default: Optional[int], minimum: int = 0) -> Optional[int]:
    val = opts.get(key, default)
    if val is None:
        return None
    if isinstance(val, bool) or not isinstance(val, (int, float)) or int(val) != val:
        raise InputError(f"'{key}' must be an integer")
    if val < minimum:
        raise InputError(f"'{key}' must be at least {minimum}")
    return int(val)


def _float_opt(opts: dict, key: str, default: Optional[float]) -> Optional[float]:
    val = opts.get(key, default)
    if val is None:
        return None
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise InputError(f"'{key}' must be a finite number")
    return float(val)


# -- subcommands ------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    measure, opts = _request(args)
    grid = _int_opt(opts, "grid", 720, minimum=3)
    report = critical_type(measure, grid).to_dict()
    report["measure"] = measure.to_dict()
    report["options"] = {"grid": grid}
    _dump(report, args.output)
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    measure, opts = _request(args)
    grid = _int_opt(opts, "grid", 720, minimum=3)
    sigma = _float_opt(opts, "sigma", None)
    if sigma is None:
        raise InputError("certify needs sigma (--sigma or request field)")
    if sigma < 0:
        raise InputError("sigma must be nonnegative")
    out = uniqueness_margin(measure, sigma, grid).to_dict()
    out["options"] = {"grid": grid, "sigma": sigma}
    _dump(out, args.output)
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    measure, opts = _request(args)
    rmax = _float_opt(opts, "rmax", None)
    if rmax is None:
        raise InputError("generate needs rmax")
    if rmax < 2:
        raise InputError("rmax must be at least 2")
    seed = _int_opt(opts, "seed", 0)
    seq = from_measure(measure, rmax, seed)
    for op, val in getattr(args, "ops", None) or []:
        if op == "augment_ray":
            seq = augment_ray(seq, measure, rmax)
        elif op == "symmetrize":
            seq = symmetrize(seq)
        elif op == "lunc":
            seq = seq.union(lunc_balance(seq, rmax, val))
    _dump(seq.to_dict(), args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    measure, opts = _request(args)
    rmax = _float_opt(opts, "rmax", None)
    if rmax is None:
        raise InputError("verify needs rmax")
    if rmax < 50:
        raise InputError("rmax must be at least 50 for the default radius window")
    seed = _int_opt(opts, "seed", 0)
    grid = _int_opt(opts, "grid", 720, minimum=3)
    n_angles = _int_opt(opts, "angles", 32, minimum=8)
    radii = opts.get("radii")
    if radii is None:
        radii = default_radii(rmax)
    elif not isinstance(radii, list) or not radii or not all(
        isinstance(r, (int, float)) and r > 0 for r in radii
    ):
        raise InputError("'radii' must be a nonempty list of positive numbers")
    seq = augment_ray(from_measure(measure, rmax, seed), measure, rmax)
    seq = seq.union(lunc_balance(seq, rmax))
    try:
        profile = indicator_profile(seq, n_angles, radii)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    predicted = critical_type(measure, grid).sigma_u
    estimate = max(e.value for e in profile)
    out = {
        "angles": [e.to_dict() for e in profile],
        "type_estimate": estimate,
        "sigma_u_predicted": predicted,
        "relative_error": (estimate - predicted) / predicted if predicted else None,
        "options": {"rmax": rmax, "seed": seed, "angles": n_angles, "radii": list(radii), "grid": grid},
    }
    _dump(out, args.output)
    return 0


def render_svg(report: dict) -> str:
    """Static SVG of the body, its circumcircle, contacts and (Case 2) both triangles."""
    try:
        verts = [(float(x), float(y)) for x, y in report["vertices"]]
        radius = float(report["radius"])
        contacts = [float(a) for a in report.get("contact_args", [])]
        polar = [(float(x), float(y)) for x, y in report.get("polar_vertices", [])]
        sigma = float(report.get("sigma_u", radius))
        case = report.get("case")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed report: {exc!r}") from exc
    if not verts or not radius > 0:
        raise InputError("report has an empty body; nothing to plot")
    extent = max([radius] + [math.hypot(x, y) for x, y in polar])
    half = 1.1 * extent
    sw = extent / 250

    def p(x: float, y: float) -> str:
        return f"{x:.6f},{-y:.6f}"

    font = extent / 18
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{-half:.6f} {-half:.6f} {2 * half:.6f} {2 * half:.6f}" width="600" height="600">',
        f'<rect x="{-half:.6f}" y="{-half:.6f}" width="{2 * half:.6f}" height="{2 * half:.6f}" fill="white"/>',
        f'<circle cx="0" cy="0" r="{radius:.6f}" fill="none" stroke="#1f77b4" stroke-width="{sw:.6f}"/>',
    ]
    if len(verts) >= 2:
        pts = " ".join(p(x, y) for x, y in verts)
        lines.append(
            f'<polygon id="body" points="{pts}" fill="#ffdd99" fill-opacity="0.6" stroke="#aa6600" stroke-width="{sw:.6f}"/>'
        )
    if case == "2" and len(polar) == 3:
        tm = " ".join(p(radius * math.cos(a), radius * math.sin(a)) for a in contacts)
        tn = " ".join(p(x, y) for x, y in polar)
        lines.append(
            f'<polygon id="T_M" points="{tm}" fill="none" stroke="#2ca02c" stroke-dasharray="{4 * sw:.6f}" stroke-width="{sw:.6f}"/>'
        )
        lines.append(f'<polygon id="T_N" points="{tn}" fill="none" stroke="#d62728" stroke-width="{sw:.6f}"/>')
        for j, (x, y) in enumerate(polar, 1):
            lines.append(f'<text x="{x:.6f}" y="{-y:.6f}" font-size="{font:.6f}" fill="#d62728">N{j}</text>')
    for j, a in enumerate(contacts, 1):
        x, y = radius * math.cos(a), radius * math.sin(a)
        lines.append(f'<circle cx="{x:.6f}" cy="{-y:.6f}" r="{3 * sw:.6f}" fill="#2ca02c"/>')
        lines.append(
            f'<text x="{1.04 * x:.6f}" y="{-1.04 * y:.6f}" font-size="{font:.6f}" fill="#2ca02c">M{j}</text>'
        )
    lines.append(
        f'<text x="{-half + font:.6f}" y="{-half + 1.5 * font:.6f}" font-size="{font:.6f}" fill="black">'
        f"σ_U = {sigma:.9g} (case {case})</text>"
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_plot(args: argparse.Namespace) -> int:
    report = _read_json(args.input)
    if not isinstance(report, dict):
        raise InputError("report must be a JSON object")
    _emit(render_svg(report), args.output)
    return 0


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sigmau", description="Critical uniqueness type toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", default="-", help="request JSON file (default: stdin)")
        p.add_argument("--output", help="write result here instead of stdout")
        p.add_argument("--degrees", action="store_true", help="measure angles are in degrees")

    p = sub.add_parser("analyze", help="critical type of a measure")
    common(p)
    p.add_argument("--grid", type=int)
    p = sub.add_parser("certify", help="uniqueness margin at a given sigma")
    common(p)
    p.add_argument("--grid", type=int)
    p.add_argument("--sigma", type=float)
    p = sub.add_parser("generate", help="sample a point sequence")
    common(p)
    p.add_argument("--rmax", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--augment-ray", dest="augment_ray", nargs=0, action=_OrderedOp)
    p.add_argument("--symmetrize", dest="symmetrize", nargs=0, action=_OrderedOp)
    p.add_argument("--lunc", dest="lunc", type=float, metavar="EXPONENT", action=_OrderedOp)
    p = sub.add_parser("verify", help="canonical-product type check")
    common(p)
    p.add_argument("--rmax", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--angles", type=int)
    p = sub.add_parser("plot", help="SVG of an analyze report")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--output")
    return ap


_COMMANDS = {
    "analyze": cmd_analyze,
    "certify": cmd_certify,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"sigmau: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GeometryError as exc:
        print(f"sigmau: geometry failure: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"sigmau: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
