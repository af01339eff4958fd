"""Command-line surface: classification, trajectory dumps, portraits,
sphere/mass/Penrose reports, and the verification suite runner.

Exit codes: 0 success, 1 domain error (inadmissible or non-minimal seed,
failed verification), 2 usage error.  Numbers are serialized with 17
significant digits so CSV/JSON reports round-trip 64-bit floats exactly.
JSON uses the Python extension token ``Infinity`` for infinite level values.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .checks import run_suite
from .flow import integrate
from .penrose import MINIMAL_LINE_TOL, dichotomy_report
from .phase import classify, lambda_critical, level_value, minimal_line_residual
from .portrait import PortraitConfig, write_portrait
from .profile import adm_mass, profile_from_trajectory, scalar_curvature
from .spheres import find_minimal_spheres, mean_curvature

__all__ = ["RunConfig", "build_parser", "entry", "main"]

FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class RunConfig:
    """Validated common options of one CLI invocation."""

    n: int
    x: float | None
    y: float | None
    t_min: float
    t_max: float
    tol: float
    fmt: str
    out: str | None
    grid: str | None


class UsageError(Exception):
    pass


def _run_config(args) -> RunConfig:
    n = args.n
    if n is None or int(n) != n or n < 2:
        raise UsageError(f"-n must be an integer >= 2, got {n}")
    tol = args.tol
    if not tol > 0.0:
        raise UsageError(f"--tol must be positive, got {tol}")
    if not (args.t_min < 0.0 < args.t_max):
        raise UsageError(f"need --t-min < 0 < --t-max, got ({args.t_min}, {args.t_max})")
    return RunConfig(
        n=int(n),
        x=args.x,
        y=args.y,
        t_min=args.t_min,
        t_max=args.t_max,
        tol=args.tol,
        fmt=args.format,
        out=args.out,
        grid=getattr(args, "grid", None),
    )


def _require_seed(cfg: RunConfig) -> tuple[float, float]:
    if cfg.x is None or cfg.y is None:
        raise UsageError("seed flags -x and -y are required for this command")
    return cfg.x, cfg.y


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


def parse_grid(spec: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        xpart, ypart = spec.split(",")
        x0, x1, nx = xpart.split(":")
        y0, y1, ny = ypart.split(":")
        xs = np.linspace(float(x0), float(x1), int(nx))
        ys = np.linspace(float(y0), float(y1), int(ny))
    except Exception as exc:
        raise UsageError(f"bad --grid spec {spec!r} (want 'x0:x1:steps,y0:y1:steps')") from exc
    return xs, ys


def cmd_classify(args) -> int:
    cfg = _run_config(args)
    if cfg.grid is not None:
        xs, ys = parse_grid(cfg.grid)
        lines = ["x,y,region,divisor_possible,complete,lambda"]
        for yv in ys:
            for xv in xs:
                label = classify(cfg.n, xv, yv)
                try:
                    lam = level_value(cfg.n, xv, yv)
                    lam_s = FLOAT_FMT % lam
                except ValueError:
                    lam_s = ""
                lines.append(
                    f"{FLOAT_FMT % xv},{FLOAT_FMT % yv},{label.tag.value},"
                    f"{str(label.divisor_possible).lower()},"
                    f"{str(label.complete_without_boundary).lower()},{lam_s}"
                )
        _emit("\n".join(lines) + "\n", cfg.out)
        return 0

    x, y = _require_seed(cfg)
    label = classify(cfg.n, x, y)
    if label.tag.value == "Inadmissible":
        sys.stderr.write(f"inadmissible: 1+x+y <= 0 at ({x}, {y})\n")
        return 1
    try:
        lam = level_value(cfg.n, x, y)
    except ValueError:
        lam = None
    _emit(
        _json_text(
            {
                "region": label.tag.value,
                "domain": label.domain,
                "divisor_possible": label.divisor_possible,
                "complete": label.complete_without_boundary,
                "lambda": lam,
                "lambda_critical": lambda_critical(cfg.n),
            }
        ),
        cfg.out,
    )
    return 0


def cmd_integrate(args) -> int:
    cfg = _run_config(args)
    x, y = _require_seed(cfg)
    traj = integrate(cfg.n, (x, y), t_max=cfg.t_max, t_min=cfg.t_min, tol=cfg.tol)
    prof = profile_from_trajectory(traj)
    s = traj.samples
    ch = prof.chain(s[:, 0])
    h = np.asarray(mean_curvature(prof, s[:, 0]))
    scal = np.asarray(scalar_curvature(prof, s[:, 0]))
    lines = ["t,x,y,v,u_t,u_tt,H,scal_residual"]
    for i in range(len(s)):
        row = (s[i, 0], s[i, 1], s[i, 2], s[i, 3], ch.u_t[i], ch.u_tt[i], h[i], scal[i])
        lines.append(",".join(FLOAT_FMT % val for val in row))
    lines.append(f"# backward: {traj.backward_end.describe()}")
    lines.append(f"# forward: {traj.forward_end.describe()}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_portrait(args) -> int:
    cfg = _run_config(args)
    levels = tuple(float(tok) for tok in args.levels.split(",") if tok.strip()) if args.levels else ()
    window = (-5.0, 12.0, -10.0, 10.0)
    samples = 400
    if cfg.grid is not None:
        xs, ys = parse_grid(cfg.grid)
        window = (float(xs[0]), float(xs[-1]), float(ys[0]), float(ys[-1]))
        samples = max(len(xs), len(ys), 16)
    out = cfg.out or f"portrait_n{cfg.n}.svg"
    write_portrait(
        PortraitConfig(n=cfg.n, levels=levels, window=window, samples_per_branch=samples),
        out,
    )
    sys.stdout.write(f"{out}\n")
    return 0


def cmd_spheres(args) -> int:
    cfg = _run_config(args)
    x, y = _require_seed(cfg)
    traj = integrate(cfg.n, (x, y), t_max=cfg.t_max, t_min=cfg.t_min, tol=cfg.tol)
    reports = find_minimal_spheres(profile_from_trajectory(traj))
    _emit(
        _json_text(
            {
                "n": cfg.n,
                "x0": x,
                "y0": y,
                "count": len(reports),
                "spheres": [
                    {
                        "t_star": r.t_star,
                        "x": r.x,
                        "y": r.y,
                        "stability": r.stability.value,
                        "area": r.area,
                        "outermost": r.outermost,
                    }
                    for r in reports
                ],
            }
        ),
        cfg.out,
    )
    return 0


def cmd_mass(args) -> int:
    cfg = _run_config(args)
    x, y = _require_seed(cfg)
    traj = integrate(cfg.n, (x, y), t_max=max(cfg.t_max, 40.0), t_min=cfg.t_min, tol=cfg.tol)
    m_numeric, m_paper = adm_mass(profile_from_trajectory(traj))
    note = None
    if y == 0.0 and abs(m_numeric) < 1e-8:
        note = "mass below ALE decay threshold (Ricci-flat axis family); m = 0"
    _emit(
        _json_text(
            {"n": cfg.n, "x0": x, "y0": y, "m_numeric": m_numeric, "m_paper": m_paper, "note": note}
        ),
        cfg.out,
    )
    return 0


def _sweep_case(case) -> dict:
    n, x, y = case
    return dichotomy_report(n, (x, y)).to_dict()


def cmd_penrose(args) -> int:
    cfg = _run_config(args)
    if cfg.grid is not None:
        xs, ys = parse_grid(cfg.grid)
        cases = [
            (cfg.n, float(xv), float(yv))
            for yv in ys
            for xv in xs
            if 1.0 + xv + yv > 0.0
        ]
        workers = max(1, args.workers)
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(_sweep_case, cases, chunksize=64))
        else:
            reports = [_sweep_case(c) for c in cases]
        violations = sum(1 for r in reports if not r["dichotomy_ok"])
        _emit(
            _json_text(
                {
                    "n": cfg.n,
                    "grid": cfg.grid,
                    "seeds": len(reports),
                    "violations": violations,
                    "reports": reports,
                }
            ),
            cfg.out,
        )
        return 0 if violations == 0 else 1

    x, y = _require_seed(cfg)
    if not 1.0 + x + y > 0.0:
        sys.stderr.write(f"inadmissible: 1+x+y <= 0 at ({x}, {y})\n")
        return 1
    residual = minimal_line_residual(cfg.n, x, y)
    if abs(residual) > MINIMAL_LINE_TOL:
        sys.stderr.write(f"seed not minimal: residual {residual:.3e} at ({x}, {y})\n")
        return 1
    report = dichotomy_report(cfg.n, (x, y), t_max=max(cfg.t_max, 35.0), t_min=cfg.t_min, tol=cfg.tol)
    _emit(_json_text(report.to_dict()), cfg.out)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(fast=args.fast)
    all_ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        all_ok = all_ok and res.passed
        sys.stdout.write(f"{status} {res.name}: {res.detail}\n")
    sys.stdout.write(f"{'PASS' if all_ok else 'FAIL'} overall ({len(results)} checks)\n")
    return 0 if all_ok else 1


def _add_common(sub: argparse.ArgumentParser, seed: bool = True) -> None:
    sub.add_argument("-n", type=int, required=True, help="complex dimension (>= 2)")
    if seed:
        sub.add_argument("-x", type=float, default=None, help="seed x coordinate")
        sub.add_argument("-y", type=float, default=None, help="seed y coordinate")
    sub.add_argument("--t-min", dest="t_min", type=float, default=-30.0)
    sub.add_argument("--t-max", dest="t_max", type=float, default=30.0)
    sub.add_argument("--tol", type=float, default=1e-10)
    sub.add_argument("--format", choices=("csv", "json", "svg"), default=None, help="output format (informational; each command has a fixed native format)")
    sub.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalarflat",
        description="Phase-plane toolkit for scalar-flat U(n)-invariant Kahler metrics",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="region classification of a seed (JSON) or a grid (CSV)")
    _add_common(p)
    p.add_argument("--grid", default=None, help="sweep grid 'x0:x1:steps,y0:y1:steps'")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("integrate", help="integrate one orbit and dump the samples (CSV)")
    _add_common(p)
    p.set_defaults(func=cmd_integrate)

    p = subs.add_parser("portrait", help="render a phase portrait (SVG)")
    _add_common(p, seed=False)
    p.add_argument("--grid", default=None, help="plot window 'x0:x1:steps,y0:y1:steps'")
    p.add_argument("--levels", default="", help="comma-separated level values to draw as arcs")
    p.set_defaults(func=cmd_portrait)

    p = subs.add_parser("spheres", help="minimal hyperspheres along the orbit (JSON)")
    _add_common(p)
    p.set_defaults(func=cmd_spheres)

    p = subs.add_parser("mass", help="ADM mass of the orbit's metric (JSON)")
    _add_common(p)
    p.set_defaults(func=cmd_mass)

    p = subs.add_parser("penrose", help="Penrose/dichotomy report for a minimal seed or a grid sweep")
    _add_common(p)
    p.add_argument("--grid", default=None, help="sweep grid 'x0:x1:steps,y0:y1:steps'")
    p.add_argument("--workers", type=int, default=1, help="worker processes for grid sweeps")
    p.set_defaults(func=cmd_penrose)

    p = subs.add_parser("verify", help="run the invariant suite (one PASS/FAIL line per check)")
    p.add_argument("--fast", action="store_true", help="reduced sample counts")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse signals usage errors by exiting
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    raise SystemExit(main())
