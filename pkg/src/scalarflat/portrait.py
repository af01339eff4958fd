"""Static SVG phase portraits: distinguished lines, critical level, orbit arcs.

The portrait shows the admissible line, the minimal line with its stable
window highlighted, the critical level set, and user-selected level sets
drawn as integrated arcs colored by their region tag.  Output is a single
self-contained SVG document (inline styles, no external assets).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .flow import integrate
from .phase import Region, check_dimension, classify, lambda_critical, tangency_point

__all__ = ["PortraitConfig", "render_portrait", "write_portrait"]

REGION_COLORS = {
    Region.AE_EXTERIOR: "#d4a017",
    Region.CRITICAL_LEVEL: "#111111",
    Region.FINITE_TIME_BLOWUP: "#1f5fd6",
    Region.COMPLETE_PUNCTURED: "#c2329f",
    Region.AXIS_X: "#8c5a16",
    Region.AXIS_Y: "#7a2be2",
    Region.EUCLIDEAN_FIXED_POINT: "#000000",
    Region.INADMISSIBLE: "#bbbbbb",
}


@dataclass(frozen=True)
class PortraitConfig:
    n: int
    levels: tuple[float, ...] = ()
    window: tuple[float, float, float, float] = (-5.0, 12.0, -10.0, 10.0)
    samples_per_branch: int = 400
    width: float = 840.0
    tol: float = 1e-8

    def __post_init__(self):
        check_dimension(self.n)
        xmin, xmax, ymin, ymax = self.window
        if not (xmin < xmax and ymin < ymax):
            raise ValueError(f"bad window {self.window}")


@dataclass
class _Canvas:
    cfg: PortraitConfig
    parts: list[str] = field(default_factory=list)

    @property
    def height(self) -> float:
        xmin, xmax, ymin, ymax = self.cfg.window
        return self.cfg.width * (ymax - ymin) / (xmax - xmin)

    def to_px(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        xmin, xmax, ymin, ymax = self.cfg.window
        sx = self.cfg.width / (xmax - xmin)
        sy = self.height / (ymax - ymin)
        return (x - xmin) * sx, (ymax - y) * sy

    def polyline(self, x, y, color: str, width: float = 1.6, dash: str | None = None) -> None:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        xmin, xmax, ymin, ymax = self.cfg.window
        pad_x = 0.02 * (xmax - xmin)
        pad_y = 0.02 * (ymax - ymin)
        inside = (
            (x >= xmin - pad_x) & (x <= xmax + pad_x) & (y >= ymin - pad_y) & (y <= ymax + pad_y)
        )
        # emit one polyline per contiguous in-window run
        start = None
        for i, ok in enumerate(list(inside) + [False]):
            if ok and start is None:
                start = i
            elif not ok and start is not None:
                if i - start >= 2:
                    px, py = self.to_px(x[start:i], y[start:i])
                    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
                    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
                    self.parts.append(
                        f'<polyline points="{pts}" fill="none" stroke="{color}" '
                        f'stroke-width="{width}"{dash_attr}/>'
                    )
                start = None

    def marker(self, x: float, y: float, color: str, r: float = 4.0) -> None:
        px, py = self.to_px(np.array([x]), np.array([y]))
        self.parts.append(f'<circle cx="{px[0]:.2f}" cy="{py[0]:.2f}" r="{r}" fill="{color}"/>')

    def text(self, x: float, y: float, label: str, color: str = "#333333") -> None:
        px, py = self.to_px(np.array([x]), np.array([y]))
        self.parts.append(
            f'<text x="{px[0]:.2f}" y="{py[0]:.2f}" font-family="sans-serif" '
            f'font-size="13" fill="{color}">{label}</text>'
        )


def _line_sample(cfg: PortraitConfig, fn) -> tuple[np.ndarray, np.ndarray]:
    xmin, xmax, _, _ = cfg.window
    xs = np.linspace(xmin, xmax, 200)
    return xs, fn(xs)


def _level_branch_seeds(cfg: PortraitConfig, lam: float) -> list[tuple[float, float]]:
    """Representative admissible seeds on every branch of {F = lam} in the window."""
    n = cfg.n
    xmin, xmax, ymin, ymax = cfg.window
    seeds: list[tuple[float, float]] = []
    for sx in (1.0, -1.0):
        hi = xmax if sx > 0 else -xmin
        if hi <= 0:
            continue
        mags = np.geomspace(1e-3, hi, cfg.samples_per_branch)
        xs = sx * mags
        for sy in (1.0, -1.0):
            ys = sy * lam ** (1.0 / n) * mags ** ((n - 1.0) / n)
            ok = (1.0 + xs + ys > 1e-6) & (ys >= ymin) & (ys <= ymax)
            # one seed per contiguous admissible run
            start = None
            for i, flag in enumerate(list(ok) + [False]):
                if flag and start is None:
                    start = i
                elif not flag and start is not None:
                    mid = (start + i - 1) // 2
                    seeds.append((float(xs[mid]), float(ys[mid])))
                    start = None
    return seeds


def render_portrait(cfg: PortraitConfig) -> str:
    n = cfg.n
    canvas = _Canvas(cfg)
    xmin, xmax, ymin, ymax = cfg.window

    # axes
    canvas.polyline([xmin, xmax], [0.0, 0.0], "#999999", width=1.0)
    canvas.polyline([0.0, 0.0], [ymin, ymax], "#999999", width=1.0)

    # admissible line 1 + x + y = 0
    xs, ys = _line_sample(cfg, lambda x: -1.0 - x)
    canvas.polyline(xs, ys, "#d62728", width=2.0)

    # minimal line (n-1)x + ny + 2n-1 = 0 with the stable window highlighted
    xs, ys = _line_sample(cfg, lambda x: -((n - 1) * x + 2 * n - 1) / n)
    canvas.polyline(xs, ys, "#2ca02c", width=1.6)
    xw = np.linspace(n - 1, 2 * n - 1, 50)
    canvas.polyline(xw, -((n - 1) * xw + 2 * n - 1) / n, "#2ca02c", width=4.0)

    # critical level (always drawn) plus requested level sets, as orbit arcs
    lam_c = lambda_critical(n)
    for lam in (lam_c, *cfg.levels):
        for seed in _level_branch_seeds(cfg, lam):
            tag = classify(n, *seed).tag
            color = REGION_COLORS.get(tag, "#555555")
            traj = integrate(n, seed, t_max=30.0, t_min=-30.0, tol=cfg.tol)
            s = traj.samples
            canvas.polyline(s[:, 1], s[:, 2], color, width=1.4 if lam != lam_c else 1.8)

    # markers: origin (Euclidean point) and the tangency point
    canvas.marker(0.0, 0.0, "#000000")
    tx, ty = tangency_point(n)
    canvas.marker(tx, ty, "#d62728")
    canvas.text(xmin + 0.02 * (xmax - xmin), ymax - 0.03 * (ymax - ymin), f"n = {n}")
    canvas.text(tx + 0.015 * (xmax - xmin), ty, f"tangency ({tx:g}, {ty:g})", color="#d62728")
    canvas.text(xmin + 0.02 * (xmax - xmin), ymin + 0.08 * (ymax - ymin), "admissible line", color="#d62728")
    canvas.text(xmin + 0.02 * (xmax - xmin), ymin + 0.045 * (ymax - ymin), "minimal line / stable window", color="#2ca02c")

    body = "\n".join(canvas.parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {cfg.width:.0f} {canvas.height:.0f}" '
        f'width="{cfg.width:.0f}" height="{canvas.height:.0f}">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
    )


def write_portrait(cfg: PortraitConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_portrait(cfg))
