"""The four figure kinds.

bands-vs-A            spectral bands as functions of the parameter A, on a
                      log10 |E| vertical scale; positive bands and reflected
                      negative bands overlay, pinching to points where a
                      pair goes flat.
band-functions-vs-k   branch values over the half period cell; flat bands
                      come out as horizontal segments.
top-branches-two-panel  the top positive branches for two parameter values,
                      side by side.
crossing-local        a zoom on branch behaviour near one cell endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .io import InputError, read_bands_csv, read_sweep_csv
from .svg import Axes, Canvas

FIGURE_KINDS = (
    "bands-vs-A",
    "band-functions-vs-k",
    "top-branches-two-panel",
    "crossing-local",
)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#e377c2", "#7f7f7f", "#bcbd22")

DEFAULT_STYLE = {
    "width": 720,
    "height": 480,
    "top_branches": 3,        # top-branches-two-panel
    "endpoint": "right",      # crossing-local: 'left' (k=0) or 'right'
    "window_fraction": 0.25,  # crossing-local zoom width
    "log_floor": 1e-12,       # bands-vs-A: clip |E| below this
}


@dataclass
class FigureSpec:
    kind: str
    inputs: list[str]
    output: str
    style: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise InputError(f"unknown figure kind {self.kind!r}; expected one of {FIGURE_KINDS}")
        unknown = set(self.style) - set(DEFAULT_STYLE)
        if unknown:
            raise InputError(f"unknown style key(s) {sorted(unknown)}")
        self.style = {**DEFAULT_STYLE, **self.style}


def _color(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def _padded(lo: float, hi: float, frac: float = 0.05) -> tuple[float, float]:
    span = hi - lo
    if span == 0:
        span = max(abs(hi), 1.0)
    return lo - frac * span, hi + frac * span


def _render_bands_vs_A(spec: FigureSpec) -> Canvas:
    if len(spec.inputs) != 1:
        raise InputError("bands-vs-A takes exactly one mathieu_sweep.csv input")
    series = read_sweep_csv(spec.inputs[0])
    floor = spec.style["log_floor"]
    logs = lambda v: math.log10(max(abs(v), floor))
    xs = [a for s in series for a in s.A]
    ys = [logs(v) for s in series for v in s.lo + s.hi]
    c = Canvas(spec.style["width"], spec.style["height"])
    c.rect(0, 0, c.width, c.height)
    ax = Axes(c, (70, 30, c.width - 100, c.height - 90),
              _padded(min(xs), max(xs)), _padded(min(ys), max(ys)))
    ax.draw_frame("A", "log10 |E|")
    for i, s in enumerate(series):
        # one |E| band per branch: interval [lo,hi] for '+', reflected for '-'
        top = [logs(hi if s.sign == "+" else lo) for lo, hi in zip(s.lo, s.hi)]
        bot = [logs(lo if s.sign == "+" else hi) for lo, hi in zip(s.lo, s.hi)]
        upper = ax.map_points(s.A, top)
        lower = ax.map_points(s.A, bot)
        color = _color(i)
        c.polygon(upper + lower[::-1], fill=color, opacity=0.35)
        c.polyline(upper, stroke=color, width=1.0)
        c.polyline(lower, stroke=color, width=1.0)
        dash = "4,3" if s.sign == "-" else None
        if dash:
            c.polyline(upper, stroke="black", width=0.4)
    return c


def _branch_lines(ax: Axes, c: Canvas, series, width=1.5):
    for i, s in enumerate(series):
        c.polyline(ax.map_points(s.k, s.values), stroke=_color(i), width=width)


def _render_band_functions(spec: FigureSpec) -> Canvas:
    if len(spec.inputs) != 1:
        raise InputError("band-functions-vs-k takes exactly one bands.csv input")
    series = read_bands_csv(spec.inputs[0])
    xs = [k for s in series for k in s.k]
    ys = [v for s in series for v in s.values]
    c = Canvas(spec.style["width"], spec.style["height"])
    c.rect(0, 0, c.width, c.height)
    ax = Axes(c, (70, 30, c.width - 100, c.height - 90),
              _padded(min(xs), max(xs)), _padded(min(ys), max(ys)))
    ax.draw_frame("k", "E")
    _branch_lines(ax, c, series)
    return c


def _render_two_panel(spec: FigureSpec) -> Canvas:
    if len(spec.inputs) != 2:
        raise InputError("top-branches-two-panel takes exactly two bands.csv inputs")
    n_top = int(spec.style["top_branches"])
    c = Canvas(spec.style["width"], spec.style["height"])
    c.rect(0, 0, c.width, c.height)
    panel_w = (c.width - 170) / 2
    for panel, path in enumerate(spec.inputs):
        series = [s for s in read_bands_csv(path) if s.sign == "+"]
        series = sorted(series, key=lambda s: s.branch_id)[:n_top]
        if not series:
            raise InputError(f"{path}: no positive branches to plot")
        xs = [k for s in series for k in s.k]
        ys = [v for s in series for v in s.values]
        x0 = 70 + panel * (panel_w + 60)
        ax = Axes(c, (x0, 30, panel_w, c.height - 90),
                  _padded(min(xs), max(xs)), _padded(min(ys), max(ys)))
        ax.draw_frame("k", "E" if panel == 0 else "")
        _branch_lines(ax, c, series)
    return c


def _render_crossing_local(spec: FigureSpec) -> Canvas:
    if len(spec.inputs) != 1:
        raise InputError("crossing-local takes exactly one bands.csv input")
    series = read_bands_csv(spec.inputs[0])
    k_all = [k for s in series for k in s.k]
    k_min, k_max = min(k_all), max(k_all)
    frac = float(spec.style["window_fraction"])
    if spec.style["endpoint"] == "left":
        lo, hi = k_min, k_min + frac * (k_max - k_min)
        k0 = k_min
    elif spec.style["endpoint"] == "right":
        lo, hi = k_max - frac * (k_max - k_min), k_max
        k0 = k_max
    else:
        raise InputError(f"style 'endpoint' must be 'left' or 'right', got {spec.style['endpoint']!r}")
    windowed = []
    for s in series:
        pts = [(k, v) for k, v in zip(s.k, s.values) if lo <= k <= hi]
        if len(pts) >= 2:
            clone = type(s)(s.branch_id, s.sign)
            clone.k = [p[0] for p in pts]
            clone.values = [p[1] for p in pts]
            windowed.append(clone)
    if not windowed:
        raise InputError("no branch has at least two samples inside the crossing window")
    xs = [k for s in windowed for k in s.k]
    ys = [v for s in windowed for v in s.values]
    c = Canvas(spec.style["width"], spec.style["height"])
    c.rect(0, 0, c.width, c.height)
    ax = Axes(c, (70, 30, c.width - 100, c.height - 90),
              _padded(min(xs), max(xs)), _padded(min(ys), max(ys), 0.1))
    ax.draw_frame("k", "E")
    c.line(ax.px(k0), ax.y0, ax.px(k0), ax.y0 + ax.h, stroke="#999999", width=0.8, dash="2,3")
    _branch_lines(ax, c, windowed, width=2.0)
    return c


_RENDERERS = {
    "bands-vs-A": _render_bands_vs_A,
    "band-functions-vs-k": _render_band_functions,
    "top-branches-two-panel": _render_two_panel,
    "crossing-local": _render_crossing_local,
}


def render(spec: FigureSpec) -> str:
    """Render the figure and write it to spec.output; returns the path."""
    canvas = _RENDERERS[spec.kind](spec)
    with open(spec.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(canvas.tostring())
    return spec.output
