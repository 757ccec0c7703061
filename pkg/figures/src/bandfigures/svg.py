"""Minimal SVG document builder with byte-stable output.

Coordinates are formatted with two fixed decimals, elements are emitted in
insertion order, and nothing time- or environment-dependent enters the
document, so identical inputs yield identical bytes.
"""

from __future__ import annotations


def _n(x: float) -> str:
    return f"{x:.2f}"


class Canvas:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.elements: list[str] = []

    def rect(self, x, y, w, h, fill="white", stroke="none"):
        self.elements.append(
            f'<rect x="{_n(x)}" y="{_n(y)}" width="{_n(w)}" height="{_n(h)}" '
            f'fill="{fill}" stroke="{stroke}"/>'
        )

    def line(self, x1, y1, x2, y2, stroke="black", width=1.0, dash=None):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}" '
            f'stroke="{stroke}" stroke-width="{_n(width)}"{dash_attr}/>'
        )

    def polyline(self, points, stroke="black", width=1.5):
        pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in points)
        self.elements.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_n(width)}"/>'
        )

    def polygon(self, points, fill, opacity=0.45, stroke="none"):
        pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in points)
        self.elements.append(
            f'<polygon points="{pts}" fill="{fill}" fill-opacity="{opacity}" '
            f'stroke="{stroke}"/>'
        )

    def circle(self, x, y, r, fill="black"):
        self.elements.append(f'<circle cx="{_n(x)}" cy="{_n(y)}" r="{_n(r)}" fill="{fill}"/>')

    def text(self, x, y, content, size=12, anchor="middle", rotate=None, fill="black"):
        transform = f' transform="rotate({rotate} {_n(x)} {_n(y)})"' if rotate is not None else ""
        self.elements.append(
            f'<text x="{_n(x)}" y="{_n(y)}" font-family="monospace" font-size="{size}" '
            f'text-anchor="{anchor}" fill="{fill}"{transform}>{content}</text>'
        )

    def tostring(self) -> str:
        body = "\n".join(self.elements)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f"{body}\n</svg>\n"
        )


class Axes:
    """Linear mapping from data space to a pixel frame, plus tick drawing."""

    def __init__(self, canvas: Canvas, frame: tuple[float, float, float, float],
                 x_range: tuple[float, float], y_range: tuple[float, float]):
        self.canvas = canvas
        self.x0, self.y0, self.w, self.h = frame     # top-left corner, size
        xr = x_range[1] - x_range[0]
        yr = y_range[1] - y_range[0]
        self.x_range = (x_range[0], x_range[1] if xr != 0 else x_range[0] + 1.0)
        self.y_range = (y_range[0], y_range[1] if yr != 0 else y_range[0] + 1.0)

    def px(self, x: float) -> float:
        lo, hi = self.x_range
        return self.x0 + (x - lo) / (hi - lo) * self.w

    def py(self, y: float) -> float:
        lo, hi = self.y_range
        return self.y0 + self.h - (y - lo) / (hi - lo) * self.h

    def map_points(self, xs, ys):
        return [(self.px(x), self.py(y)) for x, y in zip(xs, ys)]

    def draw_frame(self, x_label: str, y_label: str, ticks: int = 5):
        c = self.canvas
        c.rect(self.x0, self.y0, self.w, self.h, fill="none", stroke="black")
        for i in range(ticks):
            fx = self.x_range[0] + i * (self.x_range[1] - self.x_range[0]) / (ticks - 1)
            px = self.px(fx)
            c.line(px, self.y0 + self.h, px, self.y0 + self.h + 4)
            c.text(px, self.y0 + self.h + 16, f"{fx:.3g}", size=10)
            fy = self.y_range[0] + i * (self.y_range[1] - self.y_range[0]) / (ticks - 1)
            py = self.py(fy)
            c.line(self.x0 - 4, py, self.x0, py)
            c.text(self.x0 - 8, py + 3, f"{fy:.3g}", size=10, anchor="end")
        c.text(self.x0 + self.w / 2, self.y0 + self.h + 32, x_label, size=12)
        c.text(self.x0 - 44, self.y0 + self.h / 2, y_label, size=12, rotate=-90)
