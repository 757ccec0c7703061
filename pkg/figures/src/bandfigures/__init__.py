"""Deterministic SVG figures from band-structure CSV artifacts.

Every number in a figure traces to a CSV cell; the renderer does no
computation beyond coordinate mapping, and identical inputs produce
byte-identical SVG output.
"""

from .io import InputError, ParseError, read_bands_csv, read_sweep_csv
from .render import FIGURE_KINDS, FigureSpec, render

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "InputError",
    "ParseError",
    "read_bands_csv",
    "read_sweep_csv",
    "render",
]
