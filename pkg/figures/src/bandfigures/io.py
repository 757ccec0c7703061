"""Schema-validated readers for the documented CSV formats.

bands.csv:         k,branch_id,sign,value      (one row per branch sample)
mathieu_sweep.csv: A,branch_id,sign,lo,hi,flat (one row per branch per A)
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field


class ParseError(ValueError):
    """A CSV does not match its documented schema; names the column."""


class InputError(ValueError):
    """Structurally valid input that cannot be plotted (e.g. no branches)."""


BANDS_HEADER = ["k", "branch_id", "sign", "value"]
SWEEP_HEADER = ["A", "branch_id", "sign", "lo", "hi", "flat"]


@dataclass
class BranchSeries:
    branch_id: int
    sign: str
    k: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=list)


@dataclass
class SweepSeries:
    branch_id: int
    sign: str
    A: list[float] = field(default_factory=list)
    lo: list[float] = field(default_factory=list)
    hi: list[float] = field(default_factory=list)
    flat: list[bool] = field(default_factory=list)


def _check_header(got: list[str] | None, want: list[str], path: str) -> None:
    if got is None:
        raise ParseError(f"{path}: empty file, expected header {','.join(want)}")
    if got != want:
        missing = [c for c in want if c not in got]
        extra = [c for c in got if c not in want]
        detail = []
        if missing:
            detail.append(f"missing column(s) {missing}")
        if extra:
            detail.append(f"unexpected column(s) {extra}")
        if not detail:
            detail.append(f"column order must be {','.join(want)}")
        raise ParseError(f"{path}: bad header: " + "; ".join(detail))


def _float(row_no: int, col: str, raw: str, path: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"{path}:{row_no}: column '{col}': not a number: {raw!r}")


def _int(row_no: int, col: str, raw: str, path: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{path}:{row_no}: column '{col}': not an integer: {raw!r}")


def _sign(row_no: int, raw: str, path: str) -> str:
    if raw not in ("+", "-"):
        raise ParseError(f"{path}:{row_no}: column 'sign': expected '+' or '-', got {raw!r}")
    return raw


def read_bands_csv(path: str) -> list[BranchSeries]:
    """Branch series from a bands.csv, in first-appearance order."""
    series: dict[int, BranchSeries] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(header, BANDS_HEADER, path)
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(BANDS_HEADER):
                raise ParseError(f"{path}:{row_no}: expected {len(BANDS_HEADER)} fields, got {len(row)}")
            k = _float(row_no, "k", row[0], path)
            bid = _int(row_no, "branch_id", row[1], path)
            sign = _sign(row_no, row[2], path)
            value = _float(row_no, "value", row[3], path)
            s = series.setdefault(bid, BranchSeries(bid, sign))
            if s.sign != sign:
                raise ParseError(f"{path}:{row_no}: branch {bid} changes sign mid-file")
            s.k.append(k)
            s.values.append(value)
    if not series:
        raise InputError(f"{path}: no branch samples")
    return list(series.values())


def read_sweep_csv(path: str) -> list[SweepSeries]:
    """Per-branch interval series from a mathieu_sweep.csv."""
    series: dict[int, SweepSeries] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(header, SWEEP_HEADER, path)
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(SWEEP_HEADER):
                raise ParseError(f"{path}:{row_no}: expected {len(SWEEP_HEADER)} fields, got {len(row)}")
            a = _float(row_no, "A", row[0], path)
            bid = _int(row_no, "branch_id", row[1], path)
            sign = _sign(row_no, row[2], path)
            lo = _float(row_no, "lo", row[3], path)
            hi = _float(row_no, "hi", row[4], path)
            flat_raw = row[5]
            if flat_raw not in ("0", "1"):
                raise ParseError(f"{path}:{row_no}: column 'flat': expected 0 or 1, got {flat_raw!r}")
            s = series.setdefault(bid, SweepSeries(bid, sign))
            s.A.append(a)
            s.lo.append(lo)
            s.hi.append(hi)
            s.flat.append(flat_raw == "1")
    if not series:
        raise InputError(f"{path}: no sweep rows")
    return list(series.values())
