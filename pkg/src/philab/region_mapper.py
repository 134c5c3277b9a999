"""Good / bad / unknown classification of grid points for a threshold z, with CSV and SVG output."""

from __future__ import annotations

import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path

from . import bound_certifier as bc
from .bound_certifier import CertifiedBound, ConsistencyViolation
from .graph_core import format_rational as fmt, parse_rational

F = Fraction


class Status(str, Enum):
    GOOD = "ProvenGood"
    BAD = "ProvenBad"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Classification:
    x: Fraction
    y: Fraction
    status: Status
    provenance: str
    lower: CertifiedBound
    upper: CertifiedBound

    def key(self):
        return (self.x, self.y, self.status, self.provenance,
                self.lower.value, self.lower.strict, self.upper.value, self.upper.strict)


@dataclass
class RegionMap:
    mode: str
    z: Fraction
    resolution: int
    cells: list[Classification]  # row-major: x = i/d outer, y = j/d inner

    def __eq__(self, other):
        return (isinstance(other, RegionMap) and (self.mode, self.z, self.resolution) ==
                (other.mode, other.z, other.resolution)
                and [c.key() for c in self.cells] == [c.key() for c in other.cells])

    def cell(self, x, y) -> Classification:
        x, y = parse_rational(x), parse_rational(y)
        d = self.resolution
        i, j = x * d, y * d
        if i.denominator != 1 or j.denominator != 1 or not (1 <= i <= d and 1 <= j <= d):
            raise KeyError(f"({fmt(x)},{fmt(y)}) is not a grid point")
        return self.cells[(int(i) - 1) * d + int(j) - 1]

    def status(self, x, y) -> Status:
        return self.cell(x, y).status

    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in Status}
        for c in self.cells:
            out[c.status.value] += 1
        return out


def decide(mode: str, z: Fraction, x: Fraction, y: Fraction,
           lower: CertifiedBound, upper: CertifiedBound) -> Classification:
    """Status from a certified interval; asking whether f(x, y) >= z."""
    bc.check_order(lower, upper, mode, x, y)
    good = lower.value >= z
    bad = upper.value < z or (upper.value == z and upper.strict)
    if good and bad:
        raise ConsistencyViolation(f"{mode}({fmt(x)},{fmt(y)}) classified both good and bad at z={fmt(z)}")
    if good:
        prov = f"lower: {lower.provenance}"
        if lower.value == z:
            prov += " [boundary: nonstrict lower bound equals z]"
        return Classification(x, y, Status.GOOD, prov, lower, upper)
    if bad:
        prov = f"upper: {upper.provenance}"
        if upper.value == z:
            prov += " [boundary: strict upper bound equals z]"
        return Classification(x, y, Status.BAD, prov, lower, upper)
    return Classification(x, y, Status.UNKNOWN,
                          f"lower: {lower.provenance}; upper: {upper.provenance}", lower, upper)


def classify_point(mode: str, z, x, y, effort: int = bc.K_MAX) -> Classification:
    z, x, y = parse_rational(z), parse_rational(x), parse_rational(y)
    lo, up = _point_interval(mode, x, y, effort)
    return decide(mode, z, x, y, lo, up)


# --------------------------------------------------------------------------- cached per-point intervals

_LOWER: dict = {}
_DIRECT: dict = {}
_COLS: dict = {}


def _direct_best(mode, x, y, effort) -> CertifiedBound | None:
    key = (mode, x, y, effort)
    if key not in _DIRECT:
        ups = bc.direct_upper_bounds(mode, x, y, effort)
        _DIRECT[key] = bc.best_upper(ups) if ups else None
    return _DIRECT[key]


def _point_interval(mode, x, y, effort) -> tuple[CertifiedBound, CertifiedBound]:
    """Best lower and upper bound, sharing work across thresholds and (for phi) across swapped points."""
    key = (mode, x, y, effort)
    if key not in _LOWER:
        _LOWER[key] = bc.best_lower(bc.lower_bounds(mode, x, y, max(bc.K_MAX, effort)))
    lo = _LOWER[key]
    cands = []
    d = _direct_best(mode, x, y, effort)
    if d is not None:
        cands.append(d)
    if mode == "phi" and x != y:
        s = _direct_best(mode, y, x, effort)
        if s is not None:
            cands.append(CertifiedBound("upper", s.value, s.strict,
                                        f"permute of {s.provenance} at (y,x)", mode, s.certificate))
    up = bc.best_upper(cands) if cands else CertifiedBound("upper", F(1), False, "trivial (value <= 1)", mode)
    return lo, up


def clear_cache() -> None:
    _LOWER.clear()
    _DIRECT.clear()
    _COLS.clear()


def _column(args):
    mode, i, d, effort = args
    x = F(i, d)
    return [_point_interval(mode, x, F(j, d), effort) for j in range(1, d + 1)]


def grid_intervals(mode: str, resolution: int, effort: int = bc.K_MAX, jobs: int = 1):
    """Best (lower, upper) at every grid point, row-major; cached for reuse across thresholds."""
    d = resolution
    missing = [i for i in range(1, d + 1) if (mode, i, d, effort) not in _COLS]
    if jobs > 1 and len(missing) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, col in zip(missing, pool.map(_column, [(mode, i, d, effort) for i in missing])):
                _COLS[(mode, i, d, effort)] = col
    else:
        for i in missing:
            _COLS[(mode, i, d, effort)] = _column((mode, i, d, effort))
    return [iv for i in range(1, d + 1) for iv in _COLS[(mode, i, d, effort)]]


def build_map(mode: str, z, resolution: int, effort: int = bc.K_MAX, jobs: int = 1) -> RegionMap:
    z = parse_rational(z)
    if not 1 <= resolution <= 400:
        raise ValueError("resolution must be between 1 and 400")
    d = resolution
    ivs = grid_intervals(mode, d, effort, jobs)
    cells = []
    for n, (lo, up) in enumerate(ivs):
        i, j = divmod(n, d)
        cells.append(decide(mode, z, F(i + 1, d), F(j + 1, d), lo, up))
    return RegionMap(mode, z, d, cells)


def diagonal_profile(mode: str, resolution: int, effort: int = bc.K_MAX):
    """(x, best lower, best upper) along x = y."""
    out = []
    for i in range(1, resolution + 1):
        x = F(i, resolution)
        lo, up = _point_interval(mode, x, x, effort)
        out.append((x, lo, up))
    return out


# --------------------------------------------------------------------------- CSV

CSV_COLUMNS = ["x", "y", "status", "provenance", "lower", "upper", "lower_strict", "upper_strict"]


def emit_csv(rmap: RegionMap, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for c in rmap.cells:
            w.writerow([fmt(c.x), fmt(c.y), c.status.value, c.provenance, fmt(c.lower.value),
                        fmt(c.upper.value), str(c.lower.strict).lower(), str(c.upper.strict).lower()])


def parse_csv(path, mode: str, z) -> RegionMap:
    """Read a map written by emit_csv; mode and z are not stored in the file."""
    z = parse_rational(z)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(f"unexpected columns {reader.fieldnames}")
        rows = list(reader)
    d = math.isqrt(len(rows))
    cells = []
    for r in rows:
        lo = CertifiedBound("lower", parse_rational(r["lower"]), r["lower_strict"] == "true", r["provenance"], mode)
        up = CertifiedBound("upper", parse_rational(r["upper"]), r["upper_strict"] == "true", r["provenance"], mode)
        cells.append(Classification(parse_rational(r["x"]), parse_rational(r["y"]), Status(r["status"]),
                                    r["provenance"], lo, up))
    if len(cells) != d * d:
        raise ValueError(f"expected {d * d} rows, found {len(cells)}")
    return RegionMap(mode, z, d, cells)


# --------------------------------------------------------------------------- SVG

COLORS = {Status.GOOD: "#4c9f70", Status.BAD: "#d1495b", Status.UNKNOWN: "#e8e8e8"}
_SIZE, _PAD = 500, 50


def _svg_header(title: str, command: str | None) -> list[str]:
    cmd = command if command is not None else " ".join(sys.argv)
    w = _SIZE + 2 * _PAD
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">',
        f"<!-- generated by: {cmd.replace('--', '- -')} -->",
        f'<text x="{w / 2}" y="{_PAD / 2}" text-anchor="middle" font-size="16">{title}</text>',
    ]


def _axes(lines: list[str]) -> None:
    o, s = _PAD, _SIZE
    lines.append(f'<rect x="{o}" y="{o}" width="{s}" height="{s}" fill="none" stroke="black"/>')
    for t in (0, 0.25, 0.5, 0.75, 1):
        lines.append(f'<text x="{o + t * s}" y="{o + s + 16}" text-anchor="middle" font-size="11">{t:g}</text>')
        lines.append(f'<text x="{o - 6}" y="{o + s - t * s + 4}" text-anchor="end" font-size="11">{t:g}</text>')
    lines.append(f'<text x="{o + s / 2}" y="{o + s + 36}" text-anchor="middle" font-size="14">x</text>')
    lines.append(f'<text x="{o - 36}" y="{o + s / 2}" text-anchor="middle" font-size="14">y</text>')


def emit_svg(rmap: RegionMap, path, command: str | None = None) -> None:
    d = rmap.resolution
    cw = _SIZE / d
    lines = _svg_header(f"{rmap.mode} &gt;= {fmt(rmap.z)}", command)
    for c in rmap.cells:
        px = _PAD + (float(c.x) - 1 / d) * _SIZE
        py = _PAD + _SIZE - float(c.y) * _SIZE
        lines.append(f'<rect x="{px:.3f}" y="{py:.3f}" width="{cw:.3f}" height="{cw:.3f}" '
                     f'fill="{COLORS[c.status]}" class="{c.status.value}"/>')
    _axes(lines)
    legend_y = _PAD + _SIZE + 36
    for n, s in enumerate(Status):
        lx = _PAD + _SIZE - 300 + n * 110
        lines.append(f'<rect x="{lx}" y="{legend_y - 10}" width="10" height="10" fill="{COLORS[s]}"/>')
        lines.append(f'<text x="{lx + 14}" y="{legend_y}" font-size="11">{s.value}</text>')
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n")


def emit_diagonal_svg(profile, path, mode: str, command: str | None = None) -> None:
    """Certified lower and upper bounds of f(x, x) as two step curves."""
    lines = _svg_header(f"{mode}(x,x): certified bounds", command)

    def pt(x, v):
        return f"{_PAD + float(x) * _SIZE:.2f},{_PAD + _SIZE - float(v) * _SIZE:.2f}"

    for idx, colour in ((1, "#2b6cb0"), (2, "#c53030")):
        pts = " ".join(pt(x, b[idx - 1].value) for x, *b in profile)
        lines.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
    _axes(lines)
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n")
