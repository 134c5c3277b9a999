"""Reader and writer for the line-oriented ``phiwit v1`` certificate format.

    # comment
    mode psi
    x 13/27
    y 1/9
    claim 13/27 nonstrict
    vertex A a1 3/27
    edge a1 b1
"""

from __future__ import annotations

import os
from pathlib import Path

from .graph_core import (
    MODES, PARTS, StructuralError, TripartiteWeightedGraph, WitnessCertificate,
    format_rational, parse_rational,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def loads(text: str, source: str = "") -> WitnessCertificate:
    header: dict[str, object] = {}
    parts: dict[str, list[tuple[str, object]]] = {p: [] for p in PARTS}
    edges: list[tuple[str, str]] = []
    provenance = source
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("# provenance:"):
            provenance = raw.split(":", 1)[1].strip()
        if not line:
            continue
        key, *args = line.split()
        try:
            if key in ("mode", "x", "y", "claim"):
                if key in header:
                    raise ParseError(f"duplicate {key!r} line", lineno)
                if key == "mode":
                    if len(args) != 1 or args[0] not in MODES:
                        raise ParseError(f"mode must be one of {', '.join(MODES)}", lineno)
                    header[key] = args[0]
                elif key == "claim":
                    if len(args) != 2 or args[1] not in ("strict", "nonstrict"):
                        raise ParseError("expected: claim <p/q> strict|nonstrict", lineno)
                    header[key] = (parse_rational(args[0]), args[1] == "strict")
                else:
                    if len(args) != 1:
                        raise ParseError(f"expected: {key} <p/q>", lineno)
                    header[key] = parse_rational(args[0])
            elif key == "vertex":
                if len(args) != 3 or args[0] not in PARTS:
                    raise ParseError("expected: vertex <A|B|C> <id> <p/q>", lineno)
                w = parse_rational(args[2])
                if w < 0:
                    raise ParseError(f"negative weight {args[2]}", lineno)
                parts[args[0]].append((args[1], w))
            elif key == "edge":
                if len(args) != 2:
                    raise ParseError("expected: edge <id> <id>", lineno)
                edges.append((args[0], args[1]))
            else:
                raise ParseError(f"unknown key {key!r}", lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    missing = [k for k in ("mode", "x", "y", "claim") if k not in header]
    if missing:
        raise ParseError("missing " + ", ".join(missing))
    try:
        graph = TripartiteWeightedGraph.from_parts(parts, edges)
    except StructuralError as exc:
        raise ParseError(f"structural error: {exc}") from None
    claim, strict = header["claim"]
    return WitnessCertificate(graph, header["mode"], header["x"], header["y"], claim, strict, provenance)


def load(path: str | os.PathLike) -> WitnessCertificate:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text, source=str(path))


def dumps(cert: WitnessCertificate, comments: list[str] | None = None) -> str:
    g = cert.graph
    for v in g.weight:
        if not v or "#" in v or any(ch.isspace() for ch in v):
            raise ValueError(f"vertex id {v!r} cannot be written (empty, whitespace or '#')")
    out = ["# phiwit v1"]
    if cert.provenance:
        out.append(f"# provenance: {cert.provenance}")
    out.extend(f"# {c}" for c in comments or ())
    out += [
        f"mode {cert.mode}",
        f"x {format_rational(cert.x)}",
        f"y {format_rational(cert.y)}",
        f"claim {format_rational(cert.claimed_bound)} {'strict' if cert.strict else 'nonstrict'}",
    ]
    for p in PARTS:
        out.extend(f"vertex {p} {v} {format_rational(g.weight[v])}" for v in g.ids(p))
    order = {v: i for i, v in enumerate(v.id for v in g.vertices)}
    for u, v in sorted(g.edges, key=lambda e: (order[e[0]], order[e[1]])):
        out.append(f"edge {u} {v}")
    return "\n".join(out) + "\n"


def dump(cert: WitnessCertificate, path: str | os.PathLike, comments: list[str] | None = None) -> None:
    Path(path).write_text(dumps(cert, comments), encoding="utf-8")


def data_dir() -> Path:
    """Bundled fixture directory, overridable with the PHILAB_DATA environment variable."""
    env = os.environ.get("PHILAB_DATA")
    return Path(env) if env else Path(__file__).with_name("data")


def load_fixture(name: str) -> WitnessCertificate:
    stem = name[:-7] if name.endswith(".phiwit") else name
    return load(data_dir() / f"{stem}.phiwit")
