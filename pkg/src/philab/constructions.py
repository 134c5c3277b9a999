"""Explicit upper-bound constructions, each returned as a machine-checked certificate.

Every generator builds a weighted graph, wraps it in a :class:`WitnessCertificate`
and re-validates it before marking it trusted.  Closed-form weights are
treated as candidates: if a candidate fails validation the discrepancy is
recorded, and where a fixed topology is known the weights are recovered by
exact LP feasibility instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm
from typing import Callable, Iterable, Iterator

from .graph_core import (
    PARTS, PreconditionError, StructuralError, TripartiteWeightedGraph, WitnessCertificate,
    BipartiteWeightedGraph, ConstraintReport, check_constraints, format_rational,
    parse_rational, verify_certificate, witness_value, blow_up,
)
from .lp_engine import InapplicableError, feasible_weights

F = Fraction
fmt = format_rational


class ConstructionInfeasible(ValueError):
    """A parameter interval is empty or no weighting exists on the topology."""


class ParameterError(ValueError):
    """Arguments are inconsistent with the inner certificate."""


@dataclass
class FreeParams:
    values: dict[str, Fraction] = field(default_factory=dict)
    intervals: dict[str, str] = field(default_factory=dict)

    def set(self, name: str, value, interval: str = "") -> Fraction:
        value = value if isinstance(value, Fraction) else F(value)
        self.values[name] = value
        if interval:
            self.intervals[name] = interval
        return value

    def describe(self) -> str:
        out = []
        for k, v in self.values.items():
            note = self.intervals.get(k, "")
            extra = f"  in {note}" if note[:1] in "[(" and note else (f"  ({note})" if note else "")
            out.append(f"{k} = {fmt(v)}{extra}")
        return "\n".join(out)


@dataclass
class ConstructionResult:
    certificate: WitnessCertificate
    params: FreeParams
    validation: ConstraintReport
    formula_discrepancies: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def trusted(self) -> bool:
        return self.validation.satisfied

    @property
    def value(self) -> Fraction:
        return self.validation.value


def _cert(graph, mode, x, y, claim, strict, provenance) -> WitnessCertificate:
    return WitnessCertificate(graph, mode, F(x), F(y), F(claim), strict, provenance)


def _finish(cert: WitnessCertificate, params: FreeParams | None = None,
            discrepancies: Iterable[str] = (), notes: Iterable[str] = ()) -> ConstructionResult:
    report = verify_certificate(cert)
    notes = list(notes)
    if cert.mode == "phi" and report.satisfied:
        psi_ok = check_constraints(cert.graph, "psi", cert.x, cert.y).satisfied
        notes.append(f"also biconstrained: {psi_ok}")
    return ConstructionResult(cert, params or FreeParams(), report, list(discrepancies), notes)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InapplicableError(message)


def _domain(x, y) -> tuple[Fraction, Fraction]:
    x, y = parse_rational(x), parse_rational(y)
    _require(0 < x <= 1 and 0 < y <= 1, f"x={fmt(x)}, y={fmt(y)} must lie in (0, 1]")
    return x, y


def interval_candidates(lo: Fraction, hi: Fraction, steps: int = 8) -> Iterator[Fraction]:
    """Midpoint first, then up to ``steps`` bisections toward each endpoint."""
    mid = (lo + hi) / 2
    yield mid
    left, right = mid, mid
    for _ in range(steps):
        left = (lo + left) / 2
        right = (right + hi) / 2
        yield left
        yield right


def _pick(name: str, lo: Fraction, hi: Fraction, lo_open: bool, hi_open: bool) -> Fraction:
    if lo > hi or (lo == hi and (lo_open or hi_open)):
        brackets = ("(" if lo_open else "[") + f"{fmt(lo)}, {fmt(hi)}" + (")" if hi_open else "]")
        raise ConstructionInfeasible(f"interval for {name} is empty: {brackets}")
    return (lo + hi) / 2


def _interval_text(lo, hi, lo_open=False, hi_open=False) -> str:
    return ("(" if lo_open else "[") + f"{fmt(lo)}, {fmt(hi)}" + (")" if hi_open else "]")


def _merge(graphs: dict[str, TripartiteWeightedGraph], scales: dict[str, dict[str, Fraction]],
           extra_vertices: dict[str, list[tuple[str, Fraction]]], extra_edges: Iterable[tuple[str, str]],
           ) -> TripartiteWeightedGraph:
    """Disjoint union of prefixed graphs with per-part weight scaling, plus new vertices and edges."""
    parts: dict[str, list[tuple[str, Fraction]]] = {p: [] for p in PARTS}
    edges: list[tuple[str, str]] = []
    for tag, g in graphs.items():
        for p in PARTS:
            s = scales[tag][p]
            parts[p].extend((f"{tag}{v}", s * g.weight[v]) for v in g.ids(p))
        edges.extend((f"{tag}{u}", f"{tag}{v}") for u, v in g.edges)
    for p, vs in extra_vertices.items():
        parts[p].extend(vs)
    edges.extend(extra_edges)
    return TripartiteWeightedGraph.from_parts(parts, edges)


# --------------------------------------------------------------------------- cyclic and paths


def cyclic_graph(k: int, g: int, h: int) -> TripartiteWeightedGraph:
    """a_i ~ b_i..b_{i+g-1} and b_i ~ c_i..c_{i+h-1}, indices mod k, uniform weights."""
    a = [f"a{i}" for i in range(1, k + 1)]
    b = [f"b{i}" for i in range(1, k + 1)]
    c = [f"c{i}" for i in range(1, k + 1)]
    edges = {(a[i], b[(i + j) % k]) for i in range(k) for j in range(g)}
    edges |= {(b[i], c[(i + j) % k]) for i in range(k) for j in range(h)}
    return TripartiteWeightedGraph.uniform(a, b, c, edges)


def cyclic_shift(k: int, x, y) -> ConstructionResult:
    x, y = _domain(x, y)
    if k < 1:
        raise ValueError("k must be a positive integer")
    g, h = ceil(k * x), ceil(k * y)
    params = FreeParams()
    params.set("k", k)
    params.set("g", g, "ceil(k*x)")
    params.set("h", h, "ceil(k*y)")
    claim = F(g + h - 1, k)
    cert = _cert(cyclic_graph(k, g, h), "xi", x, y, claim, False, f"cyclic_shift(k={k})")
    return _finish(cert, params)


def add_path_extension(inner: WitnessCertificate, x, y, z) -> ConstructionResult:
    """Add a path a-b-c: a weighs z, b weighs x, c weighs y; the inner parts are scaled down."""
    x, y, z = parse_rational(x), parse_rational(y), parse_rational(z)
    if not (0 < z < 1):
        raise ParameterError(f"z={fmt(z)} must lie in (0, 1)")
    if not (0 < x < 1 and 0 < y < 1):
        raise ParameterError("x and y must lie in (0, 1)")
    xi, yi, zi = x / (1 - x), y / (1 - y), z / (1 - z)
    if xi > 1 or yi > 1:
        raise ParameterError(f"inner parameters ({fmt(xi)}, {fmt(yi)}) leave (0, 1]")
    rep = check_constraints(inner.graph, "phi", xi, yi)
    if not rep.satisfied:
        raise ParameterError(f"inner graph is not constrained at ({fmt(xi)}, {fmt(yi)})")
    v = witness_value(inner.graph)
    if v > zi:
        raise ParameterError(f"inner value {fmt(v)} exceeds z/(1-z) = {fmt(zi)}")
    g = _merge(
        {"_": inner.graph}, {"_": {"A": 1 - z, "B": 1 - x, "C": 1 - y}},
        {"A": [("a*", z)], "B": [("b*", x)], "C": [("c*", y)]},
        [("a*", "b*"), ("b*", "c*")],
    )
    g = _fresh_ids(g)
    params = FreeParams()
    params.set("z", z)
    params.set("inner_value", v, f"<= z/(1-z) = {fmt(zi)}")
    cert = _cert(g, "phi", x, y, z, False, f"add_path({inner.provenance})")
    return _finish(cert, params)


def _fresh_ids(g: TripartiteWeightedGraph) -> TripartiteWeightedGraph:
    """Rename to a{i}, b{i}, c{i} in part order so nested constructions stay readable."""
    ren = {}
    for p in PARTS:
        for i, v in enumerate(g.ids(p), 1):
            ren[v] = f"{p.lower()}{i}"
    parts = {p: [(ren[v], g.weight[v]) for v in g.ids(p)] for p in PARTS}
    return TripartiteWeightedGraph.from_parts(parts, [(ren[u], ren[v]) for u, v in g.edges])


def _ceil(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


def _small_cyclic_order(x: Fraction, y: Fraction, cap: int = 256) -> int:
    """Least k with ceil(kx) + ceil(ky) <= k, i.e. cyclic value below 1; the lcm always works when x + y <= 1."""
    full = lcm(x.denominator, y.denominator)
    for k in range(1, min(cap, full) + 1):
        if _ceil(k * x) + _ceil(k * y) <= k:
            return k
    return full


def _circulant_order(t: Fraction, u: Fraction, cap: int = 256) -> tuple[int, int, int]:
    """Smallest N with ceil(tN) + ceil(uN) <= N (circulant degrees p, q), else the exact lcm."""
    full = lcm(t.denominator, u.denominator)
    for N in range(1, min(cap, full) + 1):
        p, q = _ceil(t * N), _ceil(u * N)
        if p + q <= N:
            return N, p, q
    return full, int(t * full), int(u * full)


def phi12curve_witness(k: int, x, y) -> ConstructionResult:
    """phi(x, y) < 1/(k+1) when x/(1-kx) + y/(1-ky) <= 1, by k path extensions of a cyclic base."""
    x, y = _domain(x, y)
    _require(k >= 0, "k must be non-negative")
    _require(1 - k * x > 0 and 1 - k * y > 0, f"1-kx and 1-ky must be positive (k={k})")
    lhs = x / (1 - k * x) + y / (1 - k * y)
    _require(lhs <= 1, f"x/(1-kx) + y/(1-ky) = {fmt(lhs)} > 1")
    params = FreeParams()
    if k == 0:
        kp = _small_cyclic_order(x, y)
        res = cyclic_shift(kp, x, y)
        params.set("k'", kp, "least cyclic order with value below 1")
        cert = res.certificate.replace(mode="phi", claimed_bound=F(1), strict=True,
                                       provenance=f"phi12curve(k=0, cyclic {kp})")
        return _finish(cert, params, notes=[f"cyclic value {fmt(res.value)}"])
    inner = phi12curve_witness(k - 1, x / (1 - x), y / (1 - y))
    v = inner.value
    z = v / (1 + v)
    params.set("z", z, "z/(1-z) = inner value")
    ext = add_path_extension(inner.certificate, x, y, z)
    cert = ext.certificate.replace(claimed_bound=F(1, k + 1), strict=True, provenance=f"phi12curve(k={k})")
    return _finish(cert, params)


def psi12curve_witness(k: int, x, y) -> ConstructionResult:
    """psi(x, y) < 1/(k+1) when x+(k+1)y <= 1 and (k+1)x+y <= 1."""
    x, y = _domain(x, y)
    _require(k >= 1, "k must be a positive integer")
    _require(x + (k + 1) * y <= 1, f"x+(k+1)y = {fmt(x + (k + 1) * y)} > 1")
    _require((k + 1) * x + y <= 1, f"(k+1)x+y = {fmt((k + 1) * x + y)} > 1")
    s = max(x, y)
    t, u = x / (1 - k * s), y / (1 - k * s)
    N, p, q = _circulant_order(t, u)
    r = (F(1, k + 1) - x) / ((k + 1) * N)
    params = FreeParams()
    for name, val in (("s", s), ("N", N), ("p", p), ("q", q), ("r", r)):
        params.set(name, val)
    A = [(f"a{i}", k * r * (N + 1) / N) for i in range(1, N + 1)]
    A += [(f"a'{i}", F(1, k + 1) - r) for i in range(1, k + 1)] + [("a*", F(1, k + 1) - N * k * r)]
    B = [(f"b{i}", (1 - k * s) / N) for i in range(1, N + 1)] + [(f"b'{i}", s) for i in range(1, k + 1)]
    C = [(f"c{i}", (1 - k * y) / N) for i in range(1, N + 1)] + [(f"c'{i}", y) for i in range(1, k + 1)]
    edges = [(f"a{i + 1}", f"b{(i + j) % N + 1}") for i in range(N) for j in range(p)]
    edges += [(f"b{i + 1}", f"c{(i + j) % N + 1}") for i in range(N) for j in range(q)]
    edges += [(f"a'{i}", f"b'{i}") for i in range(1, k + 1)] + [(f"b'{i}", f"c'{i}") for i in range(1, k + 1)]
    edges += [("a*", f"b{i}") for i in range(1, N + 1)]
    g = TripartiteWeightedGraph.from_parts({"A": A, "B": B, "C": C}, set(edges))
    cert = _cert(g, "psi", x, y, F(1, k + 1), True, f"psi12curve(k={k})")
    return _finish(cert, params)


# --------------------------------------------------------------------------- figure graphs

_FIG1_WEIGHTS = {1: 3, 2: 3, 3: 3, 4: 5, 5: 5, 6: 4, 7: 4}
_FIG1_AB = [(1, 1), (2, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3), (1, 4), (2, 4), (3, 4),
            (1, 5), (2, 5), (3, 5), (4, 6), (5, 7), (6, 4), (7, 5), (6, 6), (6, 7), (7, 6), (7, 7)]
# orbits of the automorphism group, used to keep LP fallbacks small
_FIG1_ORBITS = {1: "m", 2: "m", 3: "m", 4: "l", 5: "l", 6: "r", 7: "r"}


def figure1_topology(weights: dict[str, dict[int, Fraction]] | None = None) -> TripartiteWeightedGraph:
    w = weights or {p: {i: F(n, 27) for i, n in _FIG1_WEIGHTS.items()} for p in PARTS}
    parts = {p: [(f"{p.lower()}{i}", w[p][i]) for i in range(1, 8)] for p in PARTS}
    edges = [(f"a{i}", f"b{j}") for i, j in _FIG1_AB] + [(f"b{i}", f"c{i}") for i in range(1, 8)]
    return TripartiteWeightedGraph.from_parts(parts, edges)


def _figure1_classes(reversed_: bool = False) -> dict[str, str]:
    out = {}
    for p in PARTS:
        for i, o in _FIG1_ORBITS.items():
            out[f"{p.lower()}{i}"] = f"{p}{o}"
    return out


def figure1_graph(exactify: bool = False) -> ConstructionResult:
    g = figure1_topology()
    x, y = F(13, 27), F(1, 9)
    if not exactify:
        return _finish(_cert(g, "psi", x, y, x, False, "figure1"))
    big = blow_up(g, 27)
    keep = []
    for u, v in big.edges:
        bu, bv = u.rsplit(".", 1)[0], v.rsplit(".", 1)[0]
        if bu.startswith("b") and bv.startswith("c"):
            # circulant thinning of the K_{s,s} block: clone j keeps clones j, j+1, j+2
            s = _FIG1_WEIGHTS[int(bu[1:])]
            j, l = int(u.rsplit(".", 1)[1]), int(v.rsplit(".", 1)[1])
            if (l - j) % s not in (0, 1, 2):
                continue
        keep.append((u, v))
    parts = {p: [(v, big.weight[v]) for v in big.ids(p)] for p in PARTS}
    ex = TripartiteWeightedGraph.from_parts(parts, keep, weighted=False)
    params = FreeParams()
    params.set("N", 27, "blow-up factor")
    return _finish(_cert(ex, "xi", x, y, x, False, "figure1(exactified)"), params)


_FIG2 = {
    "A": [("a1", 1), ("a2", 1), ("a3", 1), ("a4", 1), ("a5", 1), ("a6", 4)],
    "B": [("b1", 2), ("b2", 1), ("b3", 1), ("b4", 1), ("b5", 2), ("b6", 3)],
    "C": [("c1", 1), ("c2", 2), ("c3", 1), ("c4", 2), ("c5", 1), ("c6", 4)],
}
_FIG2_EDGES = (
    "a1b1 a1b3 a2b1 a2b2 a3b2 a3b3 a3b4 a4b4 a4b5 a5b5 a5b3 a6b6 "
    "b1c5 b1c4 b1c3 b2c5 b2c4 b2c1 b3c2 b3c4 b4c5 b4c2 b4c1 b5c3 b5c2 b5c1 b6c6"
).split()


def figure2_graph() -> ConstructionResult:
    parts = {p: [(v, F(n, sum(m for _, m in vs))) for v, n in vs] for p, vs in _FIG2.items()}
    g = TripartiteWeightedGraph.from_parts(parts, [(e[:2], e[2:]) for e in _FIG2_EDGES])
    params = FreeParams()
    for p, vs in _FIG2.items():
        params.set(f"total_{p}", sum(n for _, n in vs), "units before normalising")
    return _finish(_cert(g, "phi", F(3, 10), F(4, 11), F(4, 9), False, "figure2"), params)


# ids relabelled so that A, B, C carry the x, y, z degree conditions in cyclic order
_FIG5 = {
    "A": [("a1", F(1, 4)), ("a2", F(1, 8)), ("a3", F(1, 8)), ("a4", F(1, 8)), ("a5", F(3, 8))],
    "B": [("b1", F(1, 7)), ("b2", F(1, 7)), ("b3", F(1, 7)), ("b4", F(1, 7)), ("b5", F(3, 7))],
    "C": [("c1", F(2, 7)), ("c2", F(1, 7)), ("c3", F(1, 7)), ("c4", F(1, 7)), ("c5", F(2, 7))],
}
_FIG5_EDGES = (
    "a1b1 a1b5 a2b2 a2b5 a3b3 a3b5 a4b4 a4b5 a5b1 a5b2 a5b3 a5b4 "
    "b1c1 b2c3 b3c2 b2c4 b3c4 b4c2 b4c3 b5c5 "
    "a4c1 a2c1 a3c1 a2c2 a1c2 a3c3 a1c3 a4c4 a1c4 a5c5"
).split()


def figure5_graph() -> TripartiteWeightedGraph:
    """Triangle-free tripartite graph with A-C edges: A->B >= 4/7, B->C >= 2/7, C->A >= 3/8."""
    return TripartiteWeightedGraph.from_parts(_FIG5, [(e[:2], e[2:]) for e in _FIG5_EDGES])


def figure5_triangular_witness():
    from .bound_certifier import TriangularWitness, check_triangular_witness

    tw = TriangularWitness(figure5_graph(), F(4, 7), F(2, 7), F(3, 8), frozenset())
    return tw, check_triangular_witness(tw)


def figure7_regular_graph() -> BipartiteWeightedGraph:
    w = {"1": F(1, 5), "2": F(1, 5), "3": F(1, 5), "4": F(2, 5)}
    left = [(f"a{i}", v) for i, v in w.items()]
    right = [(f"b{i}", v) for i, v in w.items()]
    edges = [("a1", "b2"), ("a1", "b1"), ("a2", "b1"), ("a2", "b3"), ("a3", "b2"), ("a3", "b3"), ("a4", "b4")]
    return BipartiteWeightedGraph.from_lists(left, right, edges)


def regular_extension(bg: BipartiteWeightedGraph, x, mode: str = "psi") -> ConstructionResult:
    """Match a copy of B onto a new part C.

    phi: C is uniform, giving phi(x, 1/n) <= x.  psi: C copies the B weights,
    giving psi(x, min-weight) <= x.
    """
    x = parse_rational(x)
    if not bg.is_regular(x):
        raise InapplicableError(f"graph is not {fmt(x)}-regular")
    n = bg.order
    if mode == "phi":
        cw = {b: F(1, n) for b in bg.right}
        y = F(1, n)
    elif mode == "psi":
        cw = dict(bg.right_weights)
        y = bg.min_weight
    else:
        raise ValueError("mode must be phi or psi")
    parts = {
        "A": list(bg.left_weights.items()),
        "B": list(bg.right_weights.items()),
        "C": [(f"c_{b}", cw[b]) for b in bg.right],
    }
    edges = list(bg.edges) + [(b, f"c_{b}") for b in bg.right]
    g = TripartiteWeightedGraph.from_parts(parts, edges)
    return _finish(_cert(g, mode, x, y, x, False, f"regular_extension({mode}, order {n})"))


# --------------------------------------------------------------------------- the 1/2 level


def _lp_fallback(topology, mode, x, y, bound, strict, classes, label) -> TripartiteWeightedGraph:
    w = feasible_weights(topology, mode, x, y, bound, strict=strict, classes=classes)
    if w is None:
        raise ConstructionInfeasible(f"{label}: no feasible weighting on the fixed topology")
    return topology.with_weights(w)


def psi12extracurve_witness(x, y, variant: str = "forward") -> ConstructionResult:
    """Reweighted figure1 topology.

    forward: psi(x, y) <= 13/27 when x <= 13/27, y <= 1/7, 3x+5y <= 2.
    reversed: with the same (x, y) and y < 1/8, a certificate at (y, x) read
    as (C, B, A) showing psi(y, x) < 1/2.
    """
    x, y = _domain(x, y)
    _require(x <= F(13, 27), f"x={fmt(x)} > 13/27")
    _require(y <= F(1, 7), f"y={fmt(y)} > 1/7")
    _require(3 * x + 5 * y <= 2, f"3x+5y = {fmt(3 * x + 5 * y)} > 2")
    if variant not in ("forward", "reversed"):
        raise ValueError("variant must be forward or reversed")
    if variant == "reversed":
        _require(y < F(1, 8), f"y={fmt(y)} is not below 1/8")
    disc: list[str] = []
    params = FreeParams()
    # closed-form weights, orbits listed left to right (orbits l, m, r)
    q = max(F(3, 2) * x + y - F(1, 2), F(8, 5) * x - F(2, 5), F(27))
    r_ = max(2 * y, x)  # the closed form for r uses to p before p is defined; p/2 taken as 0
    p = 1 - q - r_
    params.set("q_formula", q)
    params.set("p_formula", p)
    row_a = {"l": F(10, 27), "m": F(1, 3), "r": F(4, 27)}
    row_b = {"l": p / 2, "m": r_ / 2, "r": q / 3}
    if variant == "forward":
        row_c = {"l": F(1, 7), "m": F(1, 7), "r": F(1, 7)}
    else:
        pp, qq, rr = F(5, 16) - y / 2, F(11, 31) + 3 * y / 8, F(21, 64) + y / 8
        row_c = {"l": pp / 2, "m": rr / 3, "r": qq / 2}
    rows = {"A": row_a, "B": row_b, "C": row_c}
    formula_w = {p_: {i: rows[p_][o] for i, o in _FIG1_ORBITS.items()} for p_ in PARTS}
    cert = None
    try:
        g = figure1_topology(formula_w)
        cert = _formula_cert(g, x, y, variant)
        if not verify_certificate(cert).satisfied:
            disc.append("closed-form weights give a structurally valid graph that fails validation")
            cert = None
    except StructuralError as exc:
        disc.append(f"closed-form weights rejected: {exc}")
    if cert is None:
        topo = figure1_topology()
        if variant == "forward":
            g = _lp_fallback(topo, "psi", x, y, F(13, 27), False, _figure1_classes(), "psi12extracurve")
            cert = _cert(g, "psi", x, y, F(13, 27), False, "psi12extracurve(forward, LP weights)")
        else:
            topo = topo.reversed()
            g = _lp_fallback(topo, "psi", y, x, F(1, 2), True, _figure1_classes(), "psi12extracurve")
            cert = _cert(g, "psi", y, x, F(1, 2), True, "psi12extracurve(reversed, LP weights)")
        disc.append("weights recovered by LP feasibility over the figure1 topology with orbit-shared weights")
    return _finish(cert, params, disc)


def _formula_cert(g, x, y, variant):
    if variant == "forward":
        return _cert(g, "psi", x, y, F(13, 27), False, "psi12extracurve(forward, closed-form weights)")
    return _cert(g.reversed(), "psi", y, x, F(1, 2), True, "psi12extracurve(reversed, closed-form weights)")


def _simplest_rationals(lo: Fraction, hi: Fraction, max_den: int) -> Iterator[Fraction]:
    for d in range(1, max_den + 1):
        for n in range(ceil(lo * d), int(hi * d) + 1):
            v = F(n, d)
            if v.denominator == d and lo <= v <= hi:
                yield v


def phi12bettercurve_witness(x, y, max_N: int = 60) -> ConstructionResult:
    """phi(x, y) < 1/2 for x <= 1/3, y < 1/2, y < (1-x)^2/(2-4x+6x^2)."""
    x, y = _domain(x, y)
    _require(x <= F(1, 3), f"x={fmt(x)} > 1/3")
    _require(y < F(1, 2), f"y={fmt(y)} is not below 1/2")
    bound = (1 - x) ** 2 / (2 - 4 * x + 6 * x * x)
    _require(y < bound, f"y={fmt(y)} is not below (1-x)^2/(2-4x+6x^2) = {fmt(bound)}")
    params = FreeParams()
    if y <= F(1, 3):
        res = cyclic_shift(3, x, y)
        cert = res.certificate.replace(mode="phi", claimed_bound=F(1, 2), strict=True,
                                       provenance="phi12bettercurve(cyclic 3)")
        return _finish(cert, params, notes=["y <= 1/3: cyclic construction with k=3"])
    if x + 2 * y <= 1:
        res = psi12curve_witness(1, x, y)
        cert = res.certificate.replace(provenance="phi12bettercurve(psi12curve k=1)")
        return _finish(cert, res.params, notes=["x+2y <= 1: delegated to psi12curve"])
    m = 1 / y - 2
    params.set("m", m, "1/y - 2")
    disc = ["closed-form B-weights (1-s2/x-x)/N and s2/(Nx) fail the A-side constraints; "
            "using (1-x-x/s2)/N and x/(N*s2), which match the stated lower bound on s2",
            "closed-form conditions on p, q are inconsistent; using q < 1/2, q + p/N > 1/2, "
            "p + (N-1)q/N < 1/2, which hold for 0 < p < N/(2(N^2-N+1))"]

    def s1_ok(s1):
        return 0 < s1 < 1 and s1 >= x / (1 - x) and x * s1 * s1 - m * (1 - x) * s1 + m * x <= 0

    def f_interval(s1, s2):
        lo = max(F(0), (2 * y - 1 + s1 - y * s1) / (1 - (1 - s1) * s2))
        hi = min(F(1), (1 - 2 * y) / s2, y / (1 - s2))
        return lo, hi

    for N in range(2, max_N + 1):
        for i in range(N - 1, 0, -1):
            s1 = F(i, N)
            if not s1_ok(s1) or s1 - x * (1 + s1) <= 0:
                continue
            s2_lo = max(F(0), x * s1 / (s1 - x * (1 + s1)))
            s2_hi = m / s1
            for j in range(1, N):
                s2 = F(j, N)
                if not (s2_lo <= s2 <= s2_hi):
                    continue
                f_lo, f_hi = f_interval(s1, s2)
                if f_lo > f_hi:
                    continue
                res = _phi12better_build(x, y, N, s1, s2, f_lo, f_hi, params)
                if res is not None:
                    params.set("s1", s1, "x/(1-x), r1 <= s1 <= r2, s1 < 1")
                    params.set("s2", s2, _interval_text(s2_lo, min(s2_hi, F(1)), False, True))
                    return _finish(res, params, disc)
    raise ConstructionInfeasible(f"no admissible (s1, s2, N) with N <= {max_N}")


def _phi12better_build(x, y, N, s1, s2, f_lo, f_hi, params):
    p = F(N, 4 * (N * N - N + 1))
    q_lo, q_hi = F(1, 2) - p / N, min(F(1, 2), (F(1, 2) - p) * N / (N - 1))
    if q_lo >= q_hi:
        return None
    q = (q_lo + q_hi) / 2
    for f in interval_candidates(f_lo, f_hi):
        G1 = cyclic_graph(N, int(s1 * N), int((1 - s1) * N))
        G2 = cyclic_graph(N, int(s2 * N), int((1 - s2) * N))
        extra = [("a*", "b*")] + [("b*", f"1{c}") for c in G1.ids("C")] + [("c*", f"2{b}") for b in G2.ids("B")]
        extra += [(f"1{b}", f"2{c}") for b in G1.ids("B") for c in G2.ids("C")]
        beta1 = 1 - x - x / s2
        g = _merge(
            {"1": G1, "2": G2},
            {"1": {"A": p, "B": beta1, "C": 1 - s2 * f - y}, "2": {"A": q, "B": x / s2, "C": f}},
            {"A": [("a*", 1 - p - q)], "B": [("b*", x)], "C": [("c*", y - (1 - s2) * f)]},
            extra,
        )
        cert = _cert(g, "phi", x, y, F(1, 2), True, f"phi12bettercurve(N={N})")
        if verify_certificate(cert).satisfied:
            params.set("N", N)
            params.set("p", p, _interval_text(F(0), F(N, 2 * (N * N - N + 1)), True, True))
            params.set("q", q, _interval_text(q_lo, q_hi, True, True))
            params.set("f", f, _interval_text(f_lo, f_hi))
            return cert
    return None


def phi13bettercurve_witness(x, y) -> ConstructionResult:
    """phi(x, y) < 1/3 for x <= 1/4, y < 1/3, y < (1-2x)^2/(3-12x+16x^2): a path extension of the 1/2 construction."""
    x, y = _domain(x, y)
    _require(x <= F(1, 4), f"x={fmt(x)} > 1/4")
    _require(y < F(1, 3), f"y={fmt(y)} is not below 1/3")
    bound = (1 - 2 * x) ** 2 / (3 - 12 * x + 16 * x * x)
    _require(y < bound, f"y={fmt(y)} is not below (1-2x)^2/(3-12x+16x^2) = {fmt(bound)}")
    inner = phi12bettercurve_witness(x / (1 - x), y / (1 - y))
    v = inner.value
    z = v / (1 + v)
    ext = add_path_extension(inner.certificate, x, y, z)
    params = FreeParams(dict(inner.params.values), dict(inner.params.intervals))
    params.set("z", z, "z/(1-z) = inner value")
    cert = ext.certificate.replace(claimed_bound=F(1, 3), strict=True, provenance="phi13bettercurve")
    return _finish(cert, params, inner.formula_discrepancies)


# --------------------------------------------------------------------------- the 2/3 level


def _seven_paths() -> TripartiteWeightedGraph:
    parts = {p: [(f"{p.lower()}{i}", F(1, 7)) for i in range(1, 8)] for p in PARTS}
    edges = [(f"a{i}", f"b{i}") for i in range(1, 8)] + [(f"b{i}", f"c{i}") for i in range(1, 8)]
    edges += [(f"a{i}", f"b{j}") for i in range(1, 4) for j in range(4, 8)]
    edges += [(f"a{j}", f"b{i}") for i in range(1, 4) for j in range(4, 8)]
    return TripartiteWeightedGraph.from_parts(parts, edges)


def psi23extra_witness(x, y, variant: str = "first") -> ConstructionResult:
    """psi(x, y) < 2/3 on two strips, from seven paths with cross edges between blocks {1..3} and {4..7}."""
    x, y = _domain(x, y)
    params = FreeParams()
    disc: list[str] = []
    topo = _seven_paths()
    blocks = {f"{p}{i}": f"{p}{'L' if i <= 3 else 'R'}" for p in "abc" for i in range(1, 8)}
    if variant == "first":
        _require(F(4, 7) <= x <= F(11, 17), f"x={fmt(x)} outside [4/7, 11/17]")
        _require(x + 3 * y <= 1, f"x+3y = {fmt(x + 3 * y)} > 1")
        lo, hi = max(F(1, 6), (4 * x - 1) / 9), min(F(5, 27), (1 - x) / 2)
        p = _pick("p", lo, hi, lo == F(1, 6), hi == F(5, 27))
        params.set("p", p, "(1/6, 5/27) and [(4x-1)/9, (1-x)/2]")
        w = {}
        for i in range(1, 8):
            left = i <= 3
            w[f"a{i}"] = p if left else (1 - 3 * p) / 4
            w[f"b{i}"] = (4 * x - 1) / 9 if left else (1 - x) / 3
            w[f"c{i}"] = F(1, 7)
        cert = _cert(topo.with_weights(w), "psi", x, y, F(2, 3), True, "psi23extra(first)")
        if verify_certificate(cert).satisfied:
            return _finish(cert, params)
        disc.append("closed-form weights for the first strip failed validation")
    elif variant == "second":
        _require(F(5, 8) < y <= F(11, 17), f"y={fmt(y)} outside (5/8, 11/17]")
        _require(3 * x + y <= 1, f"3x+y = {fmt(3 * x + y)} > 1")
        lo, hi = max(F(1, 6), x), min(F(5, 27), (1 - 4 * x) / 3)
        try:
            p = _pick("p", lo, hi, lo == F(1, 6), hi == F(5, 27))
            params.set("p", p, "(1/6, 5/27) and [x, (1-4x)/3]")
            w = {}
            for i in range(1, 8):
                left = i <= 3
                w[f"a{i}"] = p if left else (1 - 3 * p) / 4
                w[f"b{i}"] = (4 * y - 1) / 9 if left else (1 - y) / 3
                w[f"c{i}"] = (1 - y) / 2 if left else (3 * y - 1) / 8
            g = topo.with_weights(w).reversed()
            cert = _cert(g, "psi", x, y, F(2, 3), True, "psi23extra(second)")
            if verify_certificate(cert).satisfied:
                return _finish(cert, params)
            disc.append("closed-form weights for the second strip, read as (C,B,A), failed validation")
        except ConstructionInfeasible as exc:
            disc.append(f"closed-form interval for p: {exc}")
    else:
        raise ValueError("variant must be first or second")
    for label, t in (("as given", topo), ("read as (C,B,A)", topo.reversed())):
        wts = feasible_weights(t, "psi", x, y, F(2, 3), strict=True, classes=blocks)
        if wts is not None:
            disc.append(f"weights recovered by LP feasibility on the seven-path topology {label}")
            cert = _cert(t.with_weights(wts), "psi", x, y, F(2, 3), True, f"psi23extra({variant}, LP weights)")
            return _finish(cert, params, disc)
    raise ConstructionInfeasible("psi23extra: " + "; ".join(disc + ["LP fallback infeasible in both readings"]))


def _hub_extension(inner: WitnessCertificate, wa, wb, wc, edges_kind: str, mode, x, y, claim, strict, prov):
    """Inner graph scaled into the complement of three new vertices a, b, c.

    edges_kind "hub": a ~ all B', b ~ all A', c ~ b.
    edges_kind "reverse": a ~ b, b ~ all C', c ~ all B'.
    """
    g0 = inner.graph
    if edges_kind == "hub":
        extra = [("a*", f"_{v}") for v in g0.ids("B")] + [(f"_{v}", "b*") for v in g0.ids("A")] + [("b*", "c*")]
    else:
        extra = [("a*", "b*")] + [("b*", f"_{v}") for v in g0.ids("C")] + [(f"_{v}", "c*") for v in g0.ids("B")]
    g = _merge({"_": g0}, {"_": {"A": 1 - wa, "B": 1 - wb, "C": 1 - wc}},
               {"A": [("a*", wa)], "B": [("b*", wb)], "C": [("c*", wc)]}, extra)
    return _cert(_fresh_ids(g), mode, x, y, claim, strict, prov)


def phi23curve_witness(x, y) -> ConstructionResult:
    """phi(x, y) < 2/3 when y <= 1/2 and x/(1-x) + y/(1-2y) <= 2."""
    x, y = _domain(x, y)
    _require(y < F(1, 2), f"y={fmt(y)} must be below 1/2 for y/(1-2y) to be finite")
    lhs = x / (1 - x) + y / (1 - 2 * y) if x < 1 else None
    _require(lhs is not None and lhs <= 2, f"x/(1-x) + y/(1-2y) = {fmt(lhs) if lhs is not None else 'inf'} > 2")
    params = FreeParams()
    if x <= F(1, 2):
        res = cyclic_shift(2, x, y)
        cert = res.certificate.replace(mode="phi", claimed_bound=F(2, 3), strict=True,
                                       provenance="phi23curve(cyclic 2)")
        return _finish(cert, params, notes=["x <= 1/2: cyclic construction with k=2"])
    xp, yp = (2 * x - 1) / x, y / (1 - y)
    params.set("x'", xp, "(2x-1)/x")
    params.set("y'", yp, "y/(1-y)")
    inner = phi12curve_witness(1, xp, yp)
    zp = inner.value
    params.set("z'", zp, "inner witness value, < 1/2")
    hi = (1 - 2 * zp) / (3 - 3 * zp)
    r = _pick("r", F(0), hi, True, True)
    params.set("r", r, _interval_text(F(0), hi, True, True))
    cert = _hub_extension(inner.certificate, F(1, 3) + r, 1 - x, y, "hub", "phi", x, y, F(2, 3), True, "phi23curve")
    return _finish(cert, params, notes=["inner part scaled by weight instead of vertex multiplication"])


def hub_extension_witness(inner: WitnessCertificate, x, y, params: FreeParams | None = None) -> WitnessCertificate:
    """psi(x, y) < 2/3 from a psi witness at (x', y') of value z' < 1/2 (a ~ B', b ~ A', c ~ b)."""
    x, y = parse_rational(x), parse_rational(y)
    params = params if params is not None else FreeParams()
    xp, yp = inner.x, inner.y
    zp = witness_value(inner.graph)
    _require(check_constraints(inner.graph, "psi", xp, yp).satisfied, "inner witness is not biconstrained")
    _require(zp < F(1, 2), f"inner value {fmt(zp)} is not below 1/2")
    _require(x <= 1 / (2 - xp), f"x={fmt(x)} > 1/(2-x') = {fmt(1 / (2 - xp))}")
    _require(x < 1 - (1 - xp) / (3 * (1 - zp)), "x is not below 1-(1-x')/(3(1-z'))")
    _require(y <= yp / (1 + yp), f"y={fmt(y)} > y'/(1+y') = {fmt(yp / (1 + yp))}")
    _require(x + (1 - xp) * y / yp <= 1, "x + (1-x')y/y' > 1")
    q_lo, q_hi = max(y, (x - xp) / (1 - xp)), min(1 - x, 1 - y / yp)
    q = _pick("q", q_lo, q_hi, False, False)
    p_lo, p_hi = max((x - xp) / (1 - xp), F(1, 3)), min(1 - x, (F(2, 3) - zp) / (1 - zp))
    p = _pick("p", p_lo, p_hi, p_lo == F(1, 3), p_hi == (F(2, 3) - zp) / (1 - zp))
    params.set("z'", zp)
    params.set("q", q, _interval_text(q_lo, q_hi))
    params.set("p", p, _interval_text(p_lo, p_hi))
    return _hub_extension(inner, p, q, y, "hub", "psi", x, y, F(2, 3), True, "hub_extension")


def reverse_extension_witness(inner: WitnessCertificate, x, y, params: FreeParams | None = None) -> WitnessCertificate:
    """psi(x, y) < 2/3 from a psi witness at (x', y') of value z' < 1/2 (a ~ b, b ~ C', c ~ B')."""
    x, y = parse_rational(x), parse_rational(y)
    params = params if params is not None else FreeParams()
    xp, yp = inner.x, inner.y
    zp = witness_value(inner.graph)
    _require(check_constraints(inner.graph, "psi", xp, yp).satisfied, "inner witness is not biconstrained")
    _require(zp < F(1, 2), f"inner value {fmt(zp)} is not below 1/2")
    _require(y <= 1 / (2 - yp), f"y={fmt(y)} > 1/(2-y') = {fmt(1 / (2 - yp))}")
    _require(x < 2 * xp / 3, f"x={fmt(x)} is not below 2x'/3 = {fmt(2 * xp / 3)}")
    _require((1 - yp) * x / xp + y <= 1, "(1-y')x/x' + y > 1")
    q_lo, q_hi = max(x, (y - yp) / (1 - yp)), min(1 - y, 1 - x / xp)
    q = _pick("q", q_lo, q_hi, False, False)
    p_lo, p_hi = max(x, F(1, 3)), min(1 - x / xp, (F(2, 3) - zp) / (1 - zp))
    p = _pick("p", p_lo, p_hi, p_lo == F(1, 3), p_hi == (F(2, 3) - zp) / (1 - zp))
    params.set("z'", zp)
    params.set("q", q, _interval_text(q_lo, q_hi))
    params.set("p", p, _interval_text(p_lo, p_hi))
    return _hub_extension(inner, p, q, 1 - y, "reverse", "psi", x, y, F(2, 3), True, "reverse_extension")


def phi23extracurve_witness(x, y, base: str = "third") -> ConstructionResult:
    """psi(x, y) < 2/3 on the strips 1/2 <= x <= 3/5, x+2y <= 1 (third) and 3/5 <= x <= 5/8, x+3y <= 1 (two-fifths)."""
    x, y = _domain(x, y)
    params = FreeParams()
    if base == "third":
        _require(F(1, 2) <= x <= F(3, 5), f"x={fmt(x)} outside [1/2, 3/5]")
        _require(x + 2 * y <= 1, f"x+2y = {fmt(x + 2 * y)} > 1")
        inner = cyclic_shift(3, F(1, 3), F(1, 3)).certificate
    elif base == "two-fifths":
        _require(F(3, 5) <= x <= F(5, 8), f"x={fmt(x)} outside [3/5, 5/8]")
        _require(x + 3 * y <= 1, f"x+3y = {fmt(x + 3 * y)} > 1")
        inner = cyclic_shift(5, F(2, 5), F(1, 5)).certificate
    else:
        raise ValueError("base must be third or two-fifths")
    params.set("x'", inner.x)
    params.set("y'", inner.y)
    cert = hub_extension_witness(inner, x, y, params)
    return _finish(cert.replace(provenance=f"phi23extracurve({base})"), params,
                   notes=["certificate is biconstrained (psi)"])


def phi23reversecurve_witness(x, y, bullet: str = "one") -> ConstructionResult:
    """psi(x, y) < 2/3 for 1/2 <= y <= 3/5, 2x+y <= 1 (one) and y >= 1/2, x+3y <= 2 (two)."""
    x, y = _domain(x, y)
    params = FreeParams()
    if bullet == "one":
        _require(F(1, 2) <= y <= F(3, 5), f"y={fmt(y)} outside [1/2, 3/5]")
        _require(2 * x + y <= 1, f"2x+y = {fmt(2 * x + y)} > 1")
        _require(y > F(1, 2), "y = 1/2 leaves the k-interval unbounded; 1/(8y-4) is undefined")
        lo, hi = 1 / (3 * y - 1) - F(1, 2), 1 / (8 * y - 4) - F(1, 4)
        k = max(1, ceil(lo))
        _require(k <= hi, f"no integer k in [{fmt(lo)}, {fmt(hi)}]")
        params.set("k", k, _interval_text(lo, hi))
        inner = cyclic_shift(2 * k + 1, F(k, 2 * k + 1), F(1, 2 * k + 1)).certificate
    elif bullet == "two":
        _require(y >= F(1, 2), f"y={fmt(y)} is below 1/2")
        _require(x + 3 * y <= 2, f"x+3y = {fmt(x + 3 * y)} > 2")
        xp, yp = 2 / y - 3, 2 - 1 / y
        _require(xp > 0 and yp > 0, f"inner point ({fmt(xp)}, {fmt(yp)}) leaves (0, 1]")
        params.set("x'", xp, "2/y - 3")
        params.set("y'", yp, "2 - 1/y")
        try:
            inner = psi12curve_witness(1, xp, yp).certificate
        except InapplicableError as exc:
            raise InapplicableError(
                f"inner point ({fmt(xp)}, {fmt(yp)}) has no psi witness below 1/2 ({exc}); "
                "this bullet needs y >= 3/5") from None
    else:
        raise ValueError("bullet must be one or two")
    cert = reverse_extension_witness(inner, x, y, params)
    return _finish(cert.replace(provenance=f"phi23reversecurve({bullet})"), params,
                   notes=["certificate is biconstrained (psi)"])


# --------------------------------------------------------------------------- registry


REGISTRY: dict[str, Callable[..., object]] = {
    "cyclic": cyclic_shift,
    "figure1": figure1_graph,
    "figure2": figure2_graph,
    "phi12curve": phi12curve_witness,
    "psi12curve": psi12curve_witness,
    "psi12extracurve": psi12extracurve_witness,
    "phi12bettercurve": phi12bettercurve_witness,
    "phi13bettercurve": phi13bettercurve_witness,
    "psi23extra": psi23extra_witness,
    "phi23curve": phi23curve_witness,
    "phi23extracurve": phi23extracurve_witness,
    "phi23reversecurve": phi23reversecurve_witness,
}
