"""Certified lower and upper bounds on phi, psi and xi at a point.

Lower bounds come from closed-form predicates evaluated exactly (radicals are
cleared by squaring with sign tracking).  Upper bounds come from validated
witness certificates only.  Two monotonicity facts are used throughout: a
certificate valid at (X, Y) is valid at every (x, y) <= (X, Y), and
phi <= psi <= xi pointwise, so a psi certificate also bounds phi and a phi
lower bound also bounds psi.  phi is symmetric, so in phi mode every
predicate and certificate is also tried with the coordinates swapped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .graph_core import (
    PARTS, ConstraintReport, Margin, StructuralError, TripartiteWeightedGraph, WitnessCertificate,
    format_rational, parse_rational, second_neighborhood, verify_certificate, witness_value, _bits,
)
from . import constructions as cons
from .lp_engine import InapplicableError, LPError, symmetrize_witness

F = Fraction
fmt = format_rational
K_MAX = 64

# certificate modes usable as upper bounds for each queried mode
USABLE_CERTS = {"phi": ("phi", "psi", "xi"), "psi": ("psi", "xi"), "xi": ("xi",)}


class ConsistencyViolation(RuntimeError):
    """A certified lower bound exceeds a certified upper bound."""


@dataclass(frozen=True)
class CertifiedBound:
    direction: str  # lower | upper
    value: Fraction
    strict: bool
    provenance: str
    mode: str
    certificate: WitnessCertificate | None = field(default=None, compare=False)

    def describe(self) -> str:
        if self.direction == "lower":
            rel = ">" if self.strict else ">="
        else:
            rel = "<" if self.strict else "<="
        return f"{self.mode} {rel} {fmt(self.value)}  [{self.provenance}]"


@dataclass(frozen=True)
class BoundInterval:
    mode: str
    x: Fraction
    y: Fraction
    best_lower: CertifiedBound
    best_upper: CertifiedBound
    lowers: tuple[CertifiedBound, ...] = ()
    uppers: tuple[CertifiedBound, ...] = ()

    @property
    def exact(self) -> bool:
        return (self.best_lower.value == self.best_upper.value
                and not self.best_lower.strict and not self.best_upper.strict)


# --------------------------------------------------------------------------- lower-bound predicates


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _first_k(start: int, ok: Callable[[int], bool], k_max: int) -> int | None:
    for k in range(max(1, start), k_max + 1):
        if ok(k):
            return k
    return None


def phi_predicates(x: Fraction, y: Fraction, k_max: int = K_MAX) -> list[tuple[str, Fraction, bool]]:
    """(tag, value, strict) for every phi lower-bound predicate that fires at (x, y)."""
    out: list[tuple[str, Fraction, bool]] = [("maxbound", max(x, y), False)]
    M, m = max(x, y), min(x, y)
    if x + y > 1:
        out.append(("trivial", F(1), False))
    k = math.floor(1 / M) + 1
    if k <= k_max:
        out.append((f"levelk+ k={k}", F(1, k), True))
    # y > 1/k: quadratic-type bound in x
    k0 = math.floor(1 / y) + 1
    if k0 == 2:
        out.append(("3-7 k=2", 2 * x - x * x, False))
    elif 3 <= k0 <= k_max and x < F(1, k0 - 1):
        den = k0 * x * (1 - x) + x * x - 3 * x + 1
        if den > 0:
            out.append((f"3-7 k={k0}", x * (2 - 3 * x) / den, False))
    # the same bound at x = 1/k, extended to x >= 1/k
    k = max(k0, 2, _ceil_div(x.denominator, x.numerator))
    if k <= k_max and y > F(1, k) and x >= F(1, k):
        out.append((f"5-12 k={k}", F(2 * k - 3, 2 * k * k - 4 * k + 1), False))
    # diagonal results applied at (m, m), which (x, y) dominates
    if m == 1:
        out.append(("limk1 k=1", F(1), False))
    else:
        est = max(1, math.ceil(math.log(float(m)) / math.log(1 - float(m))) - 2)
        k = _first_k(est, lambda k: (1 - m) ** k < m, k_max)
        if k is not None:
            out.append((f"limk1 k={k}", F(1, k), False))
    k = max(1, _ceil_div(m.denominator, m.numerator) - 1)
    if m >= F(1, k) - F(1, 13 * k ** 3):
        out.append((f"limk k={k}", F(1, k), False))
    if _mono2(x, y):
        out.append(("mono2", F(1, 2), False))
    if y <= F(1, 2) and x > (1 - y) ** 2 / (1 - 2 * y * y):
        out.append(("weighted23", F(2, 3), False))
    if _phi13(x, y):
        out.append(("phi1-3", F(1, 3), False))
    return out


def _mono2(x: Fraction, y: Fraction) -> bool:
    # y(1+sqrt(2x))^2/2 + x > 1  <=>  y*sqrt(2x) > D with D = 1 - x - y(1+2x)/2
    D = 1 - x - y * (1 + 2 * x) / 2
    return D < 0 or 2 * x * y * y > D * D


def _phi13(x: Fraction, y: Fraction) -> bool:
    # xy(1+sqrt(t))^2 >= R with t = 2/(3x), R = (1-x-y)/(1-y)
    if y == 1:
        return True
    t = F(2) / (3 * x)
    R = (1 - x - y) / (1 - y)
    L0 = x * y * (1 + t)
    L1 = 2 * x * y
    gap = R - L0
    return gap <= 0 or L1 * L1 * t >= gap * gap


def psi_predicates(x: Fraction, y: Fraction, k_max: int = K_MAX) -> list[tuple[str, Fraction, bool]]:
    """Predicates valid for psi only (biconstrained graphs), evaluated at (x, y)."""
    out: list[tuple[str, Fraction, bool]] = []
    k0 = math.floor((1 - x) / y) + 1  # least k with x + ky > 1

    def bisym_ok(k):
        d = 1 - (k - 1) * y
        return d > 0 and k * x + x / d >= 1

    k = _first_k(k0, bisym_ok, k_max)
    if k is not None and x + k * y > 1:
        out.append((f"bisym k={k}", F(1, k), False))
    k = max(k0, _ceil_div((1 - y).numerator * x.denominator, (1 - y).denominator * x.numerator) if y < 1 else 1)
    if k <= k_max and x + k * y > 1 and k * x + y >= 1:
        out.append((f"bisym2 k={k}", F(1, k), False))
    k1 = math.floor((1 - y) / x) + 1  # least k with kx + y > 1
    k = _first_k(k1, lambda k: y >= F(k - 1, k * k), k_max)
    if k is not None:
        out.append((f"semibi k={k}", F(1, k), False))
    if x * x * (1 + 3 * y) + x * (4 * y * y - y - 2) + 1 - 2 * y + 2 * y ** 3 < 0:
        out.append(("bite", F(1, 2), False))
    if x > F(1, 2) and y >= F(1, 3):
        out.append(("2+3", F(2, 3), False))
    if y > F(1, 2) and x >= F(1, 3):
        out.append(("3+2", F(2, 3), False))
    if y < 1 and max(x, y) > F(1, 2) and x >= F(1, 3) and x + 2 * y > 1 and 3 * x + y / (1 - y) > 2:
        out.append(("4-7+2-7", F(2, 3), False))
    if y < 1 and y > F(1, 5) and 3 * x + y / (3 * (1 - y)) >= 1:
        out.append(("psi13good", F(1, 3), False))
    return out


def lower_bounds(mode: str, x, y, k_max: int = K_MAX) -> list[CertifiedBound]:
    x, y = parse_rational(x), parse_rational(y)
    if not (0 < x <= 1 and 0 < y <= 1):
        raise ValueError("x and y must lie in (0, 1]")
    out = []
    for tag, v, s in phi_predicates(x, y, k_max):
        out.append(CertifiedBound("lower", v, s, tag, mode))
    if x != y:
        # phi(x, y) = phi(y, x), and phi <= psi <= xi
        for tag, v, s in phi_predicates(y, x, k_max):
            out.append(CertifiedBound("lower", v, s, f"{tag} at (y,x) via permute", mode))
    if mode in ("psi", "xi"):
        for tag, v, s in psi_predicates(x, y, k_max):
            out.append(CertifiedBound("lower", v, s, tag, mode))
    return out


def best_lower(bounds: Iterable[CertifiedBound]) -> CertifiedBound:
    # larger value wins; at equal value a strict bound is stronger
    return max(bounds, key=lambda b: (b.value, b.strict))


def best_upper(bounds: Iterable[CertifiedBound]) -> CertifiedBound:
    return min(bounds, key=lambda b: (b.value, not b.strict))


# --------------------------------------------------------------------------- upper bounds


def cyclic_best_k(x: Fraction, y: Fraction, k_limit: int) -> tuple[int, Fraction]:
    """k <= k_limit minimising the cyclic value min(1, (ceil(kx)+ceil(ky)-1)/k)."""
    best_k, best = 1, F(1)
    for k in range(1, k_limit + 1):
        v = F(_ceil_div(k * x.numerator, x.denominator) + _ceil_div(k * y.numerator, y.denominator) - 1, k)
        if v < best:
            best_k, best = k, v
    return best_k, best


def _cyclic_limit(x: Fraction, y: Fraction, effort: int) -> int:
    return max(1, min(effort, 3 * math.lcm(x.denominator, y.denominator)))


@lru_cache(maxsize=None)
def certificate_pool() -> tuple[WitnessCertificate, ...]:
    """Fixed certificates from the figures; each stays valid at every dominated point."""
    pool = [
        cons.figure1_graph().certificate,
        cons.figure1_graph().certificate.reversed(),
        cons.figure1_graph(exactify=True).certificate,
        cons.figure2_graph().certificate,
        triangular_to_witness(cons.figure5_triangular_witness()[0]),
    ]
    for mode in ("phi", "psi"):
        pool.append(cons.regular_extension(cons.figure7_regular_graph(), F(2, 5), mode).certificate)
        pool.append(cons.regular_extension(figure1_top_regular(), F(13, 27), mode).certificate)
    pool.append(cons.regular_extension(cons.figure7_regular_graph(), F(2, 5), "psi").certificate.reversed())
    return tuple(pool)


def figure1_top_regular():
    from .graph_core import BipartiteWeightedGraph
    g = cons.figure1_topology()
    left = [(a, g.weight[a]) for a in g.ids("A")]
    right = [(b, g.weight[b]) for b in g.ids("B")]
    edges = [(u, v) for u, v in g.edges if g.part_of[u] == "A"]
    return BipartiteWeightedGraph.from_lists(left, right, edges)


def _retarget(cert: WitnessCertificate, x: Fraction, y: Fraction) -> WitnessCertificate | None:
    """The same graph as a certificate at a dominated point, if it validates there."""
    if x > cert.x or y > cert.y:
        return None
    value = witness_value(cert.graph)
    out = cert.replace(x=x, y=y, claimed_bound=value, strict=False,
                       provenance=f"{cert.provenance} at ({fmt(cert.x)},{fmt(cert.y)})")
    return out if verify_certificate(out).satisfied else None


def _safe(fn, *args):
    try:
        res = fn(*args)
    except (InapplicableError, cons.ConstructionInfeasible, cons.ParameterError):
        return None
    return res if res.trusted else None


def construction_results(mode: str, x: Fraction, y: Fraction, effort: int = K_MAX):
    """Every parametrised construction applicable at exactly (x, y), as trusted ConstructionResults."""
    usable = USABLE_CERTS[mode]
    out = []

    def add(res):
        if res is not None and res.certificate.mode in usable:
            out.append(res)

    if "xi" in usable:
        k, _ = cyclic_best_k(x, y, _cyclic_limit(x, y, effort))
        add(_safe(cons.cyclic_shift, k, x, y))
    if "psi" in usable:
        k = 1
        while (k + 1) * max(x, y) < 1 and k <= effort:
            k += 1
        for kk in range(k, 0, -1):
            r = _safe(cons.psi12curve_witness, kk, x, y)
            if r is not None:
                add(r)
                break
        add(_safe(cons.psi12extracurve_witness, x, y, "forward"))
        if x < F(1, 8):
            add(_safe(cons.psi12extracurve_witness, y, x, "reversed"))
        for v in ("first", "second"):
            add(_safe(cons.psi23extra_witness, x, y, v))
        for b in ("third", "two-fifths"):
            add(_safe(cons.phi23extracurve_witness, x, y, b))
        for b in ("one", "two"):
            add(_safe(cons.phi23reversecurve_witness, x, y, b))
    if mode == "phi":
        kk = 0
        while kk + 1 <= effort and (kk + 1) * max(x, y) < 1 and _phi12_ok(kk + 1, x, y):
            kk += 1
        add(_safe(cons.phi12curve_witness, kk, x, y))
        add(_safe(cons.phi12bettercurve_witness, x, y))
        add(_safe(cons.phi13bettercurve_witness, x, y))
        add(_safe(cons.phi23curve_witness, x, y))
    return out


def _phi12_ok(k, x, y):
    return 1 - k * x > 0 and 1 - k * y > 0 and x / (1 - k * x) + y / (1 - k * y) <= 1


def _bound_from_cert(cert: WitnessCertificate, mode: str, prefix: str = "") -> CertifiedBound:
    v = witness_value(cert.graph)
    return CertifiedBound("upper", v, False, prefix + cert.provenance, mode, cert)


def direct_upper_bounds(mode: str, x: Fraction, y: Fraction, effort: int = K_MAX) -> list[CertifiedBound]:
    """Upper bounds from certificates valid at (x, y) itself (no coordinate swap)."""
    out = []
    for res in construction_results(mode, x, y, effort):
        out.append(_bound_from_cert(res.certificate, mode))
    for cert in certificate_pool():
        if cert.mode in USABLE_CERTS[mode]:
            t = _retarget(cert, x, y)
            if t is not None:
                out.append(_bound_from_cert(t, mode))
    return out


def _symmetrized(b: CertifiedBound, mode: str) -> CertifiedBound | None:
    """Move a bound to the swapped point through the LP symmetry transform, keeping its value."""
    cert = b.certificate.replace(mode="phi", claimed_bound=b.value, strict=False)
    try:
        return _bound_from_cert(symmetrize_witness(cert), mode)
    except (LPError, InapplicableError):
        return None


def upper_bounds(mode: str, x, y, effort: int = K_MAX, materialize_permute: bool = True) -> list[CertifiedBound]:
    """Validated upper bounds at (x, y); in phi mode certificates at (y, x) count too.

    With ``materialize_permute`` the best certificate on each side is carried
    to the other side by the LP symmetry transform and re-validated (this can
    improve on the direct bound).  Whichever side ends up better is also
    cited as a permuted bound, which is valid because phi is symmetric.
    """
    x, y = parse_rational(x), parse_rational(y)
    out = direct_upper_bounds(mode, x, y, effort)
    if mode != "phi" or x == y:
        return out
    swapped = direct_upper_bounds(mode, y, x, effort)
    if materialize_permute:
        here, there = (best_upper(out) if out else None), (best_upper(swapped) if swapped else None)
        if there is not None and (s := _symmetrized(there, mode)) is not None:
            out.append(s)
        if here is not None and (s := _symmetrized(here, mode)) is not None:
            swapped.append(s)
    if swapped:
        best = best_upper(swapped)
        if not out or best.value < best_upper(out).value:
            out.append(CertifiedBound("upper", best.value, False,
                                      f"permute of {best.provenance} at (y,x)", mode, best.certificate))
    return out


def best_interval(mode: str, x, y, effort: int = K_MAX, materialize_permute: bool = True) -> BoundInterval:
    x, y = parse_rational(x), parse_rational(y)
    lows = lower_bounds(mode, x, y, max(K_MAX, effort))
    ups = upper_bounds(mode, x, y, effort, materialize_permute)
    if not ups:
        ups = [CertifiedBound("upper", F(1), False, "trivial (value <= 1)", mode)]
    lo, up = best_lower(lows), best_upper(ups)
    check_order(lo, up, mode, x, y)
    return BoundInterval(mode, x, y, lo, up, tuple(lows), tuple(ups))


def check_order(lo: CertifiedBound, up: CertifiedBound, mode, x, y) -> None:
    if lo.value > up.value or (lo.value == up.value and (lo.strict or up.strict)):
        raise ConsistencyViolation(
            f"{mode}({fmt(x)},{fmt(y)}): lower {lo.describe()} crosses upper {up.describe()}")


# --------------------------------------------------------------------------- triangular triples

FLAGS = ("x*", "y*", "z*")


@dataclass(frozen=True)
class TriangularWitness:
    """Tripartite graph with A-C edges, refuting triangularity of (x, y, z) with the flagged reverse bullets."""

    graph: TripartiteWeightedGraph
    x: Fraction
    y: Fraction
    z: Fraction
    asterisk_flags: frozenset = frozenset()


def triangles(graph: TripartiteWeightedGraph, limit: int = 10) -> list[tuple[str, str, str]]:
    out = []
    adj = graph._adj
    ida, idb, idc = graph.ids("A"), graph.ids("B"), graph.ids("C")
    for j in range(len(idb)):
        cmask = adj[("B", "C")][j]
        for i in _bits(adj[("B", "A")][j]):
            hit = adj[("A", "C")][i] & cmask
            for l in _bits(hit):
                out.append((ida[i], idb[j], idc[l]))
                if len(out) >= limit:
                    return out
    return out


def check_triangular_witness(tw: TriangularWitness) -> ConstraintReport:
    g = tw.graph
    bad_flags = set(tw.asterisk_flags) - set(FLAGS)
    if bad_flags:
        raise ValueError(f"unknown asterisk flags {sorted(bad_flags)}")
    rules = [("A", "B", tw.x, "A->B"), ("B", "C", tw.y, "B->C"), ("C", "A", tw.z, "C->A")]
    if "x*" in tw.asterisk_flags:
        rules.append(("B", "A", tw.x, "B->A"))
    if "y*" in tw.asterisk_flags:
        rules.append(("C", "B", tw.y, "C->B"))
    if "z*" in tw.asterisk_flags:
        rules.append(("A", "C", tw.z, "A->C"))
    margins = []
    for src, dst, target, rule in rules:
        nums = g.nbhd_numerator(src, dst)
        den = g._den[dst]
        margins.extend(Margin(v, rule, target, F(n, den)) for v, n in zip(g.ids(src), nums))
    tri = triangles(g)
    notes = tuple(f"triangle {a}-{b}-{c}" for a, b, c in tri)
    ok = all(m.ok for m in margins) and not tri
    return ConstraintReport("triangular", ok, tuple(margins), None,
                            tuple(v.id for v in g.vertices if v.weight == 0), notes=notes)


def witness_to_triangular(cert: WitnessCertificate) -> TriangularWitness:
    """Join c to every a outside N²_A(c); refutes (x, y, 1 - claim), with x*, y* for psi or xi."""
    if cert.mode not in ("phi", "psi", "xi"):
        raise ValueError("unknown mode")
    g = cert.graph
    extra = []
    for c in g.ids("C"):
        reach = second_neighborhood(g, c)
        extra.extend((a, c) for a in g.ids("A") if a not in reach)
    parts = {p: [(v, g.weight[v]) for v in g.ids(p)] for p in PARTS}
    tg = TripartiteWeightedGraph.from_parts(parts, list(g.edges) + extra, g.weighted)
    flags = frozenset({"x*", "y*"}) if cert.mode in ("psi", "xi") else frozenset()
    return TriangularWitness(tg, cert.x, cert.y, 1 - cert.claimed_bound, flags)


def triangular_to_witness(tw: TriangularWitness) -> WitnessCertificate:
    """Delete the A-C edges: a certificate with claim 1 - z (psi when x*, y* are flagged)."""
    rep = check_triangular_witness(tw)
    if not rep.satisfied:
        raise StructuralError("triangular witness does not verify:\n" + rep.describe())
    mode = "psi" if {"x*", "y*"} <= tw.asterisk_flags else "phi"
    g = tw.graph.without_edges_between("A", "C")
    return WitnessCertificate(g, mode, tw.x, tw.y, 1 - tw.z, False,
                              f"triangular({fmt(tw.x)},{fmt(tw.y)},{fmt(tw.z)})")
