"""Exact rational linear programming and the LP-driven witness transformations.

The solver is a dense two-phase tableau simplex with Bland's rule, run on
gmpy2 ``mpq`` numbers (exact, and much faster than Fraction).  Inputs and
outputs are Fractions.  Problem sizes here are small (at most a few hundred
variables), so exactness is affordable.

On top of it sit the bipartite dichotomy (rebalance a weighting so some
vertex gets weight zero, or produce a dual weighting on the other side),
witness reduction, the phi symmetry transform, single-vertex deletion from A,
and LP feasibility for weights on a fixed topology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .graph_core import (
    PARTS, TripartiteWeightedGraph, WitnessCertificate, check_constraints,
    parse_rational, second_neighborhood, verify_certificate, witness_value,
)


class LPError(RuntimeError):
    """Internal inconsistency: a solver result failed independent re-verification."""


class InapplicableError(ValueError):
    """The preconditions of a transformation are not met."""


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


# --------------------------------------------------------------------------- simplex


@dataclass
class LPResult:
    status: str  # optimal | infeasible | unbounded
    x: list[Fraction] = field(default_factory=list)
    value: Fraction | None = None
    duals: list[Fraction] = field(default_factory=list)
    iterations: int = 0


class LinearProgram:
    """maximize c.x subject to rows (coeffs, sense, rhs) and x >= 0."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: list[tuple[dict[int, object], str, object]] = []
        self.objective: dict[int, object] = {}

    def add(self, coeffs: Mapping[int, object], sense: str, rhs) -> None:
        if sense not in ("<=", ">=", "="):
            raise ValueError(f"bad sense {sense!r}")
        self.rows.append(({j: c for j, c in coeffs.items() if c != 0}, sense, rhs))

    def maximize(self, coeffs: Mapping[int, object]) -> None:
        self.objective = dict(coeffs)

    def solve(self, max_iterations: int | None = None) -> LPResult:
        return _simplex(self.nvars, self.rows, self.objective, max_iterations)


def _pivot(tab: list[list], r: int, c: int) -> None:
    prow = tab[r]
    inv = 1 / prow[c]
    if inv != 1:
        prow[:] = [v * inv for v in prow]
    nz = [j for j, v in enumerate(prow) if v != 0]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f != 0:
            for j in nz:
                row[j] -= f * prow[j]


def _run(tab, basis, obj_row, allowed, limit, counter) -> str:
    m = len(basis)
    obj = tab[obj_row]
    while True:
        enter = -1
        for j in allowed:
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        best_r, best_ratio = -1, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[best_r]):
                    best_r, best_ratio = i, ratio
        if best_r < 0:
            return "unbounded"
        _pivot(tab, best_r, enter)
        basis[best_r] = enter
        counter[0] += 1
        if limit is not None and counter[0] > limit:
            raise LPError(f"simplex exceeded {limit} iterations")


def _simplex(nvars, rows, objective, max_iterations) -> LPResult:
    m = len(rows)
    signs = []
    norm_rows = []
    for coeffs, sense, rhs in rows:
        rhs = mpq(rhs)
        sign = 1
        if rhs < 0:
            sign, rhs = -1, -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        signs.append(sign)
        norm_rows.append(({j: mpq(c) * sign for j, c in coeffs.items()}, sense, rhs))
    n_surplus = sum(1 for _, s, _ in norm_rows if s == ">=")
    # columns: originals | surplus | identity column per row (slack or artificial) | rhs
    surplus_col = {}
    col = nvars
    for i, (_, s, _) in enumerate(norm_rows):
        if s == ">=":
            surplus_col[i] = col
            col += 1
    ident0 = nvars + n_surplus
    width = ident0 + m + 1
    zero = mpq(0)
    tab = []
    basis = []
    artificial = set()
    for i, (coeffs, s, rhs) in enumerate(norm_rows):
        row = [zero] * width
        for j, c in coeffs.items():
            row[j] = c
        if s == ">=":
            row[surplus_col[i]] = mpq(-1)
        row[ident0 + i] = mpq(1)
        row[-1] = rhs
        tab.append(row)
        basis.append(ident0 + i)
        if s != "<=":
            artificial.add(ident0 + i)
    counter = [0]
    limit = max_iterations
    if limit is None:
        limit = comb(width - 1, m) if width < 200 else None
    # phase 1: minimise the sum of artificials, i.e. maximise its negation
    if artificial:
        obj = [zero] * width
        for i in range(m):
            if basis[i] in artificial:
                for j in range(width):
                    obj[j] -= tab[i][j]
        for j in artificial:
            obj[j] = zero
        tab.append(obj)
        allowed = [j for j in range(width - 1)]
        _run(tab, basis, m, allowed, limit, counter)
        if tab[m][-1] != 0:
            return LPResult("infeasible", iterations=counter[0])
        # drive zero-level artificials out of the basis where possible
        for i in range(m):
            if basis[i] in artificial:
                for j in range(ident0):
                    if tab[i][j] != 0:
                        _pivot(tab, i, j)
                        basis[i] = j
                        break
        tab.pop()
    obj = [zero] * width
    for j, c in objective.items():
        obj[j] = -mpq(c)
    for i in range(m):
        cb = -obj[basis[i]]
        if cb != 0:
            row = tab[i]
            for j in range(width):
                obj[j] += cb * row[j]
    tab.append(obj)
    allowed = [j for j in range(width - 1) if j not in artificial]
    status = _run(tab, basis, m, allowed, limit, counter)
    if status == "unbounded":
        return LPResult("unbounded", iterations=counter[0])
    xs = [zero] * (width - 1)
    for i in range(m):
        xs[basis[i]] = tab[i][-1]
    duals = [_frac(tab[m][ident0 + i] * signs[i]) for i in range(m)]
    return LPResult(
        "optimal",
        [_frac(v) for v in xs[:nvars]],
        _frac(tab[m][-1]),
        duals,
        counter[0],
    )


# --------------------------------------------------------------------------- dichotomy


@dataclass(frozen=True)
class BipartiteInstance:
    """Bipartite graph between ``side_a`` and ``side_b`` with weights ``w`` on side_b."""

    side_a: tuple[str, ...]
    side_b: tuple[str, ...]
    adjacency: frozenset[tuple[str, str]]  # pairs (a, b)
    w: Mapping[str, Fraction]

    def neighbors_of_a(self, a: str) -> list[str]:
        return [b for b in self.side_b if (a, b) in self.adjacency]

    def neighbors_of_b(self, b: str) -> list[str]:
        return [a for a in self.side_a if (a, b) in self.adjacency]

    def a_to_b(self, weights: Mapping[str, Fraction]) -> Fraction:
        """min over a of weights(N(a)); 0 when side_a is empty."""
        if not self.side_a:
            return Fraction(0)
        return min(sum((weights[b] for b in self.neighbors_of_a(a)), Fraction(0)) for a in self.side_a)

    def b_to_a(self, f: Mapping[str, Fraction]) -> Fraction:
        if not self.side_b:
            return Fraction(0)
        return min(sum((f[a] for a in self.neighbors_of_b(b)), Fraction(0)) for b in self.side_b)


@dataclass(frozen=True)
class Dichotomy:
    branch: str  # rebalanced | dual
    rebalanced: dict[str, Fraction] | None = None
    dual: dict[str, Fraction] | None = None
    threshold: Fraction = Fraction(0)
    iterations: int = 0


def verify_dichotomy(inst: BipartiteInstance, d: Dichotomy) -> bool:
    mu = inst.a_to_b(inst.w)
    if d.branch == "rebalanced":
        w2 = d.rebalanced
        return (
            w2 is not None
            and all(v >= 0 for v in w2.values())
            and sum(w2.values()) == 1
            and inst.a_to_b(w2) >= mu
            and any(v == 0 for v in w2.values())
        )
    if d.branch == "dual":
        f = d.dual
        if not inst.side_a:
            return True
        return (
            f is not None
            and all(v >= 0 for v in f.values())
            and sum(f.values()) == 1
            and inst.b_to_a(f) >= mu
        )
    return False


def lpbip_dichotomy(inst: BipartiteInstance) -> Dichotomy:
    """Either rebalance the B-weights with some vertex at zero, or return a dual A-weighting.

    Solves max 1.p subject to p(N(b)) <= 1 for b in B; the optimal duals q
    minimise 1.q subject to Mq >= 1.  With t the optimum, w' = q/t; if some
    q_b = 0 this is the rebalanced branch, otherwise f = p/t is the dual one.
    """
    if sum(inst.w.values(), Fraction(0)) != 1:
        raise ValueError("weights on side_b must sum to 1")
    mu = inst.a_to_b(inst.w)
    if not inst.side_a:
        return Dichotomy("dual", dual={}, threshold=mu)
    nbrs = {a: inst.neighbors_of_a(a) for a in inst.side_a}
    if any(not nb for nb in nbrs.values()):
        f = {a: Fraction(1, len(inst.side_a)) for a in inst.side_a}
        return Dichotomy("dual", dual=f, threshold=mu)
    a_index = {a: i for i, a in enumerate(inst.side_a)}
    lp = LinearProgram(len(inst.side_a))
    for b in inst.side_b:
        lp.add({a_index[a]: 1 for a in inst.neighbors_of_b(b)}, "<=", 1)
    lp.maximize({i: 1 for i in range(len(inst.side_a))})
    res = lp.solve()
    if res.status != "optimal":
        raise LPError(f"dichotomy LP ended {res.status}")
    t = res.value
    q = dict(zip(inst.side_b, res.duals))
    if sum(q.values()) != t or any(v < 0 for v in q.values()):
        raise LPError("dual extraction failed strong duality check")
    if any(v == 0 for v in q.values()):
        d = Dichotomy("rebalanced", rebalanced={b: v / t for b, v in q.items()}, threshold=mu,
                      iterations=res.iterations)
    else:
        d = Dichotomy("dual", dual={a: res.x[a_index[a]] / t for a in inst.side_a}, threshold=mu,
                      iterations=res.iterations)
    if not verify_dichotomy(inst, d):
        raise LPError("dichotomy branch failed exact re-verification")
    return d


# --------------------------------------------------------------------------- instances of a witness


def _instance(graph: TripartiteWeightedGraph, left: str, right: str) -> BipartiteInstance:
    part = graph.part_of
    adj = frozenset(
        (u, v) if part[u] == left else (v, u)
        for u, v in graph.edges
        if {part[u], part[v]} == {left, right}
    )
    return BipartiteInstance(graph.ids(left), graph.ids(right), adj, {v: graph.weight[v] for v in graph.ids(right)})


def complement_instance(graph: TripartiteWeightedGraph) -> BipartiteInstance:
    """Sides (C, A): c ~ a iff a is not in N²_A(c); weights are the A-weights."""
    adj = set()
    for c in graph.ids("C"):
        reach = second_neighborhood(graph, c)
        for a in graph.ids("A"):
            if a not in reach:
                adj.add((c, a))
    return BipartiteInstance(graph.ids("C"), graph.ids("A"), frozenset(adj), {a: graph.weight[a] for a in graph.ids("A")})


def _valid(cert: WitnessCertificate, graph: TripartiteWeightedGraph) -> bool:
    return verify_certificate(cert.replace(graph=graph)).satisfied


def _reduction_steps(graph):
    yield "AB", _instance(graph, "A", "B")
    yield "BC", _instance(graph, "B", "C")
    yield "H", complement_instance(graph)


def reduce_witness(cert: WitnessCertificate, max_rounds: int = 10_000) -> WitnessCertificate:
    """Delete vertices freed up by rebalancing until every dichotomy returns its dual branch.

    In phi mode every rebalance preserves validity.  In psi and xi modes the
    rebalanced weights also feed reverse constraints, so a step is kept only
    when the certificate still verifies afterwards.
    """
    if not verify_certificate(cert).satisfied:
        raise InapplicableError("reduce_witness needs a valid certificate")
    graph = cert.graph
    zero = {v.id: Fraction(0) for v in graph.vertices if v.weight == 0}
    if zero and cert.mode == "phi":
        graph = graph.with_weights({}, drop_zero=True)
    for _ in range(max_rounds):
        changed = False
        for _name, inst in _reduction_steps(graph):
            d = lpbip_dichotomy(inst)
            if d.branch != "rebalanced":
                continue
            candidate = graph.with_weights(d.rebalanced, drop_zero=True)
            if cert.mode == "phi" or _valid(cert, candidate):
                graph = candidate
                changed = True
                break
        if not changed:
            break
    out = cert.replace(graph=graph, provenance=f"reduced({cert.provenance})")
    rep = verify_certificate(out)
    if not rep.satisfied or rep.value > witness_value(cert.graph):
        raise LPError("reduction produced an invalid certificate")
    return out


def symmetrize_witness(cert: WitnessCertificate, reduce_first: bool = True) -> WitnessCertificate:
    """From a phi certificate at (x, y), build one at (y, x) with the same claim.

    New weights come from the three dual branches: f on A (over the A-B
    instance), g on B (over the B-C instance) and h on C (over the complement
    instance); the graph is then read as (C, B, A).
    """
    if cert.mode != "phi":
        raise InapplicableError("symmetrize_witness is defined for phi certificates only")
    if reduce_first:
        cert = reduce_witness(cert)
    graph = cert.graph
    weights: dict[str, Fraction] = {}
    for name, inst in _reduction_steps(graph):
        d = lpbip_dichotomy(inst)
        if d.branch != "dual":
            raise LPError(f"{name} dichotomy is not dual; reduce the witness first")
        weights.update(d.dual)
    new = cert.replace(graph=graph.with_weights(weights)).reversed()
    new = new.replace(provenance=f"symmetrized({cert.provenance})")
    if not verify_certificate(new).satisfied:
        raise LPError("symmetrized certificate failed re-validation")
    return new


def nodom_reduce(cert: WitnessCertificate, X: Iterable[str]) -> WitnessCertificate:
    """Delete one A-vertex when a small set X ⊆ A has second neighbourhoods covering C."""
    X = list(dict.fromkeys(X))
    g = cert.graph
    z = cert.claimed_bound
    if not verify_certificate(cert).satisfied:
        raise InapplicableError("certificate is not valid")
    if any(v not in g.ids("A") for v in X):
        raise InapplicableError("X must be a subset of A")
    if z <= 0 or len(X) >= 1 / z:
        raise InapplicableError(f"|X|={len(X)} is not below 1/claim={1 / z if z else 'inf'}")
    covered = set()
    for c in g.ids("C"):
        if any(a in second_neighborhood(g, c) for a in X):
            covered.add(c)
    if covered != set(g.ids("C")):
        raise InapplicableError("second neighbourhoods of X do not cover C")
    d = lpbip_dichotomy(complement_instance(g))
    if d.branch != "rebalanced":
        raise LPError("complement instance returned a dual branch, contradicting the covering argument")
    new = cert.replace(graph=g.with_weights(d.rebalanced, drop_zero=True), provenance=f"nodom({cert.provenance})")
    if not verify_certificate(new).satisfied:
        raise LPError("nodom output failed re-validation")
    return new


# --------------------------------------------------------------------------- feasibility on a topology


def _constraint_rows(graph, mode, var, x, y, value_bound, slack_var):
    """Yield LP rows for the mode constraints and the value bound (classes give ``var``)."""
    part = graph.part_of
    ids = {p: graph.ids(p) for p in PARTS}
    nb = {v: {} for v in graph.weight}
    for u, v in graph.edges:
        nb[u].setdefault(part[v], []).append(v)
        nb[v].setdefault(part[u], []).append(u)

    def lin(vertices):
        out: dict[int, int] = {}
        for v in vertices:
            out[var[v]] = out.get(var[v], 0) + 1
        return out

    rows = []
    for p in PARTS:
        rows.append((lin(ids[p]), "=", 1))
    pairs = [("A", "B", x), ("B", "C", y)]
    if mode in ("psi", "xi"):
        pairs += [("B", "A", x), ("C", "B", y)]
    for src, dst, lo in pairs:
        for v in ids[src]:
            coeffs = lin(nb[v].get(dst, []))
            if mode == "xi":
                k = var["__xp"] if dst in ("A", "B") and src in ("A", "B") else var["__yp"]
                coeffs[k] = coeffs.get(k, 0) - 1
                rows.append((coeffs, "=", 0))
            else:
                rows.append((coeffs, ">=", lo))
    if mode == "xi":
        rows.append(({var["__xp"]: 1}, ">=", x))
        rows.append(({var["__yp"]: 1}, ">=", y))
    if value_bound is not None:
        for c in ids["C"]:
            coeffs = lin(second_neighborhood(graph, c))
            if slack_var is not None:
                coeffs[slack_var] = coeffs.get(slack_var, 0) + 1
            rows.append((coeffs, "<=", value_bound))
    seen = set()
    for coeffs, sense, rhs in rows:
        key = (tuple(sorted(coeffs.items())), sense, rhs)
        if key not in seen:
            seen.add(key)
            yield coeffs, sense, rhs


def feasible_weights(
    topology: TripartiteWeightedGraph,
    mode: str,
    x,
    y,
    bound,
    strict: bool = False,
    classes: Mapping[str, str] | None = None,
) -> dict[str, Fraction] | None:
    """Weights on a fixed topology meeting the mode constraints with witness value <= bound.

    With ``strict`` the LP maximises a slack t in value <= bound - t and
    succeeds only when t > 0.  ``classes`` maps vertex ids to class labels
    whose members are forced to share one weight (orbits of a symmetric
    construction); this keeps the LP tiny.  Returns None when infeasible.
    """
    x, y, bound = parse_rational(x), parse_rational(y), parse_rational(bound)
    labels = {v: (classes or {}).get(v, v) for v in topology.weight}
    for v, lab in labels.items():
        if any(labels[u] == lab and topology.part_of[u] != topology.part_of[v] for u in labels):
            raise ValueError(f"class {lab!r} spans several parts")
    order = list(dict.fromkeys(labels[v.id] for v in topology.vertices))
    index = {lab: i for i, lab in enumerate(order)}
    var = {v: index[labels[v]] for v in topology.weight}
    nvars = len(order)
    if mode == "xi":
        var["__xp"], var["__yp"] = nvars, nvars + 1
        nvars += 2
    slack = None
    if strict:
        slack = nvars
        nvars += 1
    lp = LinearProgram(nvars)
    for coeffs, sense, rhs in _constraint_rows(topology, mode, var, x, y, bound, slack):
        lp.add(coeffs, sense, rhs)
    if slack is not None:
        lp.add({slack: 1}, "<=", 1)
        lp.maximize({slack: 1})
    res = lp.solve()
    if res.status != "optimal":
        return None
    if slack is not None and res.x[slack] <= 0:
        return None
    weights = {v: res.x[var[v]] for v in topology.weight}
    cert = WitnessCertificate(topology.with_weights(weights), mode, x, y, bound, strict, "feasible_weights")
    if not verify_certificate(cert).satisfied:
        raise LPError("feasible_weights output failed re-validation")
    return weights
