"""Exact data model for weighted tripartite graphs.

A graph has three stable parts A, B, C with non-negative rational vertex
weights summing to 1 in each part.  The unweighted view of a graph is the
special case where every vertex of a part weighs 1/|part|.  Everything here
is computed with :class:`fractions.Fraction` or plain integers, never floats.

Internally each part keeps integer numerators over a common denominator and
neighbourhoods are stored as integer bitmasks, which keeps checks on graphs
with a few hundred vertices and ~10^4 edges fast.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Mapping, Sequence

PARTS = ("A", "B", "C")
MODES = ("phi", "psi", "xi")
CLASS_OF_MODE = {"phi": "constrained", "psi": "biconstrained", "xi": "exact"}

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class StructuralError(ValueError):
    """The graph violates a structural invariant (empty part, bad edge, bad weights)."""

    def __init__(self, message: str, element: object = None):
        super().__init__(message)
        self.element = element


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ValueError):
    """A documented precondition does not hold."""


def parse_rational(value: object) -> Fraction:
    """Parse an exact rational from ``p/q``, an integer string, int or Fraction.

    Decimal strings and floats are refused so nothing is silently rounded.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not an exact rational (expected p/q): {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    if type(value).__name__ == "mpq":
        return Fraction(int(value.numerator), int(value.denominator))
    raise ValueError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Vertex:
    id: str
    part: str
    weight: Fraction


def _edge_key(part_of: Mapping[str, str], u: str, v: str) -> tuple[str, str]:
    if PARTS.index(part_of[u]) <= PARTS.index(part_of[v]):
        return (u, v)
    return (v, u)


@dataclass(frozen=True, eq=False)
class TripartiteWeightedGraph:
    """Immutable weighted tripartite graph.

    ``edges`` holds ordered pairs (u, v) with part(u) before part(v) in A, B, C
    order.  A-C edges are representable (triangular witnesses need them) but
    the constraint checkers reject them.
    """

    vertices: tuple[Vertex, ...]
    edges: frozenset[tuple[str, str]]
    weighted: bool = True

    def __post_init__(self) -> None:
        seen: dict[str, str] = {}
        totals = {p: Fraction(0) for p in PARTS}
        for v in self.vertices:
            if v.part not in PARTS:
                raise StructuralError(f"unknown part {v.part!r} for vertex {v.id!r}", v.id)
            if v.id in seen:
                raise StructuralError(f"duplicate vertex id {v.id!r}", v.id)
            if not isinstance(v.weight, Fraction):
                raise StructuralError(f"weight of {v.id!r} is not a Fraction", v.id)
            if v.weight < 0:
                raise StructuralError(f"negative weight on {v.id!r}", v.id)
            seen[v.id] = v.part
            totals[v.part] += v.weight
        for p in PARTS:
            if not any(v.part == p for v in self.vertices):
                raise StructuralError(f"part {p} is empty", p)
            if totals[p] != 1:
                raise StructuralError(f"weights of part {p} sum to {totals[p]}, not 1", p)
        for u, v in self.edges:
            if u not in seen or v not in seen:
                raise StructuralError(f"edge {u}-{v} references an unknown vertex", (u, v))
            if u == v:
                raise StructuralError(f"self-loop on {u!r}", (u, v))
            if seen[u] == seen[v]:
                raise StructuralError(f"edge {u}-{v} lies inside part {seen[u]}", (u, v))
            if PARTS.index(seen[u]) > PARTS.index(seen[v]):
                raise StructuralError(f"edge {u}-{v} is not normalised", (u, v))

    # ------------------------------------------------------------------ builders

    @classmethod
    def from_parts(
        cls,
        parts: Mapping[str, Sequence[tuple[str, object]]],
        edges: Iterable[tuple[str, str]],
        weighted: bool = True,
    ) -> "TripartiteWeightedGraph":
        verts = []
        for p in PARTS:
            for vid, w in parts.get(p, ()):
                verts.append(Vertex(str(vid), p, parse_rational(w)))
        part_of = {v.id: v.part for v in verts}
        keys: set[tuple[str, str]] = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u not in part_of or v not in part_of:
                raise StructuralError(f"edge {u}-{v} references an unknown vertex", (u, v))
            key = _edge_key(part_of, u, v)
            if key in keys:
                raise StructuralError(f"duplicate edge {u}-{v}", (u, v))
            keys.add(key)
        return cls(tuple(verts), frozenset(keys), weighted)

    @classmethod
    def uniform(
        cls,
        a_ids: Sequence[str],
        b_ids: Sequence[str],
        c_ids: Sequence[str],
        edges: Iterable[tuple[str, str]],
    ) -> "TripartiteWeightedGraph":
        parts = {
            p: [(i, Fraction(1, len(ids))) for i in ids]
            for p, ids in zip(PARTS, (a_ids, b_ids, c_ids))
            if ids
        }
        return cls.from_parts(parts, edges, weighted=False)

    # ------------------------------------------------------------------ accessors

    @cached_property
    def part_of(self) -> dict[str, str]:
        return {v.id: v.part for v in self.vertices}

    @cached_property
    def weight(self) -> dict[str, Fraction]:
        return {v.id: v.weight for v in self.vertices}

    @cached_property
    def _ids(self) -> dict[str, tuple[str, ...]]:
        return {p: tuple(v.id for v in self.vertices if v.part == p) for p in PARTS}

    def ids(self, part: str) -> tuple[str, ...]:
        return self._ids[part]

    @cached_property
    def _index(self) -> dict[str, int]:
        out = {}
        for p in PARTS:
            for i, vid in enumerate(self._ids[p]):
                out[vid] = i
        return out

    @cached_property
    def _den(self) -> dict[str, int]:
        return {p: lcm(*(self.weight[v].denominator for v in self._ids[p])) for p in PARTS}

    @cached_property
    def _num(self) -> dict[str, list[int]]:
        out = {}
        for p in PARTS:
            d = self._den[p]
            out[p] = [self.weight[v].numerator * (d // self.weight[v].denominator) for v in self._ids[p]]
        return out

    @cached_property
    def _adj(self) -> dict[tuple[str, str], list[int]]:
        """Bitmask neighbourhoods: ``_adj[(P, Q)][i]`` is N(P_i) within part Q."""
        adj = {(p, q): [0] * len(self._ids[p]) for p in PARTS for q in PARTS if p != q}
        idx, part = self._index, self.part_of
        for u, v in self.edges:
            pu, pv = part[u], part[v]
            adj[(pu, pv)][idx[u]] |= 1 << idx[v]
            adj[(pv, pu)][idx[v]] |= 1 << idx[u]
        return adj

    @cached_property
    def has_ac_edges(self) -> bool:
        part = self.part_of
        return any(part[u] == "A" and part[v] == "C" for u, v in self.edges)

    def neighbors(self, v: str, part: str | None = None) -> tuple[str, ...]:
        p = self.part_of[v]
        targets = [q for q in PARTS if q != p] if part is None else [part]
        out: list[str] = []
        for q in targets:
            if q == p:
                continue
            ids = self._ids[q]
            out.extend(ids[i] for i in _bits(self._adj[(p, q)][self._index[v]]))
        return tuple(out)

    def mask_weight(self, part: str, mask: int) -> Fraction:
        nums = self._num[part]
        return Fraction(sum(nums[i] for i in _bits(mask)), self._den[part])

    def nbhd_numerator(self, src: str, dst: str) -> list[int]:
        """Integer numerators (over ``_den[dst]``) of w(N(v) ∩ dst) for v in src."""
        nums = self._num[dst]
        cache: dict[int, int] = {}
        out = []
        for m in self._adj[(src, dst)]:
            s = cache.get(m)
            if s is None:
                s = sum(nums[i] for i in _bits(m))
                cache[m] = s
            out.append(s)
        return out

    def second_masks(self) -> list[int]:
        """For every C-vertex, the bitmask of N²_A (through B, ignoring A-C edges)."""
        amask = self._adj[("B", "A")]
        out = []
        for m in self._adj[("C", "B")]:
            acc = 0
            for j in _bits(m):
                acc |= amask[j]
            out.append(acc)
        return out

    @property
    def order(self) -> int:
        return len(self.vertices)

    def summary(self) -> str:
        sizes = "/".join(str(len(self._ids[p])) for p in PARTS)
        return f"{sizes} vertices, {len(self.edges)} edges"

    # ------------------------------------------------------------------ transforms

    def reversed(self) -> "TripartiteWeightedGraph":
        """The same graph read with parts (C, B, A)."""
        swap = {"A": "C", "B": "B", "C": "A"}
        parts = {swap[p]: [(v, self.weight[v]) for v in self._ids[p]] for p in PARTS}
        return TripartiteWeightedGraph.from_parts(parts, self.edges, self.weighted)

    def with_weights(self, weights: Mapping[str, Fraction], drop_zero: bool = False) -> "TripartiteWeightedGraph":
        """Replace weights (missing ids keep theirs); optionally delete zero-weight vertices."""
        new = {v: Fraction(weights.get(v, self.weight[v])) for v in self.weight}
        keep = {v for v, w in new.items() if w != 0 or not drop_zero}
        parts = {p: [(v, new[v]) for v in self._ids[p] if v in keep] for p in PARTS}
        edges = [(u, v) for u, v in self.edges if u in keep and v in keep]
        return TripartiteWeightedGraph.from_parts(parts, edges, weighted=True)

    def without_edges_between(self, p: str, q: str) -> "TripartiteWeightedGraph":
        part = self.part_of
        edges = [(u, v) for u, v in self.edges if {part[u], part[v]} != {p, q}]
        parts = {r: [(v, self.weight[v]) for v in self._ids[r]] for r in PARTS}
        return TripartiteWeightedGraph.from_parts(parts, edges, self.weighted)


@dataclass(frozen=True)
class Margin:
    vertex: str
    rule: str
    required: Fraction
    actual: Fraction

    @property
    def ok(self) -> bool:
        return self.actual >= self.required


@dataclass(frozen=True)
class ConstraintReport:
    class_checked: str
    satisfied: bool
    margins: tuple[Margin, ...]
    exact_params: tuple[Fraction, Fraction] | None = None
    zero_weight: tuple[str, ...] = ()
    value: Fraction | None = None
    claim_holds: bool | None = None
    notes: tuple[str, ...] = ()

    @property
    def violations(self) -> tuple[Margin, ...]:
        if self.class_checked == "exact":
            return tuple(m for m in self.margins if m.actual != m.required)
        return tuple(m for m in self.margins if not m.ok)

    def describe(self) -> str:
        lines = [f"class: {self.class_checked}", f"satisfied: {self.satisfied}"]
        if self.value is not None:
            lines.append(f"witness value: {format_rational(self.value)}")
        if self.claim_holds is not None:
            lines.append(f"claim holds: {self.claim_holds}")
        if self.exact_params:
            xp, yp = self.exact_params
            lines.append(f"exact params: x'={format_rational(xp)} y'={format_rational(yp)}")
        if self.zero_weight:
            lines.append("zero-weight vertices: " + " ".join(self.zero_weight))
        bad = self.violations
        for m in bad[:20]:
            lines.append(
                f"  violated {m.rule} at {m.vertex}: required {format_rational(m.required)}, "
                f"actual {format_rational(m.actual)}"
            )
        if len(bad) > 20:
            lines.append(f"  ... {len(bad) - 20} more violations")
        lines.extend(self.notes)
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class WitnessCertificate:
    """An upper-bound proof object: mode(x, y) <= claimed_bound (or < when strict)."""

    graph: TripartiteWeightedGraph
    mode: str
    x: Fraction
    y: Fraction
    claimed_bound: Fraction
    strict: bool = False
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    def reversed(self, mode: str | None = None) -> "WitnessCertificate":
        """Read the graph as (C, B, A): a certificate at (y, x)."""
        return WitnessCertificate(
            self.graph.reversed(), mode or self.mode, self.y, self.x,
            self.claimed_bound, self.strict, f"reversed({self.provenance})",
        )

    def replace(self, **kw) -> "WitnessCertificate":
        data = dict(graph=self.graph, mode=self.mode, x=self.x, y=self.y,
                    claimed_bound=self.claimed_bound, strict=self.strict, provenance=self.provenance)
        data.update(kw)
        return WitnessCertificate(**data)


def _check_params(x: Fraction, y: Fraction) -> None:
    for name, v in (("x", x), ("y", y)):
        if not 0 < v <= 1:
            raise DomainError(f"{name}={v} is outside (0, 1]")


def _margins(graph, src, dst, target, rule, nums=None):
    den = graph._den[dst]
    nums = graph.nbhd_numerator(src, dst) if nums is None else nums
    ids = graph.ids(src)
    return [Margin(ids[i], rule, target, Fraction(n, den)) for i, n in enumerate(nums)]


def check_constraints(graph: TripartiteWeightedGraph, mode: str, x, y) -> ConstraintReport:
    """Check the weighted (x, y) constraint class for ``mode``.

    phi: every A-vertex sees weight >= x in B and every B-vertex >= y in C.
    psi: additionally every B-vertex sees >= x in A and every C-vertex >= y in B.
    xi: the four neighbourhood weights are constant, x' on A<->B and y' on
    B<->C, with x' >= x and y' >= y.
    """
    x, y = parse_rational(x), parse_rational(y)
    _check_params(x, y)
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    if graph.has_ac_edges:
        part = graph.part_of
        bad = next((u, v) for u, v in sorted(graph.edges) if part[u] == "A" and part[v] == "C")
        raise StructuralError(f"edge {bad[0]}-{bad[1]} joins A and C", bad)
    zero = tuple(v.id for v in graph.vertices if v.weight == 0)
    cls = CLASS_OF_MODE[mode]
    if mode in ("phi", "psi"):
        margins = _margins(graph, "A", "B", x, "A->B") + _margins(graph, "B", "C", y, "B->C")
        if mode == "psi":
            margins += _margins(graph, "B", "A", x, "B->A") + _margins(graph, "C", "B", y, "C->B")
        ok = all(m.ok for m in margins)
        return ConstraintReport(cls, ok, tuple(margins), None, zero)
    # exact
    ab = graph.nbhd_numerator("A", "B")
    ba = graph.nbhd_numerator("B", "A")
    bc = graph.nbhd_numerator("B", "C")
    cb = graph.nbhd_numerator("C", "B")
    xp = Fraction(ab[0], graph._den["B"])
    yp = Fraction(bc[0], graph._den["C"])
    tx = xp if xp >= x else x
    ty = yp if yp >= y else y
    margins = (
        _margins(graph, "A", "B", tx, "A->B", ab)
        + _margins(graph, "B", "A", tx, "B->A", ba)
        + _margins(graph, "B", "C", ty, "B->C", bc)
        + _margins(graph, "C", "B", ty, "C->B", cb)
    )
    ok = all(m.actual == m.required for m in margins)
    return ConstraintReport(cls, ok, tuple(margins), (xp, yp) if ok else None, zero)


def second_neighborhood_weight(graph: TripartiteWeightedGraph, v: str) -> Fraction:
    """w(N²_A(v)) for v in C: weight of A-vertices sharing a B-neighbour with v."""
    if graph.part_of.get(v) != "C":
        raise DomainError(f"{v!r} is not a vertex of C")
    amask = graph._adj[("B", "A")]
    acc = 0
    for j in _bits(graph._adj[("C", "B")][graph._index[v]]):
        acc |= amask[j]
    return graph.mask_weight("A", acc)


def second_neighborhood(graph: TripartiteWeightedGraph, v: str) -> frozenset[str]:
    if graph.part_of.get(v) != "C":
        raise DomainError(f"{v!r} is not a vertex of C")
    amask = graph._adj[("B", "A")]
    acc = 0
    for j in _bits(graph._adj[("C", "B")][graph._index[v]]):
        acc |= amask[j]
    ids = graph.ids("A")
    return frozenset(ids[i] for i in _bits(acc))


def witness_value(graph: TripartiteWeightedGraph) -> Fraction:
    """max over v in C of w(N²_A(v))."""
    nums = graph._num["A"]
    best = 0
    seen: set[int] = set()
    for m in graph.second_masks():
        if m in seen:
            continue
        seen.add(m)
        s = sum(nums[i] for i in _bits(m))
        if s > best:
            best = s
    return Fraction(best, graph._den["A"])


def verify_certificate(cert: WitnessCertificate) -> ConstraintReport:
    """Constraints for the certificate's mode plus the claimed bound on the witness value."""
    report = check_constraints(cert.graph, cert.mode, cert.x, cert.y)
    value = witness_value(cert.graph)
    holds = value < cert.claimed_bound if cert.strict else value <= cert.claimed_bound
    notes = ()
    if not holds:
        rel = "<" if cert.strict else "<="
        notes = (f"claim fails: witness value {format_rational(value)} is not {rel} "
                 f"{format_rational(cert.claimed_bound)}",)
    return ConstraintReport(
        report.class_checked, report.satisfied and holds, report.margins,
        report.exact_params, report.zero_weight, value, holds, notes,
    )


def minimal_blowup_factor(graph: TripartiteWeightedGraph) -> int:
    return lcm(*(graph._den[p] for p in PARTS))


def blow_up(graph: TripartiteWeightedGraph, N: int) -> TripartiteWeightedGraph:
    """Replace every vertex v by N·w(v) clones; clone sets of adjacent vertices are fully joined."""
    if N < 1:
        raise PreconditionError("N must be a positive integer")
    for v in graph.vertices:
        if (v.weight * N).denominator != 1:
            raise PreconditionError(
                f"N={N} does not make N*w({v.id}) integral; the least valid N is "
                f"{minimal_blowup_factor(graph)}"
            )
    clones: dict[str, list[str]] = {}
    taken = set(graph.weight)
    for v in graph.vertices:
        names = [f"{v.id}.{i}" for i in range(int(v.weight * N))]
        clash = taken.intersection(names)
        if clash:
            raise StructuralError(f"clone id collides with an existing id: {sorted(clash)[0]}")
        clones[v.id] = names
    parts = {p: [c for v in graph.ids(p) for c in clones[v]] for p in PARTS}
    edges = [(cu, cv) for u, v in graph.edges for cu in clones[u] for cv in clones[v]]
    return TripartiteWeightedGraph.uniform(parts["A"], parts["B"], parts["C"], edges)


def path_graph(k: int = 1) -> TripartiteWeightedGraph:
    """k disjoint paths a_i-b_i-c_i with uniform weights."""
    a = [f"a{i}" for i in range(1, k + 1)]
    b = [f"b{i}" for i in range(1, k + 1)]
    c = [f"c{i}" for i in range(1, k + 1)]
    edges = [(a[i], b[i]) for i in range(k)] + [(b[i], c[i]) for i in range(k)]
    return TripartiteWeightedGraph.uniform(a, b, c, edges)


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True, eq=False)
class BipartiteWeightedGraph:
    """Two-part weighted graph (left, right) used for x-regular graphs."""

    left_weights: Mapping[str, Fraction]
    right_weights: Mapping[str, Fraction]
    edges: frozenset[tuple[str, str]]  # (left, right)

    @classmethod
    def from_lists(cls, left, right, edges) -> "BipartiteWeightedGraph":
        lw = {str(v): parse_rational(w) for v, w in left}
        rw = {str(v): parse_rational(w) for v, w in right}
        if set(lw) & set(rw):
            raise StructuralError("a vertex id appears on both sides")
        es = set()
        for u, v in edges:
            if u in rw and v in lw:
                u, v = v, u
            if u not in lw or v not in rw:
                raise StructuralError(f"edge {u}-{v} does not join left to right", (u, v))
            es.add((u, v))
        return cls(lw, rw, frozenset(es))

    @property
    def left(self) -> tuple[str, ...]:
        return tuple(self.left_weights)

    @property
    def right(self) -> tuple[str, ...]:
        return tuple(self.right_weights)

    @property
    def order(self) -> int:
        return len(self.left_weights)

    @property
    def min_weight(self) -> Fraction:
        return min(self.right_weights.values())

    def matrix(self) -> list[list[int]]:
        return [[int((a, b) in self.edges) for b in self.right] for a in self.left]

    def determinant(self) -> int:
        return integer_determinant(self.matrix())

    def regularity_report(self, x) -> list[str]:
        """Every reason the graph fails to be x-regular (empty when it is)."""
        x = parse_rational(x)
        out = []
        if len(self.left_weights) != len(self.right_weights):
            out.append("sides differ in size")
        for v, w in list(self.left_weights.items()) + list(self.right_weights.items()):
            if w <= 0:
                out.append(f"weight of {v} is not positive")
        for name, ws in (("left", self.left_weights), ("right", self.right_weights)):
            if sum(ws.values()) != 1:
                out.append(f"{name} weights sum to {format_rational(sum(ws.values()))}")
        if not out and self.determinant() == 0:
            out.append("adjacency matrix is singular")
        for a in self.left:
            s = sum((self.right_weights[b] for b in self.right if (a, b) in self.edges), Fraction(0))
            if s != x:
                out.append(f"{a} sees {format_rational(s)}")
        for b in self.right:
            s = sum((self.left_weights[a] for a in self.left if (a, b) in self.edges), Fraction(0))
            if s != x:
                out.append(f"{b} sees {format_rational(s)}")
        return out

    def is_regular(self, x) -> bool:
        return not self.regularity_report(x)


def random_weighted_graph(rng, max_part: int = 4, max_den: int = 6, density: float = 0.5) -> TripartiteWeightedGraph:
    """Small random tripartite graph with positive rational weights (no A-C edges)."""
    parts = {}
    for p in PARTS:
        n = rng.randint(1, max_part)
        den = rng.randint(n, max(n, max_den))
        cuts = sorted(rng.sample(range(1, den), n - 1)) if n > 1 else []
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [den])]
        parts[p] = [(f"{p.lower()}{i + 1}", Fraction(s, den)) for i, s in enumerate(sizes)]
    edges = []
    for p, q in (("A", "B"), ("B", "C")):
        for u, _ in parts[p]:
            for v, _ in parts[q]:
                if rng.random() < density:
                    edges.append((u, v))
    return TripartiteWeightedGraph.from_parts(parts, edges)


def blowup_agreement(graph: TripartiteWeightedGraph, x, y) -> list[str]:
    """Disagreements between a weighted graph and its minimal blow-up (value and every mode check)."""
    x, y = parse_rational(x), parse_rational(y)
    big = blow_up(graph, minimal_blowup_factor(graph))
    out = []
    if witness_value(graph) != witness_value(big):
        out.append(f"value {format_rational(witness_value(graph))} != {format_rational(witness_value(big))}")
    for mode in MODES:
        a = check_constraints(graph, mode, x, y).satisfied
        b = check_constraints(big, mode, x, y).satisfied
        if a != b:
            out.append(f"{mode} check {a} on the weighted graph but {b} on the blow-up")
    return out
