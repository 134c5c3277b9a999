"""Bad-pair search over matching topologies, and minimal-order search for x-regular bipartite graphs.

Bad-pair search.  A base topology has parts A0, B0, C0 with |B0| = |C0| and
B0-C0 a perfect matching, so N²_A(c_j) = N_A(b_j).  Topologies are enumerated
as graphs invariant under a permutation sigma of A0 and B0, by cycle type of
sigma, fewest orbits first; the identity comes last, so the enumeration is
exhaustive in the limit and the budget decides how far it goes.  For an
invariant topology, averaging any feasible weighting over the group keeps it
feasible and does not raise the witness value, so weights may be taken
constant on orbits.  The LP then depends only on how many neighbours a vertex
of one orbit has in another orbit, and topologies are deduplicated on that
degree data.  The Pareto frontier in (x, y) of each quotient is traced by
gift-wrapping with the exact simplex; the quotient LPs are tiny, so exact
solves cost about as much as a floating-point screen.  Every emitted pair
carries a certificate re-validated by graph-core.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from pathlib import Path

from .graph_core import (
    BipartiteWeightedGraph, TripartiteWeightedGraph, WitnessCertificate, format_rational as fmt,
    parse_rational, verify_certificate,
)
from .lp_engine import LinearProgram
from . import phiwit

F = Fraction


@dataclass
class BadPairResult:
    mode: str
    z: Fraction
    pairs: list[tuple[Fraction, Fraction, WitnessCertificate]]
    screened: int = 0
    exhausted: bool = False

    def points(self) -> list[tuple[Fraction, Fraction]]:
        return [(x, y) for x, y, _ in self.pairs]


@dataclass
class RegularSearchResult:
    x: Fraction
    order_found: int | None
    graph: BipartiteWeightedGraph | None
    exhausted_up_to: int
    best_min_weight: Fraction | None = None
    graphs_at_order: int = 0


# --------------------------------------------------------------------------- enumeration


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def cycle_types(a_size: int, m_size: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of cycle types for sigma on A0 and on B0, fewest orbits (most symmetric) first."""
    out = []
    for pa in _partitions(a_size):
        for pb in _partitions(m_size):
            combos = math.prod(math.gcd(s, t) + 1 for s in pa for t in pb)
            out.append(((len(pa) + len(pb), combos, tuple(-s for s in pa), tuple(-t for t in pb)), pa, pb))
    out.sort()
    return [(pa, pb) for _, pa, pb in out]


def _equal_size_perms(sizes):
    perms = [q for q in permutations(range(len(sizes))) if all(sizes[q[i]] == sizes[i] for i in range(len(sizes)))]
    return perms if len(perms) <= 24 else [tuple(range(len(sizes)))]


@dataclass(frozen=True)
class Quotient:
    """Invariant topology up to its degree data: t[i][j] pair-orbits chosen between A-orbit i and B-orbit j."""

    a_sizes: tuple[int, ...]
    b_sizes: tuple[int, ...]
    t: tuple[tuple[int, ...], ...]

    def deg_ab(self, i, j) -> int:
        return self.t[i][j] * self.b_sizes[j] // math.gcd(self.a_sizes[i], self.b_sizes[j])

    def deg_ba(self, j, i) -> int:
        return self.t[i][j] * self.a_sizes[i] // math.gcd(self.a_sizes[i], self.b_sizes[j])

    def label(self) -> str:
        return f"A{list(self.a_sizes)} B{list(self.b_sizes)} t={[list(r) for r in self.t]}"

    def realize(self) -> tuple[dict[str, int], dict[str, int], list[tuple[str, str]]]:
        """Concrete vertex ids, their orbit indices, and A0-B0 plus B0-C0 edges."""
        a_orb, b_orb = {}, {}
        a_cyc, b_cyc = [], []
        n = 0
        for i, s in enumerate(self.a_sizes):
            a_cyc.append([f"a{n + r + 1}" for r in range(s)])
            for v in a_cyc[-1]:
                a_orb[v] = i
            n += s
        n = 0
        for j, s in enumerate(self.b_sizes):
            b_cyc.append([f"b{n + r + 1}" for r in range(s)])
            for v in b_cyc[-1]:
                b_orb[v] = j
            n += s
        edges = set()
        for i, si in enumerate(self.a_sizes):
            for j, sj in enumerate(self.b_sizes):
                for u in range(self.t[i][j]):
                    for r in range(math.lcm(si, sj)):
                        edges.add((a_cyc[i][r % si], b_cyc[j][(r + u) % sj]))
        edges |= {(b, "c" + b[1:]) for b in b_orb}
        return a_orb, b_orb, sorted(edges)


def _key(cols, pa, PA, blocks):
    # least column-major form over row relabelings: sort columns inside each equal-size block
    return min(tuple(v for blk in blocks for col in sorted(tuple(cols[j][qa[i]] for i in range(len(pa))) for j in blk)
                     for v in col) for qa in PA)


def quotients(a_size: int, m_size: int):
    """Canonical quotient topologies in enumeration order, deduplicated per cycle type.

    Only matrices whose columns are sorted inside each block of equal-size
    B-orbits are generated; every class has such a member.
    """
    for pa, pb in cycle_types(a_size, m_size):
        PA = _equal_size_perms(pa)
        sizes = sorted(set(pb), reverse=True)
        blocks = [[j for j in range(len(pb)) if pb[j] == s] for s in sizes]
        choices = [combinations_with_replacement(list(product(*[range(math.gcd(r, s) + 1) for r in pa])), len(blk))
                   for s, blk in zip(sizes, blocks)]
        seen = set()
        for pick in product(*choices):
            cols = [c for group in pick for c in group]
            key = _key(cols, pa, PA, blocks)
            if key in seen:
                continue
            seen.add(key)
            yield Quotient(pa, pb, tuple(tuple(cols[j][i] for j in range(len(pb))) for i in range(len(pa))))


# --------------------------------------------------------------------------- quotient LP


def _rows(q: Quotient, mode: str, z) -> tuple[int, list]:
    """Variables: A-orbit weights, B-orbit weights, C-orbit weights, x, y (per-vertex weights)."""
    na, nb = len(q.a_sizes), len(q.b_sizes)
    A = list(range(na))
    B = [na + j for j in range(nb)]
    C = [na + nb + j for j in range(nb)]
    X, Y = na + 2 * nb, na + 2 * nb + 1
    rows = [
        ({A[i]: s for i, s in enumerate(q.a_sizes)}, "=", 1),
        ({B[j]: s for j, s in enumerate(q.b_sizes)}, "=", 1),
        ({C[j]: s for j, s in enumerate(q.b_sizes)}, "=", 1),
    ]
    for i in range(na):
        r = {B[j]: q.deg_ab(i, j) for j in range(nb)}
        r[X] = -1
        rows.append((r, ">=", 0))
    for j in range(nb):
        nbhd = {A[i]: q.deg_ba(j, i) for i in range(na)}
        rows.append((dict(nbhd), "<=", z))
        rows.append(({C[j]: 1, Y: -1}, ">=", 0))
        if mode == "psi":
            r = dict(nbhd)
            r[X] = -1
            rows.append((r, ">=", 0))
            rows.append(({B[j]: 1, Y: -1}, ">=", 0))
    return X + 2, rows


def _exact_lp(nvars, rows, obj):
    lp = LinearProgram(nvars)
    for r in rows:
        lp.add(*r)
    lp.maximize(obj)
    res = lp.solve()
    return res.x if res.status == "optimal" else None


def _wrap(nvars, rows, X, Y, solve):
    """Vertices of the upper-right boundary of the (x, y) projection, x decreasing."""
    def lexmax(first, second):
        s = solve(nvars, rows, {first: 1})
        if s is None:
            return None
        s = solve(nvars, rows + [({first: 1}, ">=", s[first])], {second: 1})
        return (s[X], s[Y]) if s is not None else None

    p1 = lexmax(X, Y)
    if p1 is None:
        return []
    p2 = lexmax(Y, X)
    if p2 is None or not p1[0] > p2[0]:
        return [p1]
    out = [p1]

    def rec(P, Q):
        a, b = Q[1] - P[1], P[0] - Q[0]
        s = solve(nvars, rows, {X: a, Y: b})
        if s is None:
            return
        R = (s[X], s[Y])
        if a * R[0] + b * R[1] > a * P[0] + b * P[1]:
            rec(P, R)
            out.append(R)
            rec(R, Q)

    rec(p1, p2)
    out.append(p2)
    return out


def _dominated(pt, frontier):
    return any(q[0] >= pt[0] and q[1] >= pt[1] for q in frontier)


def _certificate(q: Quotient, mode: str, z: Fraction, x: Fraction, y: Fraction) -> WitnessCertificate | None:
    """Exact weights at (x, y) maximising the gap z - value; None unless the gap is positive."""
    nvars, rows = _rows(q, mode, z)
    X, Y = nvars - 2, nvars - 1
    T = nvars
    fixed = [({X: 1}, "=", x), ({Y: 1}, "=", y), ({T: 1}, "<=", 1)]
    gap_rows = []
    for coeffs, sense, rhs in rows:
        if sense == "<=" and rhs == z:
            coeffs = dict(coeffs)
            coeffs[T] = 1
        gap_rows.append((coeffs, sense, rhs))
    s = _exact_lp(nvars + 1, gap_rows + fixed, {T: 1})
    if s is None or s[T] <= 0:
        return None
    a_orb, b_orb, edges = q.realize()
    na, nb = len(q.a_sizes), len(q.b_sizes)
    parts = {
        "A": [(v, F(s[i])) for v, i in a_orb.items()],
        "B": [(v, F(s[na + j])) for v, j in b_orb.items()],
        "C": [("c" + v[1:], F(s[na + nb + j])) for v, j in b_orb.items()],
    }
    keep = {v for p in parts.values() for v, w in p if w > 0}
    parts = {p: [(v, w) for v, w in vs if w > 0] for p, vs in parts.items()}
    edges = [(u, v) for u, v in edges if u in keep and v in keep]
    g = TripartiteWeightedGraph.from_parts(parts, edges)
    cert = WitnessCertificate(g, mode, x, y, z, True, f"search {q.label()}")
    return cert if verify_certificate(cert).satisfied else None


def _prunable(q: Quotient, mode: str) -> bool:
    na, nb = len(q.a_sizes), len(q.b_sizes)
    if any(all(q.t[i][j] == 0 for j in range(nb)) for i in range(na)):
        return True  # an A-orbit without neighbours forces x = 0
    full = [all(q.deg_ba(j, i) == q.a_sizes[i] for i in range(na)) for j in range(nb)]
    if mode == "psi":
        if any(all(q.t[i][j] == 0 for i in range(na)) for j in range(nb)):
            return True
        if any(full):
            return True  # such a b reaches all of A, value 1
    elif all(full):
        return True
    return False


def search_bad_pairs(mode: str, z, a_size: int, m_size: int, budget: int = 25000) -> BadPairResult:
    """Pareto frontier of (x, y) with a certificate of value < z, over invariant matching topologies."""
    if mode not in ("phi", "psi"):
        raise ValueError("mode must be phi or psi")
    z = parse_rational(z)
    if not (1 <= a_size <= 9 and 1 <= m_size <= 9):
        raise ValueError("sizes must lie in 1..9")
    frontier: list[tuple[Fraction, Fraction, WitnessCertificate]] = []
    screened = 0
    exhausted = True
    y_cap = F(1, m_size)
    for q in quotients(a_size, m_size):
        if screened >= budget:
            exhausted = False
            break
        screened += 1
        if _prunable(q, mode):
            continue
        nvars, rows = _rows(q, mode, z)
        X, Y = nvars - 2, nvars - 1
        top = _exact_lp(nvars, rows, {X: 1})
        if top is None or top[X] <= 0:
            continue
        # y <= 1/m for every pair, so a frontier point at y = 1/m dominates everything with smaller x
        if any(fy >= y_cap and fx >= top[X] for fx, fy, _ in frontier):
            continue
        for x, y in _wrap(nvars, rows, X, Y, _exact_lp):
            x, y = F(x), F(y)
            if x <= 0 or y <= 0 or _dominated((x, y), [(a, b) for a, b, _ in frontier]):
                continue
            cert = _certificate(q, mode, z, x, y)
            if cert is None:
                continue
            frontier = [p for p in frontier if not (x >= p[0] and y >= p[1])]
            frontier.append((x, y, cert))
    frontier.sort(key=lambda p: (-p[0], p[1]))
    return BadPairResult(mode, z, frontier, screened, exhausted)


def write_results(result: BadPairResult, out_dir) -> Path:
    """One phiwit file per pair plus index.csv (x, y, z, mode, certificate_path)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    index = out / "index.csv"
    with open(index, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "z", "mode", "certificate_path"])
        for n, (x, y, cert) in enumerate(result.pairs, start=1):
            name = f"pair{n:03d}.phiwit"
            phiwit.dump(cert, out / name)
            w.writerow([fmt(x), fmt(y), fmt(result.z), result.mode, name])
    return index


# --------------------------------------------------------------------------- regular graphs


def _solve_exact(M: list[list[int]], rhs: Fraction) -> list[Fraction] | None:
    """Unique solution of M w = rhs * 1 over the rationals, or None when M is singular."""
    n = len(M)
    aug = [[F(v) for v in row] + [rhs] for row in M]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _reduce(basis, row: int, n: int):
    """Row reduced against an echelon basis over the rationals, or None if dependent."""
    v = [F((row >> (n - 1 - c)) & 1) for c in range(n)]
    for piv, b in basis:
        if v[piv] != 0:
            f = v[piv]
            v = [a - f * bb for a, bb in zip(v, b)]
    for c in range(n):
        if v[c] != 0:
            return c, [a / v[c] for a in v]
    return None


def candidate_matrices(n: int):
    """Nonsingular 0/1 n-by-n matrices, one or more per row/column-permutation class.

    Every 0/1 matrix has a doubly lexical ordering, so rows are emitted in
    decreasing order and column prefixes must stay non-increasing.  A positive
    solution of M w = x 1 forbids a row whose support strictly contains
    another's, so rows (and, checked at the leaves, columns) form antichains.
    """
    def dfs(prev, cols, basis, rows):
        if len(rows) == n:
            colmasks = [sum(((r >> (n - 1 - c)) & 1) << k for k, r in enumerate(rows)) for c in range(n)]
            if not any(a != b and a & b == a for a in colmasks for b in colmasks):
                yield rows
            return
        for r in range(prev - 1, 0, -1):
            if any(r & s in (r, s) for s in rows):
                continue
            nc = [(cols[j] << 1) | ((r >> (n - 1 - j)) & 1) for j in range(n)]
            if any(nc[j] < nc[j + 1] for j in range(n - 1)):
                continue
            red = _reduce(basis, r, n)
            if red is None:
                continue
            yield from dfs(r, nc, basis + [red], rows + (r,))

    yield from dfs(1 << n, [0] * n, [], ())


def min_regular_order(x, n_max: int = 7) -> RegularSearchResult:
    """Least n such that some nonsingular 0/1 n-by-n matrix has positive weights summing to 1 with M w = x 1 both ways."""
    x = parse_rational(x)
    if not 0 < x <= 1:
        raise ValueError("x must lie in (0, 1]")
    if not 1 <= n_max <= 7:
        raise ValueError("n_max must lie in 1..7")
    for n in range(1, n_max + 1):
        found = []
        for combo in candidate_matrices(n):
            M = [[(r >> (n - 1 - c)) & 1 for c in range(n)] for r in combo]
            wb = _solve_exact(M, x)
            if wb is None or any(w <= 0 for w in wb) or sum(wb) != 1:
                continue
            Mt = [list(col) for col in zip(*M)]
            wa = _solve_exact(Mt, x)
            if wa is None or any(w <= 0 for w in wa) or sum(wa) != 1:
                continue
            left = [(f"a{i + 1}", wa[i]) for i in range(n)]
            right = [(f"b{j + 1}", wb[j]) for j in range(n)]
            edges = [(f"a{i + 1}", f"b{j + 1}") for i in range(n) for j in range(n) if M[i][j]]
            g = BipartiteWeightedGraph.from_lists(left, right, edges)
            if g.is_regular(x):
                found.append(g)
        if found:
            best = max(found, key=lambda g: g.min_weight)
            return RegularSearchResult(x, n, best, n - 1, best.min_weight, len(found))
    return RegularSearchResult(x, None, None, n_max)


def regular_implies_peace(x, result: RegularSearchResult) -> list[tuple[str, Fraction]]:
    """Consequences phi(x, y) = x for y <= 1/order and psi(x, y) = x for y <= min-weight."""
    x = parse_rational(x)
    if result.order_found is None:
        raise ValueError("no regular graph was found")
    n, mw = result.order_found, result.best_min_weight
    return [
        (f"phi({fmt(x)}, y) = {fmt(x)} for all y <= 1/{n}", F(1, n)),
        (f"psi({fmt(x)}, y) = {fmt(x)} for all y <= {fmt(mw)}", mw),
    ]


def hadamard_bound_check(n: int, x) -> bool:
    """q <= floor((n+1)^((n+1)/2)) for x = p/q, in exact integer arithmetic."""
    x = parse_rational(x)
    m = n + 1
    if m % 2 == 0:
        bound = m ** (m // 2)
    else:
        bound = math.isqrt(m ** m)
    return x.denominator <= bound
